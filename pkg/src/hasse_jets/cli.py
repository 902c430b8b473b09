"""Line-oriented script language for systems, fields, towers, points and checks.

A script declares a Hasse-Schmidt system, a coefficient field with its
operators, varieties, operator equations and points, then lists commands.
Declarations are parsed and type-checked before any command runs; towers are
built on first use.  ``run`` returns one JSON-friendly object per command.

    system HSD(e=1) cap 4
    field F5t = Fp(5)(t)
    operators divided_power on t
    equation Z on A^1 cap 1 : D1(x)^5 = x
    point a = (1) on Z
    dominance Z
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass, field as dc_field

from . import _parallel
from .exactalg import QQ, ExtensionField, ParseError, PrimeField, RationalFunctionField
from .exactalg.poly import PolyRing
from .hsring import (
    Derivations,
    DividedPowers,
    Endomorphisms,
    Frobenius,
    HSField,
    PresentationError,
    ZeroOperators,
    default_samples,
    verify_dring,
    verify_iterative,
)
from .hssystem import builtin, check_iterativity
from .jets import good_locus, hs_jet_fiber, hs_jet_membership, jet_fiber, jets_determine
from .prolong import AffineVariety, Prolongation, dominance_prolongation
from .subscheme import check_subscheme, compile_equation, dominance, full_tower, make_hasse, membership, separability

__all__ = ["ScriptError", "Session", "parse", "run", "main"]


class ScriptError(ValueError):
    """A lexical, syntax or type error at a line and column (both 1-based)."""

    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


@dataclass
class Tower:
    name: str
    space: str
    line: int
    kind: str
    cap: int | None = None
    conditions: dict = dc_field(default_factory=dict)
    built: object = None


@dataclass
class Point:
    name: str
    target: str
    coords: tuple
    level: int


@dataclass
class Command:
    line: int
    verb: str
    args: tuple
    text: str


@dataclass
class Session:
    system: object = None
    system_text: str = ""
    field: object = None
    field_name: str = ""
    hs: HSField | None = None
    operators_text: str = ""
    varieties: dict = dc_field(default_factory=dict)
    towers: dict = dc_field(default_factory=dict)
    points: dict = dc_field(default_factory=dict)
    commands: list = dc_field(default_factory=list)
    _prols: dict = dc_field(default_factory=dict)


# ------------------------------------------------------------------ parsing

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_SYSTEM = re.compile(r"system\s+(Trivial|HSD|End|DiffDiff|HigherD)\s*(?:\(\s*e\s*=\s*(\d+)\s*(,\s*auto\s*)?\))?\s+cap\s+(\d+)\s*$")
_FIELD = re.compile(rf"field\s+({_IDENT})\s*=\s*(.+?)\s*$")
_OPS = re.compile(r"operators\s+(\w+)(.*)$")
_VARIETY = re.compile(rf"variety\s+({_IDENT})\s+in\s+A\^(\d+)\s+vars\s+([A-Za-z0-9_,\s]+?)\s*:(.*)$")
_EQUATION = re.compile(rf"equation\s+({_IDENT})\s+on\s+(A\^\d+|{_IDENT})(?:\s+cap\s+(\d+))?\s*:(.*)$")
_TOWER = re.compile(rf"tower\s+({_IDENT})\s*=\s*full\s+on\s+(A\^\d+|{_IDENT})(?:\s+cap\s+(\d+))?\s*$")
_POINT = re.compile(rf"point\s+({_IDENT})\s*=\s*\((.*)\)\s*on\s+({_IDENT})\s*$")

_COMMANDS = {
    "prolong": re.compile(rf"prolong\s+({_IDENT})\s+(\d+)\s*$"),
    "nabla": re.compile(rf"nabla\s+({_IDENT})\s+(\d+)\s*$"),
    "jet": re.compile(rf"jet\s+({_IDENT})\s+({_IDENT})\s+(\d+)\s*$"),
    "hsjet": re.compile(rf"hsjet\s+({_IDENT})\s+({_IDENT})\s+(\d+)(?:\s+rcap\s+(\d+))?\s*$"),
    "hsmember": re.compile(rf"hsmember\s+({_IDENT})\s+({_IDENT})\s+\((.*)\)\s+(\d+)(?:\s+rcap\s+(\d+))?\s*$"),
    "check": re.compile(rf"check\s+(iterativity|operators|subscheme)(?:\s+({_IDENT}))?\s*$"),
    "dominance": re.compile(rf"dominance\s+({_IDENT})(?:\s+(\d+)\s+(\d+))?\s*$"),
    "separability": re.compile(rf"separability\s+({_IDENT})\s*$"),
    "membership": re.compile(rf"membership\s+({_IDENT})\s+({_IDENT})\s*$"),
    "goodlocus": re.compile(rf"goodlocus\s+({_IDENT})\s+({_IDENT})(?:\s+(\d+))?\s*$"),
    "determine": re.compile(rf"determine\s+({_IDENT})\s+({_IDENT})\s+at\s+({_IDENT})\s+mcap\s+(\d+)\s+rcap\s+(\d+)\s*$"),
}

_DEFAULT_NAMES = ("x", "y", "z", "w")


def _default_vars(n: int) -> list[str]:
    return list(_DEFAULT_NAMES[:n]) if n <= len(_DEFAULT_NAMES) else [f"x{i}" for i in range(1, n + 1)]


def _parse_field(text: str, line: int, col: int):
    m = re.fullmatch(r"(Q|Fp\((\d+)\)|GF\((\d+),\s*(\d+)\))(?:\(([A-Za-z_][A-Za-z0-9_]*(?:\s*,\s*[A-Za-z_][A-Za-z0-9_]*)*)\))?", text)
    if not m:
        raise ScriptError(f"unknown field {text!r}; expected Q, Fp(p), GF(p,k), optionally followed by (t,...)", line, col)
    try:
        if m.group(1) == "Q":
            base = QQ
        elif m.group(2):
            base = PrimeField(int(m.group(2)))
        else:
            base = ExtensionField(int(m.group(3)), int(m.group(4)))
        if m.group(5):
            if getattr(base, "degree", 1) != 1:
                raise ValueError("rational function fields are built over Q or a prime field")
            return RationalFunctionField(base, [s.strip() for s in m.group(5).split(",")])
        return base
    except ValueError as exc:
        raise ScriptError(str(exc), line, col) from None


def _split_top(text: str, sep: str = ",") -> list[tuple[str, int]]:
    """Split on sep outside parentheses; returns (piece, offset) pairs."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def _parse_value(K, text: str, line: int, col: int):
    s = text.strip()
    if not s:
        raise ScriptError("empty coordinate", line, col)
    try:
        return K(PolyRing(K, ()).parse(s).constant_coeff()) if not isinstance(K, RationalFunctionField) else K.parse(s)
    except ParseError as exc:
        raise ScriptError(exc.msg, line, col + (len(text) - len(text.lstrip())) + exc.col - 1) from None
    except (ValueError, ZeroDivisionError) as exc:
        raise ScriptError(str(exc), line, col) from None


def _parse_operators(sess: Session, rest: str, kind: str, line: int, col: int):
    K = sess.field
    rest = rest.strip()
    if kind == "zero":
        return ZeroOperators()
    if kind == "divided_power":
        m = re.fullmatch(r"on\s+([A-Za-z0-9_,\s]+)", rest)
        if not m:
            raise ScriptError("expected 'divided_power on t[,s...]'", line, col)
        return DividedPowers([s.strip() for s in m.group(1).split(",")])
    if kind == "frobenius":
        return Frobenius()
    if kind in ("derivation", "endomorphism"):
        images = []
        for part, off in _split_top(rest, ";"):
            d = {}
            for piece, poff in _split_top(part, ","):
                m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*->\s*(.+?)\s*", piece)
                if not m:
                    raise ScriptError("expected 't -> value' assignments", line, col + off + poff)
                d[m.group(1)] = _parse_value(K, m.group(2), line, col + off + poff + m.start(2))
            images.append(d)
        return Derivations(images) if kind == "derivation" else Endomorphisms(images)
    raise ScriptError(f"unknown operators {kind!r}; expected zero, divided_power, derivation, endomorphism or frobenius", line, col)


def _space(sess: Session, space_text: str, line: int, col: int) -> str:
    """Canonical key of an ambient space: a variety name or A^n."""
    if space_text.startswith("A^"):
        n = int(space_text[2:])
        if n < 1:
            raise ScriptError("affine space needs dimension at least 1", line, col)
        key = space_text
        if key not in sess.varieties:
            sess.varieties[key] = AffineVariety.from_strings(sess.field, _default_vars(n), [], space_text)
        return key
    if space_text not in sess.varieties:
        raise ScriptError(f"unknown variety {space_text!r}", line, col)
    return space_text


def _prol(sess: Session, space: str) -> Prolongation:
    P = sess._prols.get(space)
    if P is None:
        P = Prolongation(sess.varieties[space], sess.hs)
        sess._prols[space] = P
    return P


def _require(sess: Session, what: str, line: int):
    if what == "field" and sess.field is None:
        raise ScriptError("declare a field first", line, 1)
    if what == "hs" and sess.hs is None:
        raise ScriptError("declare the system, the field and its operators first", line, 1)


def _bind(sess: Session, line: int):
    if sess.system is None or sess.field is None or sess.operators_text == "":
        return
    kind, rest = sess.operators_text
    pres = _parse_operators(sess, rest, kind, line, 1)
    try:
        sess.hs = HSField(sess.field, sess.system, pres)
    except (PresentationError, ValueError) as exc:
        raise ScriptError(str(exc), line, 1) from None


def parse(source: str, cap: int | None = None) -> Session:
    """Parse and type-check a script; ``cap`` overrides the system cap."""
    sess = Session()
    for ln, raw in enumerate(source.splitlines(), start=1):
        text = raw.split("#", 1)[0].rstrip()
        if not text.strip():
            continue
        indent = len(text) - len(text.lstrip())
        body = text.strip()
        word = body.split()[0]
        col0 = indent + 1
        if word == "system":
            m = _SYSTEM.match(body)
            if not m:
                raise ScriptError("expected 'system NAME[(e=N)] cap N'", ln, col0)
            c = cap if cap is not None else int(m.group(4))
            try:
                sess.system = builtin(m.group(1), c, int(m.group(2) or 1), bool(m.group(3)))
            except ValueError as exc:
                raise ScriptError(str(exc), ln, col0 + m.start(1)) from None
            sess.system_text = body
            sess.hs = None
            _bind(sess, ln)
        elif word == "field":
            m = _FIELD.match(body)
            if not m:
                raise ScriptError("expected 'field NAME = Q | Fp(p) | GF(p,k) [(t,...)]'", ln, col0)
            sess.field = _parse_field(m.group(2), ln, col0 + m.start(2))
            sess.field_name = m.group(1)
            sess.varieties, sess.towers, sess.points, sess._prols = {}, {}, {}, {}
            sess.hs = None
            _bind(sess, ln)
        elif word == "operators":
            _require(sess, "field", ln)
            m = _OPS.match(body)
            if not m:
                raise ScriptError("expected 'operators KIND ...'", ln, col0)
            _parse_operators(sess, m.group(2), m.group(1), ln, col0 + m.start(1))
            sess.operators_text = (m.group(1), m.group(2))
            _bind(sess, ln)
        elif word == "variety":
            _require(sess, "field", ln)
            m = _VARIETY.match(body)
            if not m:
                raise ScriptError("expected 'variety NAME in A^n vars x,y : f, g'", ln, col0)
            names = [s.strip() for s in m.group(3).split(",")]
            if len(names) != int(m.group(2)):
                raise ScriptError(f"A^{m.group(2)} needs {m.group(2)} variable names", ln, col0 + m.start(3))
            try:
                ring = PolyRing(sess.field, names)
            except ValueError as exc:
                raise ScriptError(str(exc), ln, col0 + m.start(3)) from None
            gens = []
            if m.group(4).strip():
                for piece, off in _split_top(m.group(4)):
                    if not piece.strip():
                        raise ScriptError("empty expression", ln, col0 + m.start(4) + off)
                    try:
                        gens.append(ring.parse(piece))
                    except ParseError as exc:
                        raise ScriptError(exc.msg, ln, col0 + m.start(4) + off + exc.col - 1) from None
            sess.varieties[m.group(1)] = AffineVariety(ring, tuple(gens), m.group(1))
        elif word in ("equation", "tower"):
            _require(sess, "hs", ln)
            m = (_EQUATION if word == "equation" else _TOWER).match(body)
            if not m:
                hint = "'equation NAME on A^n|X [cap N] : lhs = rhs'" if word == "equation" else "'tower NAME = full on A^n|X [cap N]'"
                raise ScriptError(f"expected {hint}", ln, col0)
            name = m.group(1)
            space = _space(sess, m.group(2), ln, col0 + m.start(2))
            tcap = int(m.group(3)) if m.group(3) else None
            if tcap is not None and not 0 <= tcap <= sess.hs.cap:
                raise ScriptError(f"tower cap {tcap} is outside the system cap 0..{sess.hs.cap}", ln, col0 + m.start(3))
            tw = sess.towers.get(name)
            if tw is None:
                tw = Tower(name, space, ln, "full" if word == "tower" else "equations", tcap)
                sess.towers[name] = tw
            elif tw.space != space or tw.kind != ("full" if word == "tower" else "equations"):
                raise ScriptError(f"tower {name!r} was declared differently on line {tw.line}", ln, col0 + m.start(1))
            elif tcap is not None:
                tw.cap = tcap
            if word == "equation":
                P = _prol(sess, space)
                start = col0 + m.start(4)
                for piece, off in _split_top(m.group(4), ";"):
                    try:
                        level, poly = compile_equation(P, piece, tw.cap)
                    except ParseError as exc:
                        raise ScriptError(exc.msg, ln, start + off + exc.col - 1) from None
                    except ValueError as exc:
                        raise ScriptError(str(exc), ln, start + off) from None
                    tw.conditions.setdefault(level, []).append(poly)
        elif word == "point":
            _require(sess, "hs", ln)
            m = _POINT.match(body)
            if not m:
                raise ScriptError("expected 'point NAME = (c1, ..., cN) on X'", ln, col0)
            target = m.group(3)
            if target in sess.towers:
                space = sess.towers[target].space
            elif target in sess.varieties:
                space = target
            else:
                raise ScriptError(f"unknown variety or tower {target!r}", ln, col0 + m.start(3))
            start = col0 + m.start(2)
            coords = tuple(_parse_value(sess.field, piece, ln, start + off) for piece, off in _split_top(m.group(2)))
            N = sess.varieties[space].dim_ambient
            level = next((n for n in range(sess.hs.cap + 1) if sess.system.rank(n) * N == len(coords)), None)
            if level is None:
                raise ScriptError(f"a point of {space} has {N} coordinates (or rank * {N} for a lift)", ln, start)
            sess.points[m.group(1)] = Point(m.group(1), target, coords, level)
        elif word in _COMMANDS:
            m = _COMMANDS[word].match(body)
            if not m:
                raise ScriptError(f"malformed {word!r} command", ln, col0)
            args = m.groups()
            _check_command(sess, word, args, ln, col0, m)
            sess.commands.append(Command(ln, word, args, body))
        else:
            raise ScriptError(f"unknown statement {word!r}", ln, col0)
    return sess


def _check_command(sess: Session, verb: str, args, ln: int, col0: int, m):
    """Resolve every identifier a command names, before anything runs."""
    if verb == "check" and args[0] == "iterativity":
        if sess.system is None:
            raise ScriptError("declare a system first", ln, col0)
        return
    _require(sess, "hs", ln)

    def need(kind, i):
        name = args[i]
        pools = {"tower": sess.towers, "point": sess.points, "variety": sess.varieties}
        ok = name in pools[kind] or (kind == "variety" and name in sess.towers)
        if not ok:
            raise ScriptError(f"unknown {kind} {name!r}", ln, col0 + m.start(i + 1))

    plan = {
        "prolong": [("variety", 0)],
        "nabla": [("point", 0)],
        "jet": [("variety", 0), ("point", 1)],
        "hsjet": [("tower", 0), ("point", 1)],
        "hsmember": [("tower", 0), ("point", 1)],
        "dominance": [("variety", 0)],
        "separability": [("tower", 0)],
        "membership": [("point", 0), ("tower", 1)],
        "goodlocus": [("tower", 0), ("point", 1)],
        "determine": [("tower", 0), ("tower", 1), ("point", 2)],
    }
    if verb == "check":
        if args[0] == "subscheme":
            if args[1] is None:
                raise ScriptError("check subscheme needs a tower name", ln, col0)
            need("tower", 1)
        return
    for kind, i in plan[verb]:
        need(kind, i)
    if verb == "dominance" and args[0] in sess.towers and args[1] is not None:
        raise ScriptError("dominance of a tower takes no levels", ln, col0 + m.start(2))
    if verb == "dominance" and args[0] not in sess.towers and args[1] is None:
        raise ScriptError("dominance of a variety needs levels m n", ln, col0)


# ------------------------------------------------------------------ running

class CommandError(RuntimeError):
    pass


def _tower(sess: Session, name: str):
    tw = sess.towers[name]
    if tw.built is None:
        P = _prol(sess, tw.space)
        if tw.kind == "full":
            tw.built = full_tower(P, cap=tw.cap, name=name)
        else:
            tw.built = make_hasse(P, tw.conditions, cap=tw.cap, name=name)
    return tw.built


def _variety_space(sess: Session, name: str) -> str:
    return sess.towers[name].space if name in sess.towers else name


def _base_and_lifts(sess: Session, pt: Point):
    space = sess.towers[pt.target].space if pt.target in sess.towers else pt.target
    P = _prol(sess, space)
    if pt.level == 0:
        return list(pt.coords), None
    base = list(P.pi_point(pt.coords, pt.level, 0))
    return base, {pt.level: pt.coords}


def _verdict_json(v) -> dict:
    return v.to_json()


def _run_one(sess: Session, cmd: Command, opts) -> tuple[dict, bool]:
    """Returns (report, negative)."""
    a = cmd.args
    K = sess.field
    r = K.render if K is not None else str
    out = {"line": cmd.line, "command": cmd.text}
    if cmd.verb == "check":
        if a[0] == "iterativity":
            v = check_iterativity(sess.system)
            out.update(_verdict_json(v))
            return out, not v
        if a[0] == "operators":
            samples = default_samples(K)
            if opts.seed is not None:
                rng = random.Random(opts.seed)
                gens = list(samples[: max(1, len(samples) // 3)])
                for _ in range(3):
                    x = K.one
                    for g in gens:
                        x = x * (K(rng.randint(1, 5)) * g + K(rng.randint(0, 5)))
                    samples.append(x)
            v = verify_dring(sess.hs, samples)
            if v:
                v = verify_iterative(sess.hs, samples)
            out.update(_verdict_json(v))
            return out, not v
        Z = _tower(sess, a[1])
        v = check_subscheme(Z)
        out.update(_verdict_json(v))
        out["tower"] = Z.render()
        return out, not v
    if cmd.verb == "prolong":
        P = _prol(sess, _variety_space(sess, a[0]))
        n = int(a[1])
        if n > sess.hs.cap:
            raise CommandError(f"level {n} exceeds the cap {sess.hs.cap}")
        if a[0] in sess.towers:
            Z = _tower(sess, a[0])
            if n > Z.cap:
                raise CommandError(f"level {n} exceeds the tower cap {Z.cap}")
            out.update({"vars": list(P.names(n)), "gens": Z.level_gens(n)})
        else:
            out.update({"vars": list(P.names(n)), "gens": [g.render() for g in P.prolong_polys(P.X.gens, n)]})
        return out, False
    if cmd.verb == "nabla":
        pt = sess.points[a[0]]
        base, _ = _base_and_lifts(sess, pt)
        P = _prol(sess, _variety_space(sess, pt.target))
        n = int(a[1])
        if n > sess.hs.cap:
            raise CommandError(f"level {n} exceeds the cap {sess.hs.cap}")
        q = P.nabla(base, n, check=False)
        out.update({"vars": list(P.names(n)), "coords": [r(v) for v in q]})
        return out, False
    if cmd.verb == "jet":
        pt = sess.points[a[1]]
        base, _ = _base_and_lifts(sess, pt)
        X = sess.varieties[_variety_space(sess, a[0])]
        out.update(jet_fiber(X, base, int(a[2])).dump())
        return out, False
    if cmd.verb == "hsjet":
        Z = _tower(sess, a[0])
        pt = sess.points[a[1]]
        base, lifts = _base_and_lifts(sess, pt)
        rcap = int(a[3]) if a[3] is not None else (opts.rcap if opts.rcap is not None else Z.cap)
        rcap = min(rcap, Z.cap)
        if lifts:
            rcap = min(rcap, pt.level)
        F = hs_jet_fiber(Z, base, int(a[2]), rcap, lifts)
        out.update(F.dump())
        out["good_locus"] = good_locus(Z, base, int(a[2]), rcap, lifts)
        return out, False
    if cmd.verb == "hsmember":
        Z = _tower(sess, a[0])
        pt = sess.points[a[1]]
        base, lifts = _base_and_lifts(sess, pt)
        lam = [_parse_value(K, piece, cmd.line, 1) for piece, _ in _split_top(a[2])]
        rcap = int(a[4]) if a[4] is not None else (opts.rcap if opts.rcap is not None else Z.cap)
        res = hs_jet_membership(lam, Z, base, int(a[3]), rcap, lifts)
        out.update(res.dump(K))
        return out, not res
    if cmd.verb == "dominance":
        if a[0] in sess.towers:
            Z = _tower(sess, a[0])
            v = dominance(Z)
        else:
            v = dominance_prolongation(sess.varieties[a[0]], sess.hs, int(a[1]), int(a[2]))
        out.update(_verdict_json(v))
        return out, not v
    if cmd.verb == "separability":
        v = separability(_tower(sess, a[0]))
        if v.ok:
            out["verdict"] = "separable"
        else:
            out["verdict"] = v.kind
            out.update({k: val for k, val in v.detail.items() if k != "generator"})
            if "generator" in v.detail:
                out["generator"] = v.detail["generator"]
        return out, False
    if cmd.verb == "membership":
        pt = sess.points[a[0]]
        base, _ = _base_and_lifts(sess, pt)
        v = membership(base, _tower(sess, a[1]))
        out.update(_verdict_json(v))
        return out, not v
    if cmd.verb == "goodlocus":
        Z = _tower(sess, a[0])
        pt = sess.points[a[1]]
        base, lifts = _base_and_lifts(sess, pt)
        rep = good_locus(Z, base, int(a[2] or 1), None if not lifts else pt.level, lifts)
        out.update(rep)
        return out, not rep["ok"]
    if cmd.verb == "determine":
        Z1, Z2 = _tower(sess, a[0]), _tower(sess, a[1])
        pt = sess.points[a[2]]
        base, lifts = _base_and_lifts(sess, pt)
        v = jets_determine(Z1, Z2, base, int(a[3]), int(a[4]), lifts, lifts)
        if v.ok:
            out["verdict"] = "equal within caps"
        else:
            out.update({"verdict": "distinguished", **v.detail})
        return out, False
    raise CommandError(f"unhandled command {cmd.verb!r}")


def run(sess: Session, opts=None) -> tuple[list, int]:
    """Run every command in order; returns (reports, exit code)."""
    opts = opts or argparse.Namespace(seed=None, rcap=None)
    reports = []
    code = 0
    for i, cmd in enumerate(sess.commands):
        try:
            rep, negative = _run_one(sess, cmd, opts)
            if negative:
                code = max(code, 1)
        except Exception as exc:  # noqa: BLE001 - every failure becomes a report entry
            rep = {"line": cmd.line, "command": cmd.text, "error": f"{type(exc).__name__}: {exc}", "index": i}
            code = 2
        reports.append(rep)
    return reports, code


def render_report(reports: list) -> str:
    return json.dumps(reports, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="hasse-jets", description="Run a Hasse-Schmidt jet script.")
    ap.add_argument("script", help="script file, or - for stdin")
    ap.add_argument("--cap", type=int, help="override the system cap")
    ap.add_argument("--rcap", type=int, help="default level cap for hsjet and hsmember")
    ap.add_argument("--golden", help="compare the JSON report byte-for-byte with this file")
    ap.add_argument("--json", action="store_true", help="print the full JSON report instead of one line per command")
    ap.add_argument("--seed", type=int, help="seed for extra random samples in 'check operators'")
    ap.add_argument("--threads", type=int, default=1, help="worker threads for per-polynomial work")
    opts = ap.parse_args(argv)
    _parallel.set_threads(opts.threads)
    try:
        src = sys.stdin.read() if opts.script == "-" else open(opts.script, encoding="utf-8").read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        sess = parse(src, opts.cap)
    except ScriptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    reports, code = run(sess, opts)
    text = render_report(reports)
    if opts.json or opts.golden:
        sys.stdout.write(text)
    else:
        for rep in reports:
            sys.stdout.write(json.dumps(rep, ensure_ascii=False) + "\n")
    if opts.golden:
        try:
            expected = open(opts.golden, encoding="utf-8").read()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        if expected != text:
            print(f"error: report differs from {opts.golden}", file=sys.stderr)
            return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
