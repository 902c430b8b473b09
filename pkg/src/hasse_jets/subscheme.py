"""Level-capped Hasse-Schmidt subschemes of an affine variety.

A tower Z_0, ..., Z_cap is stored as ideals in the prolongation coordinate
rings.  All checks are ideal-level (no radicals are taken unless a verdict
says so explicitly).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from ._parallel import pmap
from .exactalg import Ideal, Poly, PolyRing
from .exactalg.groebner import GroebnerBudgetExceeded
from .exactalg.poly import ParseError
from .hssystem import operator_index
from .prolong import AffineVariety, Prolongation, _pi_dominance
from .verdict import OK, Verdict

__all__ = [
    "HSSubscheme",
    "MakeHasseError",
    "OperatorCompiler",
    "compile_equation",
    "full_tower",
    "check_subscheme",
    "make_hasse",
    "nabla_push",
    "dominance",
    "membership",
    "separability",
]


class MakeHasseError(RuntimeError):
    """The refinement loop did not stabilise; ``tower`` holds the last state."""

    def __init__(self, msg, tower):
        super().__init__(msg)
        self.tower = tower


@dataclass
class HSSubscheme:
    prol: Prolongation
    ideals: list
    name: str = "Z"
    flags: dict = dc_field(default_factory=dict)

    @property
    def cap(self) -> int:
        return len(self.ideals) - 1

    @property
    def X(self) -> AffineVariety:
        return self.prol.X

    def ideal(self, n: int) -> Ideal:
        return self.ideals[n]

    def set_flag(self, name: str, value, provenance: str):
        if provenance not in ("verified", "user-asserted", "unknown"):
            raise ValueError(f"unknown provenance {provenance!r}")
        self.flags[name] = {"value": value, "provenance": provenance}

    def flag(self, name: str):
        return self.flags.get(name, {"value": None, "provenance": "unknown"})

    def level_gens(self, n: int) -> list[str]:
        return [g.render() for g in self.ideals[n].groebner()]

    def render(self) -> dict:
        return {
            "name": self.name,
            "cap": self.cap,
            "levels": [{"level": n, "vars": list(self.prol.names(n)), "gens": self.level_gens(n)} for n in range(self.cap + 1)],
            "flags": {k: self.flags[k] for k in sorted(self.flags)},
        }


def _reduced(I: Ideal) -> Ideal:
    return Ideal(I.ring, I.groebner(), basis=I.groebner())


# ------------------------------------------------------------------ operator equations

class OperatorCompiler:
    """Parser hook turning D{i,n}(f) into prolongation coordinates.

    ``Dn(f)`` abbreviates ``D{1,n}(f)``; ``D{n}(f)`` likewise.  The argument
    may be any polynomial in the coordinates of X.
    """

    _name = re.compile(r"D\d*")

    def __init__(self, prol: Prolongation, cap: int | None = None):
        self.prol = prol
        self.cap = prol.cap if cap is None else cap
        self.arg_ring = prol.X.ring

    def accepts(self, name: str) -> bool:
        return bool(self._name.fullmatch(name))

    def apply(self, name, indices, arg):
        if indices:
            if len(indices) == 1:
                fam, order = 1, indices[0]
            elif len(indices) == 2:
                fam, order = indices
            else:
                raise ValueError("operator index is {order} or {family,order}")
            if len(name) > 1:
                raise ValueError(f"{name}{{...}} mixes two index forms")
        else:
            if len(name) == 1:
                raise ValueError("operator D needs an order, e.g. D1 or D{1,2}")
            fam, order = 1, int(name[1:])
        level, k = operator_index(self.prol.sys, fam, order)
        if level > self.cap:
            raise ValueError(f"operator order {order} exceeds the tower cap {self.cap}")
        return self.prol.prolong_polys([arg], level)[k]


def _level_of(prol: Prolongation, p: Poly) -> int:
    top = 0
    for i in p.support():
        k = i // prol.N
        n = 0
        while prol.sys.rank(n) <= k:
            n += 1
        top = max(top, n)
    return top


def compile_equation(prol: Prolongation, text: str, cap: int | None = None) -> tuple[int, Poly]:
    """Compile ``lhs = rhs`` (or a bare expression) to (level, polynomial)."""
    cap = prol.cap if cap is None else cap
    hook = OperatorCompiler(prol, cap)
    ring = prol.ring(cap)
    parts = text.split("=")
    if len(parts) > 2:
        raise ParseError("an equation has at most one '='", 1, text.index("=", text.index("=") + 1) + 1)
    polys = []
    offset = 0
    for part in parts:
        try:
            polys.append(ring.parse(part, call_hook=hook))
        except ParseError as exc:
            raise ParseError(exc.msg, exc.line, exc.col + offset) from None
        offset += len(part) + 1
    p = polys[0] - polys[1] if len(polys) == 2 else polys[0]
    level = _level_of(prol, p)
    return level, p.change_ring(prol.ring(level))


# ------------------------------------------------------------------ towers

def full_tower(prol: Prolongation, extra=(), cap: int | None = None, name: str = "Z") -> HSSubscheme:
    """Z_n = tau_n Y for Y = V(I(X) + extra) inside X."""
    cap = prol.cap if cap is None else cap
    gens = tuple(prol.X.gens) + tuple(prol.X.ring(g) if not isinstance(g, Poly) else g for g in extra)
    ideals = [Ideal(prol.ring(n), prol.prolong_polys(gens, n)) for n in range(cap + 1)]
    Z = HSSubscheme(prol, ideals, name)
    Z.set_flag("dominant", None, "unknown")
    return Z


def _tau_of_level(Z: HSSubscheme, m: int, n: int = 1) -> list:
    """Generators of tau_n(Z_m) inside tau_n tau_m X."""
    inner = Z.prol.inner(m)
    return inner.prolong_polys(Z.ideals[m].gens, n)


def check_subscheme(Z: HSSubscheme) -> Verdict:
    """pi-compatibility, Delta-compatibility and Z_n inside tau_n(Z_0)."""
    P = Z.prol

    def pi_level(n):
        pulled = P.pullback_pi(Z.ideals[n].gens, n + 1, n)
        out = Z.ideals[n + 1].first_outside(pulled)
        if out is not None:
            return Verdict.fail("pi-compatibility", level=n + 1, generator=Z.ideals[n].gens[out[0]].render())
        return OK

    def delta_level(m):
        pulled = P.pullback_delta(_tau_of_level(Z, m), m, 1)
        out = Z.ideals[m + 1].first_outside(pulled)
        if out is not None:
            return Verdict.fail("delta-compatibility", level=m + 1, generator=pulled[out[0]].render())
        return OK

    def base_level(n):
        prolonged = P.prolong_polys(Z.ideals[0].gens, n)
        out = Z.ideals[n].first_outside(prolonged)
        if out is not None:
            return Verdict.fail("prolonged-base", level=n, generator=prolonged[out[0]].render())
        return OK

    for fn, levels in ((pi_level, range(Z.cap)), (delta_level, range(Z.cap)), (base_level, range(1, Z.cap + 1))):
        for v in pmap(fn, list(levels)):
            if not v:
                return v
    return OK


def _image(P: Prolongation, upper: Ideal, m: int, n: int) -> Ideal:
    """Scheme-theoretic image of V(upper) in tau_n X under pi-hat(m, n)."""
    if P.sys.is_prefix_projection(m, n):
        drop = [v for v in P.names(m) if v not in set(P.names(n))]
        return upper.eliminate(drop, target=P.ring(n))
    Rm = P.ring(m)
    tmp = [f"_g{i}" for i in range(len(P.names(n)))]
    big = PolyRing(Rm.field, Rm.names + tuple(tmp))
    gens = [g.change_ring(big) for g in upper.gens]
    gens += [big.var(t) - img.change_ring(big) for t, img in zip(tmp, P.pi_images(m, n))]
    elim = Ideal(big, gens).eliminate(list(Rm.names))
    Rn = P.ring(n)
    return Ideal(Rn, [g.change_ring(Rn, list(range(len(tmp)))) for g in elim.gens])


def make_hasse(prol: Prolongation, conditions, cap: int | None = None, max_rounds: int = 20, name: str = "Z") -> HSSubscheme:
    """Refine Y_n = tau_n X intersected with the conditions to a compatible tower.

    ``conditions`` is a mapping (or list of pairs) level -> polynomials in the
    level ring.  Each round applies, for m = 0..cap-1: the pi-preimage
    intersection at m+1, the image closure at m, and the Delta-preimage
    intersection at m+1; rounds repeat until no ideal changes.
    """
    cap = prol.cap if cap is None else cap
    if cap > prol.cap:
        raise ValueError(f"tower cap {cap} exceeds the system cap {prol.cap}")
    items = conditions.items() if isinstance(conditions, dict) else conditions
    extra: dict = {}
    for lvl, polys in items:
        if not 0 <= lvl <= cap:
            raise ValueError(f"condition at level {lvl} is outside the tower cap {cap}")
        if isinstance(polys, Poly):
            polys = [polys]
        extra.setdefault(lvl, []).extend(prol.ring(lvl)(p) if not isinstance(p, Poly) else p.change_ring(prol.ring(lvl)) for p in polys)
    Z = [_reduced(Ideal(prol.ring(n), list(prol.ideal(n).gens) + extra.get(n, []))) for n in range(cap + 1)]
    tower = HSSubscheme(prol, Z, name)
    for _ in range(max_rounds):
        before = [list(I.groebner()) for I in Z]
        for m in range(cap):
            Z[m + 1] = _reduced(Z[m + 1] + prol.pullback_pi(Z[m].gens, m + 1, m))
            Z[m] = _reduced(_image(prol, Z[m + 1], m + 1, m))
            tower.ideals = Z
            Z[m + 1] = _reduced(Z[m + 1] + prol.pullback_delta(_tau_of_level(tower, m), m, 1))
        if [list(I.groebner()) for I in Z] == before:
            tower.ideals = Z
            dom = dominance(tower)
            tower.set_flag("dominant", bool(dom), "verified" if dom.kind != "inconclusive" else "unknown")
            return tower
    tower.ideals = Z
    raise MakeHasseError(f"the tower did not stabilise within {max_rounds} rounds", tower)


def nabla_push(Z: HSSubscheme, m: int) -> HSSubscheme:
    """Y_n = image of Z_{m+n} under Delta-hat(m, n), a tower over tau_m X."""
    if not 0 <= m <= Z.cap:
        raise ValueError(f"m = {m} is outside the tower cap {Z.cap}")
    P = Z.prol
    inner = P.inner(m)
    ideals = []
    for n in range(Z.cap - m + 1):
        src = P.ring(m + n)
        tgt = inner.ring(n)
        tmp = [f"_d{i}" for i in range(tgt.nvars)]
        big = PolyRing(src.field, src.names + tuple(tmp))
        gens = [g.change_ring(big) for g in Z.ideals[m + n].gens]
        gens += [big.var(t) - img.change_ring(big) for t, img in zip(tmp, P.delta_images(m, n))]
        elim = Ideal(big, gens).eliminate(list(src.names))
        ideals.append(_reduced(Ideal(tgt, [g.change_ring(tgt, list(range(len(tmp)))) for g in elim.gens])))
    return HSSubscheme(inner, ideals, f"nabla_{m}({Z.name})")


def dominance(Z: HSSubscheme, max_pairs: int | None = None) -> Verdict:
    """Each Z_{n+1} -> Z_n dominant at ideal level (elimination containment)."""
    for n in range(Z.cap):
        v = _pi_dominance(Z.prol, Z.ideals[n + 1], Z.ideals[n], n + 1, n, max_pairs)
        if not v:
            return Verdict.fail(v.kind, level=n + 1, **v.detail)
    return OK


def membership(p, Z: HSSubscheme) -> Verdict:
    """nabla_n(p) lies on Z_n for every n up to the cap."""
    P = Z.prol
    for n in range(Z.cap + 1):
        q = P.nabla(p, n, check=False)
        for g in Z.ideals[n].gens:
            if g.evaluate(q):
                return Verdict.fail("membership", level=n, generator=g.render())
    return OK


# ------------------------------------------------------------------ separability

def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        t = M[0][j] * _det(minor)
        if j % 2:
            t = -t
        total = t if total is None else total + t
    return total if total is not None else M[0][0] * 0


def _jacobian_generic_rank(I: Ideal, rows, cols, r: int, limit: int = 400) -> bool:
    """Is some r x r minor of d(rows)/d(cols) nonzero modulo I?"""
    J = [[I.reduce(g.diff(c)) for c in cols] for g in rows]
    tried = 0
    for rs in combinations(range(len(rows)), r):
        for cs in combinations(range(len(cols)), r):
            tried += 1
            if tried > limit:
                return False
            M = [[J[i][j] for j in cs] for i in rs]
            if any(all(not v for v in row) for row in M):
                continue
            if I.reduce(_det(M)):
                return True
    return False


def _separability_level(Z: HSSubscheme, n: int):
    P = Z.prol
    if not P.sys.is_prefix_projection(n + 1, n):
        return "unknown", "non-coordinate projection"
    lower = set(P.names(n))
    up = Z.ideals[n + 1]
    fib = [v for v in P.names(n + 1) if v not in lower]
    if up.is_unit():
        return "separable", "empty level"
    d_up = up.dimension()
    d_low = Z.ideals[n].dimension()
    r = len(fib) - (d_up - d_low)
    B = up.groebner()
    if r <= 0:
        return "separable", "fibre dimension is maximal"
    if _jacobian_generic_rank(up, B, fib, r):
        return "separable", "relative Jacobian has full generic rank"
    p = P.X.field.characteristic
    R = up.ring
    fidx = [R.index[v] for v in fib]
    for g in B:
        used = [i for i in fidx if any(e[i] for e in g.terms)]
        if used and all(e[i] % p == 0 for e in g.terms for i in fidx):
            return "inseparable", g.render()
    return "unknown", "no sufficient criterion applied"


def separability(Z: HSSubscheme) -> Verdict:
    """Three-valued separability of the projections Z_{n+1} -> Z_n.

    Characteristic 0 is always separable.  In characteristic p a level is
    separable when the relative Jacobian with respect to the new coordinates
    has the expected rank generically on Z_{n+1}, and inseparable when a
    basis element involves the new coordinates only through p-th powers.
    """
    if Z.prol.X.field.characteristic == 0:
        return Verdict(True, "separable", {"reason": "characteristic 0"})
    unknown = None
    for n in range(Z.cap):
        try:
            verdict, why = _separability_level(Z, n)
        except GroebnerBudgetExceeded:
            verdict, why = "unknown", "Gröbner budget exceeded"
        if verdict == "inseparable":
            return Verdict(False, "inseparable", {"witness": f"level {n + 1}", "generator": why})
        if verdict == "unknown" and unknown is None:
            unknown = (n + 1, why)
    if unknown is not None:
        return Verdict(False, "unknown", {"level": unknown[0], "reason": unknown[1]})
    return Verdict(True, "separable", {})
