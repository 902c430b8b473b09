"""Sparse multivariate polynomials over an exact field.

A ``PolyRing`` fixes the field, the ordered variable names and the active
monomial order.  A ``Poly`` is an immutable mapping from exponent tuples to
nonzero coefficients.

Canonical text puts terms in descending inverse-lexicographic order (the last
variable is the most significant), writes each monomial in ring variable order
with ``^`` and ``*``, and prints rational coefficients as ``p/q``.
"""
from __future__ import annotations

import re

from .. import kernels
from .fields import Field, FieldMismatch, PrimeField

__all__ = ["PolyRing", "Poly", "ParseError", "monomial_key"]


# --------------------------------------------------------------- orders

def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lex_key(e):
    return e


def monomial_key(order, nvars: int):
    """Return a sort key where a larger key means a larger monomial."""
    if order == "grevlex":
        return _grevlex_key
    if order == "lex":
        return _lex_key
    if isinstance(order, tuple) and order[0] == "block":
        k = order[1]

        def key(e):
            return (_grevlex_key(e[:k]), _grevlex_key(e[k:]))

        return key
    raise ValueError(f"unknown monomial order {order!r}")


def _display_key(e):
    return tuple(reversed(e))


class ParseError(ValueError):
    """Polynomial text could not be parsed; carries 1-based line and column."""

    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


# --------------------------------------------------------------- ring

class PolyRing:
    """K[x_1, ..., x_n] with a fixed monomial order."""

    def __init__(self, field: Field, names, order="grevlex"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.order = order
        self.index = {n: i for i, n in enumerate(names)}
        self.key = monomial_key(order, self.nvars)
        self.zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.order, self.field.name))

    def __repr__(self):
        return f"PolyRing({self.field.name}, {list(self.names)}, {self.order!r})"

    def with_order(self, order) -> "PolyRing":
        if order == self.order:
            return self
        return PolyRing(self.field, self.names, order)

    def with_names(self, names, order=None) -> "PolyRing":
        return PolyRing(self.field, names, self.order if order is None else order)

    # constructors -----------------------------------------------------
    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return Poly(self, {self.zero_exp: self.field.one})

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {self.zero_exp: c} if c else {})

    def var(self, name) -> "Poly":
        i = self.index[name] if isinstance(name, str) else name
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1) -> "Poly":
        c = self.field(coeff)
        return Poly(self, {tuple(exp): c} if c else {})

    def from_terms(self, terms: dict) -> "Poly":
        f = self.field
        out = {}
        for e, c in terms.items():
            c = f(c)
            if c:
                out[tuple(e)] = c
        return Poly(self, out)

    def __call__(self, x) -> "Poly":
        """Coerce a scalar, a Poly of a compatible ring, or a string."""
        if isinstance(x, Poly):
            if x.ring is self or x.ring == self:
                return x if x.ring is self else Poly(self, x.terms)
            return x.change_ring(self)
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)

    def parse(self, text: str, call_hook=None) -> "Poly":
        return _Parser(text, call_hook).parse(self)


# --------------------------------------------------------------- poly

class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic queries ------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring.zero_exp, self.ring.field.zero)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var) -> int:
        i = self.ring.index[var] if isinstance(var, str) else var
        return max((e[i] for e in self.terms), default=-1)

    def support(self) -> list[int]:
        """Indices of variables that occur."""
        used = [False] * self.ring.nvars
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return [i for i, u in enumerate(used) if u]

    def lm(self):
        """Leading exponent under the ring order."""
        return max(self.terms, key=self.ring.key)

    def lc(self):
        return self.terms[self.lm()]

    def sorted_terms(self):
        """Terms in descending ring order."""
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = 1 / self.lc()
        return Poly(self.ring, {e: c * inv for e, c in self.terms.items()})

    # arithmetic ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                if other.ring.names != self.ring.names or other.ring.field != self.ring.field:
                    raise FieldMismatch(f"polynomials from {self.ring} and {other.ring} mixed")
            return other
        try:
            return self.ring.const(other)
        except FieldMismatch:
            raise
        except Exception:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "Poly":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, exp, c) -> "Poly":
        if not c:
            return self.ring.zero
        return Poly(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()},
        )

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except FieldMismatch:
                raise
            except Exception:
                return NotImplemented
        o = self._lift(other)
        if not self.terms or not o.terms:
            return self.ring.zero
        field = self.ring.field
        if isinstance(field, PrimeField) and len(self.terms) * len(o.terms) > 32:
            p = field.characteristic
            a = {e: c.v for e, c in self.terms.items()}
            b = {e: c.v for e, c in o.terms.items()}
            r = kernels.poly_mul_mod_p(a, b, p)
            return Poly(self.ring, {e: field(c) for e, c in r.items()})
        out: dict = {}
        get = out.get
        for ea, ca in self.terms.items():
            for eb, cb in o.terms.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                v = get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("division by a non-constant or zero polynomial")
            other = other.constant_coeff()
        c = self.ring.field(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        inv = 1 / c
        return Poly(self.ring, {e: v * inv for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self.is_constant() and self.terms:
                return self.ring.const(self.constant_coeff() ** n)
            raise ValueError("negative power of a non-constant polynomial")
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return Poly(self.ring, {tuple(x * n for x in e): c ** n})
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.names == other.ring.names and self.terms == other.terms
        try:
            o = self.ring.const(other)
        except Exception:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    # structural operations ---------------------------------------------
    def change_ring(self, ring: PolyRing, mapping=None) -> "Poly":
        """Reinterpret in another ring by variable name (or an index map)."""
        if mapping is None:
            try:
                mapping = [ring.index[n] for n in self.ring.names]
            except KeyError:
                mapping = None
            if mapping is None:
                used = self.support()
                missing = [self.ring.names[i] for i in used if self.ring.names[i] not in ring.index]
                if missing:
                    raise KeyError(f"variables {missing} are not in the target ring")
                mapping = [ring.index.get(n, -1) for n in self.ring.names]
        field = ring.field
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    ne[mapping[i]] += x
            out[tuple(ne)] = field(c) if field is not self.ring.field else c
        return Poly(ring, out)

    def map_coeffs(self, fn, ring: PolyRing | None = None) -> "Poly":
        ring = ring or self.ring
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return Poly(ring, out)

    def substitute(self, assignment, target: PolyRing | None = None) -> "Poly":
        """Simultaneously replace variables by polynomials and expand.

        ``assignment`` maps variable names (or indices) to Poly or scalars in
        the target ring.  Every variable that occurs must be assigned.
        """
        target = target or self.ring
        images: dict[int, object] = {}
        for k, v in assignment.items():
            i = self.ring.index[k] if isinstance(k, str) else k
            images[i] = v if isinstance(v, Poly) else target.const(v)
        for i in self.support():
            if i not in images:
                raise KeyError(f"no value assigned to variable {self.ring.names[i]}")
        for i, v in images.items():
            if v.ring.names != target.names:
                raise FieldMismatch(
                    f"image of {self.ring.names[i]} lives in {v.ring}, expected {target}"
                )
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            r = powers.get(key)
            if r is None:
                r = images[i] if k == 1 else power(i, k - 1) * images[i]
                powers[key] = r
            return r

        field = target.field
        acc: dict = {}
        for e, c in self.terms.items():
            term = target.const(c) if field is not self.ring.field else Poly(target, {target.zero_exp: c})
            for i, x in enumerate(e):
                if x:
                    term = term * power(i, x)
            for te, tc in term.terms.items():
                v = acc.get(te)
                acc[te] = tc if v is None else v + tc
        return Poly(target, {e: c for e, c in acc.items() if c})

    def evaluate(self, point):
        """Evaluate at a full point (sequence or mapping name -> scalar)."""
        if not isinstance(point, dict):
            point = dict(zip(range(self.ring.nvars), point))
        vals = {}
        for k, v in point.items():
            i = self.ring.index[k] if isinstance(k, str) else k
            vals[i] = v
        total = self.ring.field.zero
        for e, c in self.terms.items():
            t = c
            for i, x in enumerate(e):
                if x:
                    if i not in vals:
                        raise KeyError(f"no value for variable {self.ring.names[i]}")
                    t = t * vals[i] ** x
            total = total + t
        return total

    def diff(self, var) -> "Poly":
        i = self.ring.index[var] if isinstance(var, str) else var
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                v = c * e[i]
                if v:
                    out[tuple(ne)] = v
        return Poly(self.ring, out)

    def truncate_total_degree(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) <= d})

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    # rendering ----------------------------------------------------------
    def _monomial_text(self, e) -> str:
        parts = []
        for n, x in zip(self.ring.names, e):
            if x == 1:
                parts.append(n)
            elif x:
                parts.append(f"{n}^{x}")
        return "*".join(parts)

    def render(self) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        pieces = []
        for e, c in sorted(self.terms.items(), key=lambda t: _display_key(t[0]), reverse=True):
            neg = field.is_negative(c)
            a = -c if neg else c
            mono = self._monomial_text(e)
            if not mono:
                body = field.render(a)
                if not field.is_atomic(a):
                    body = f"({body})"
            elif a == 1:
                body = mono
            else:
                cs = field.render(a)
                if not field.is_atomic(a):
                    cs = f"({cs})"
                body = f"{cs}*{mono}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    __str__ = render

    def __repr__(self):
        return f"Poly({self.render()!r})"


# --------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    """Recursive-descent parser for + - * / ^ ( ) expressions.

    ``call_hook`` (optional) handles operator calls such as ``D1(x)`` or
    ``D{1,2}(x)``.  It must provide ``accepts(name) -> bool``,
    ``arg_ring`` and ``apply(name, indices, arg_poly) -> Poly``.
    """

    def __init__(self, text: str, call_hook=None):
        self.text = text
        self.hook = call_hook
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            start = m.start(m.lastindex) if m.lastindex else m.end()
            if m.group(1) is not None:
                self.toks.append(("num", m.group(1), start))
            elif m.group(2) is not None:
                self.toks.append(("id", m.group(2), start))
            elif m.group(3) is not None:
                ch = m.group(3)
                if ch.isspace():
                    pos = m.end()
                    continue
                if ch not in "+-*/^(),{}":
                    self.error(f"unexpected character {ch!r}", start)
                self.toks.append(("op", ch, start))
            pos = m.end()
        self.toks.append(("end", "", len(text)))
        self.i = 0

    def error(self, msg, pos):
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        raise ParseError(msg, line, col)

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.next()
        if t[1] != value or t[0] == "end":
            what = "end of input" if t[0] == "end" else repr(t[1])
            self.error(f"expected {value!r}, found {what}", t[2])
        return t

    def parse(self, ring: PolyRing) -> Poly:
        if self.peek()[0] == "end":
            self.error("empty expression", self.peek()[2])
        p = self.expr(ring)
        t = self.peek()
        if t[0] != "end":
            self.error(f"unexpected {t[1]!r}", t[2])
        return p

    def expr(self, ring):
        t = self.peek()
        sign = 1
        if t[1] in "+-" and t[0] == "op":
            self.next()
            sign = -1 if t[1] == "-" else 1
        acc = self.term(ring)
        if sign < 0:
            acc = -acc
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.next()
                rhs = self.term(ring)
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self, ring):
        acc = self.power(ring)
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "*/":
                self.next()
                rhs = self.power(ring)
                if t[1] == "*":
                    acc = acc * rhs
                else:
                    if not rhs.is_constant() or rhs.is_zero():
                        self.error("division by a non-constant or zero expression", t[2])
                    acc = acc / rhs
            else:
                return acc

    def power(self, ring):
        base = self.atom(ring)
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.next()
            neg = False
            if self.peek()[1] == "-" and self.peek()[0] == "op":
                self.next()
                neg = True
            n = self.next()
            if n[0] != "num":
                self.error("exponent must be an integer literal", n[2])
            k = int(n[1]) * (-1 if neg else 1)
            if k < 0 and not (base.is_constant() and base):
                self.error("negative exponent of a non-constant expression", n[2])
            return base ** k
        return base

    def atom(self, ring):
        t = self.next()
        kind, val, pos = t
        if kind == "num":
            return ring.const(int(val))
        if kind == "id":
            nxt = self.peek()
            if self.hook is not None and self.hook.accepts(val) and nxt[1] in ("(", "{") and nxt[0] == "op":
                return self.call(val, pos, ring)
            if val in ring.index:
                return ring.var(val)
            gens = ring.field.generators()
            if val in gens:
                return ring.const(gens[val])
            self.error(f"unknown identifier {val!r}", pos)
        if kind == "op" and val == "(":
            inner = self.expr(ring)
            self.expect(")")
            return inner
        if kind == "end":
            self.error("unexpected end of input", pos)
        self.error(f"unexpected {val!r}", pos)

    def call(self, name, pos, ring):
        indices = []
        if self.peek()[1] == "{":
            self.next()
            while True:
                n = self.next()
                if n[0] != "num":
                    self.error("operator index must be an integer", n[2])
                indices.append(int(n[1]))
                sep = self.next()
                if sep[1] == "}":
                    break
                if sep[1] != ",":
                    self.error("expected ',' or '}' in operator index", sep[2])
        self.expect("(")
        if self.peek()[0] == "end" or self.peek()[1] == ")":
            self.error("missing operator argument", self.peek()[2])
        arg = self.expr(self.hook.arg_ring)
        self.expect(")")
        try:
            out = self.hook.apply(name, tuple(indices), arg)
        except (KeyError, ValueError) as exc:
            self.error(str(exc).strip("'\""), pos)
        if out.ring.names != ring.names:
            out = out.change_ring(ring)
        return out
