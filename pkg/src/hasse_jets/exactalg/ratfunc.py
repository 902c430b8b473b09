"""Rational function fields k(t_1, ..., t_r) over Q or F_p.

Values are kept as gcd-reduced numerator/denominator pairs whose denominator
is monic for the graded reverse lexicographic order.  Single-variable gcds use
the dense Euclidean algorithm; several variables go through an lcm computed by
Gröbner elimination.
"""
from __future__ import annotations

from fractions import Fraction

from .fields import Field, FieldMismatch, ModInt
from .poly import Poly, PolyRing

__all__ = ["RationalFunctionField", "RatFunc", "poly_gcd"]


# ------------------------------------------------------------- gcd helpers

def _dense(p: Poly) -> list:
    """Ascending dense coefficient list of a univariate polynomial."""
    zero = p.ring.field.zero
    d = p.total_degree()
    out = [zero] * (d + 1)
    for (k,), c in p.terms.items():
        out[k] = c
    return out


def _undense(ring: PolyRing, coeffs: list) -> Poly:
    return Poly(ring, {(k,): c for k, c in enumerate(coeffs) if c})


def _dense_rem(a: list, b: list) -> list:
    a = a[:]
    inv = 1 / b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        if c:
            f = c * inv
            s = len(a) - 1 - db
            for i in range(db):
                a[s + i] = a[s + i] - f * b[i]
        a.pop()
        while a and not a[-1]:
            a.pop()
    return a


def _univariate_gcd(f: Poly, g: Poly) -> Poly:
    a, b = _dense(f), _dense(g)
    while b:
        a, b = b, _dense_rem(a, b)
    inv = 1 / a[-1]
    return _undense(f.ring, [c * inv for c in a])


def _monomial_content(p: Poly):
    """Largest monomial dividing every term."""
    exps = list(p.terms)
    return tuple(min(col) for col in zip(*exps))


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic (grevlex) gcd of two polynomials over a field."""
    ring = f.ring
    if f.is_zero():
        return g.monic() if g else ring.zero
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return ring.one
    if ring.nvars == 1:
        return _univariate_gcd(f, g)
    if len(f.terms) == 1 or len(g.terms) == 1:
        m = tuple(min(a, b) for a, b in zip(_monomial_content(f), _monomial_content(g)))
        return ring.monomial(m)
    if f == g:
        return f.monic()
    from .groebner import ideal_intersection

    lcm = ideal_intersection(ring, [f], [g])
    if len(lcm) != 1:
        raise ArithmeticError("principal intersection expected")
    q, r = divide_exact(f * g, lcm[0])
    if r:
        raise ArithmeticError("lcm does not divide the product")
    return q.monic()


def divide_exact(f: Poly, g: Poly):
    """Multivariate division of f by a single g; returns (quotient, remainder)."""
    ring = f.ring
    key = ring.key
    lm_g = g.lm()
    lc_g = g.terms[lm_g]
    q: dict = {}
    rem: dict = {}
    p = dict(f.terms)
    while p:
        e = max(p, key=key)
        c = p[e]
        if all(a >= b for a, b in zip(e, lm_g)):
            s = tuple(a - b for a, b in zip(e, lm_g))
            f_ = c / lc_g
            q[s] = f_
            for ge, gc in g.terms.items():
                te = tuple(a + b for a, b in zip(ge, s))
                v = p.get(te)
                v = -f_ * gc if v is None else v - f_ * gc
                if v:
                    p[te] = v
                else:
                    p.pop(te, None)
        else:
            rem[e] = c
            del p[e]
    return Poly(ring, q), Poly(ring, rem)


# ------------------------------------------------------------- field

class RatFunc:
    """An element num/den of a rational function field, in canonical form."""

    __slots__ = ("num", "den", "F", "_hash")

    def __init__(self, num: Poly, den: Poly, F: "RationalFunctionField", canonical=False):
        if not canonical:
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            if num.is_zero():
                den = F.ring.one
            else:
                g = poly_gcd(num, den)
                if not (g.is_constant()):
                    num, _ = divide_exact(num, g)
                    den, _ = divide_exact(den, g)
                lc = den.lc()
                if lc != 1:
                    inv = 1 / lc
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den
        self.F = F
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.F is not self.F and other.F != self.F:
                raise FieldMismatch(f"{other.F} value used in {self.F}")
            return other
        if isinstance(other, (int, Fraction, ModInt)):
            return self.F(other)
        if isinstance(other, Poly):
            return None
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den, self.F)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, self.F)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, self.F, canonical=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return self.F.zero
        if o.den.is_constant() and o.num.is_constant():
            c = o.num.constant_coeff()
            return RatFunc(self.num.scale(c), self.den, self.F, canonical=True)
        if self.den.is_constant() and self.num.is_constant():
            c = self.num.constant_coeff()
            return RatFunc(o.num.scale(c), o.den, self.F, canonical=True)
        return RatFunc(self.num * o.num, self.den * o.den, self.F)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError(f"division by zero in {self.F}")
        return RatFunc(self.den, self.num, self.F)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, self.F, canonical=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num.terms == o.num.terms and self.den.terms == o.den.terms

    def __hash__(self):
        if self._hash is None:
            if self.den.is_constant() and self.num.is_constant():
                self._hash = hash(self.num.constant_coeff())
            else:
                self._hash = hash((frozenset(self.num.terms.items()), frozenset(self.den.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_coeff()

    def diff(self, name) -> "RatFunc":
        """Partial derivative with respect to a generator."""
        n, d = self.num, self.den
        return RatFunc(n.diff(name) * d - n * d.diff(name), d * d, self.F)

    def __repr__(self):
        return f"RatFunc({self.F.render(self)!r})"

    def __str__(self):
        return self.F.render(self)


class RationalFunctionField(Field):
    """k(t_1, ..., t_r) with k = Q or F_p."""

    def __init__(self, base: Field, names):
        if getattr(base, "degree", 1) != 1:
            raise ValueError("rational function fields are built over Q or a prime field")
        self.base = base
        self.names = tuple(names)
        if not self.names:
            raise ValueError("a rational function field needs at least one variable")
        self.ring = PolyRing(base, self.names, "grevlex")
        self.characteristic = base.characteristic
        self.name = f"{base.name}({','.join(self.names)})"

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and self.base == other.base
            and self.names == other.names
        )

    def __hash__(self):
        return hash(self.name)

    def __call__(self, x):
        if isinstance(x, RatFunc):
            if x.F is self or x.F == self:
                return x
            raise FieldMismatch(f"{x.F} value used in {self}")
        if isinstance(x, Poly):
            if x.ring.names != self.names:
                raise FieldMismatch(f"polynomial in {x.ring.names} used in {self}")
            p = x if x.ring.field == self.base else x.map_coeffs(self.base, self.ring)
            return RatFunc(Poly(self.ring, p.terms), self.ring.one, self, canonical=True)
        if isinstance(x, str):
            return self.parse(x)
        c = self.base(x)
        return RatFunc(self.ring.const(c), self.ring.one, self, canonical=True)

    def from_polys(self, num: Poly, den: Poly) -> RatFunc:
        return RatFunc(num, den, self)

    def contains(self, x) -> bool:
        return isinstance(x, RatFunc) and x.F == self

    def gen(self, name) -> RatFunc:
        return RatFunc(self.ring.var(name), self.ring.one, self, canonical=True)

    def generators(self) -> dict:
        return {n: self.gen(n) for n in self.names}

    def parse(self, text: str) -> RatFunc:
        return PolyRing(self, ()).parse(text).constant_coeff()

    def render(self, x) -> str:
        x = self(x)
        num = x.num.render()
        if x.den.is_constant():
            return num
        if len(x.num.terms) > 1:
            num = f"({num})"
        den = x.den.render()
        single_factor = len(x.den.terms) == 1 and len(x.den.support()) == 1
        if not single_factor:
            den = f"({den})"
        return f"{num}/{den}"

    def is_negative(self, x) -> bool:
        x = self(x)
        if not x.num or self.characteristic:
            return False
        lead = max(x.num.terms, key=lambda e: tuple(reversed(e)))
        return x.num.terms[lead] < 0

    def is_atomic(self, x) -> bool:
        x = self(x)
        return x.den.is_constant() and len(x.num.terms) <= 1

    def random_element(self, rng, size=2):
        def rpoly():
            terms = {}
            for _ in range(rng.randint(1, 3)):
                e = tuple(rng.randint(0, size) for _ in self.names)
                c = self.base.random_element(rng)
                terms[e] = terms.get(e, self.base.zero) + c
            return self.ring.from_terms(terms)

        num = rpoly()
        den = rpoly()
        while not den:
            den = rpoly()
        return RatFunc(num, den, self)
