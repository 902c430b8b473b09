"""Exact coefficient fields: Q, F_p and GF(p^k).

Field elements support the usual Python operators, so polynomial code never
needs to know which field it is working over.  Each field object carries
rendering, parsing hooks and sampling helpers.  Rational function fields live
in ``ratfunc``.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import total_ordering

__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "ModInt",
    "ExtensionField",
    "ExtElem",
    "QQ",
    "FieldMismatch",
]


class FieldMismatch(TypeError):
    """Raised when values from incompatible coefficient domains are mixed."""


class Field:
    """Common interface of every coefficient field."""

    characteristic: int = 0
    name: str = "?"

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def generators(self) -> dict:
        """Named transcendental or algebraic generators, keyed by name."""
        return {}

    def contains(self, x) -> bool:
        raise NotImplementedError

    def render(self, x) -> str:
        return str(x)

    def is_negative(self, x) -> bool:
        """True when ``x`` renders with a leading minus sign."""
        return False

    def is_atomic(self, x) -> bool:
        """True when ``x`` can be printed as a factor without parentheses."""
        return True

    def random_element(self, rng: random.Random, size: int = 3):
        raise NotImplementedError

    def frobenius(self, x):
        """The p-th power map (identity in characteristic zero)."""
        return x ** self.characteristic if self.characteristic else x

    def __repr__(self) -> str:
        return self.name


# --------------------------------------------------------------------- Q

class RationalField(Field):
    """The rationals, with ``fractions.Fraction`` values."""

    characteristic = 0
    name = "Q"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, (ModInt, ExtElem)):
            raise FieldMismatch(f"cannot coerce {x!r} into Q")
        num = getattr(x, "numerator", None)
        den = getattr(x, "denominator", None)
        if isinstance(num, int) and isinstance(den, int):
            return Fraction(num, den)
        raise FieldMismatch(f"cannot coerce {x!r} into Q")

    def contains(self, x) -> bool:
        return isinstance(x, (Fraction, int))

    def render(self, x) -> str:
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def is_negative(self, x) -> bool:
        return x < 0

    def is_atomic(self, x) -> bool:
        return True

    def random_element(self, rng, size=3):
        num = rng.randint(-size, size)
        den = rng.randint(1, size)
        return Fraction(num, den)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


QQ = RationalField()


# --------------------------------------------------------------------- F_p

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@total_ordering
class ModInt:
    """A residue modulo a prime p, stored in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} and F_{other.p} mixed")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModInt(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModInt(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            if self.v == 0:
                raise ZeroDivisionError("division by zero in F_%d" % self.p)
            return ModInt(pow(pow(self.v, -1, self.p), -n, self.p), self.p)
        return ModInt(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.v < o

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModInt({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class PrimeField(Field):
    """The prime field F_p with ``ModInt`` values."""

    _cache: dict = {}

    def __new__(cls, p: int):
        if p in cls._cache:
            return cls._cache[p]
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self = super().__new__(cls)
        self.characteristic = p
        self.name = f"Fp({p})"
        cls._cache[p] = self
        return self

    @property
    def p(self) -> int:
        return self.characteristic

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, ModInt):
            if x.p != p:
                raise FieldMismatch(f"F_{x.p} value used in F_{p}")
            return x
        if isinstance(x, int):
            return ModInt(x, p)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return ModInt(x.numerator * pow(x.denominator, -1, p), p)
        if isinstance(x, str):
            return self(Fraction(x))
        raise FieldMismatch(f"cannot coerce {x!r} into F_{p}")

    def contains(self, x) -> bool:
        return isinstance(x, ModInt) and x.p == self.characteristic

    def render(self, x) -> str:
        return str(self(x).v)

    def random_element(self, rng, size=3):
        return ModInt(rng.randrange(self.characteristic), self.characteristic)

    def elements(self):
        return [ModInt(i, self.characteristic) for i in range(self.characteristic)]

    def __getnewargs__(self):
        return (self.characteristic,)


# --------------------------------------------------------------------- GF(p^k)

def _poly_divmod_p(a: list[int], b: list[int], p: int):
    """Dense univariate division over F_p; lists hold ascending coefficients."""
    a = a[:]
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] * inv % p
        s = len(a) - len(b)
        q[s] = f
        for i, c in enumerate(b):
            a[s + i] = (a[s + i] - f * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _is_irreducible_p(f: list[int], p: int) -> bool:
    """Brute-force irreducibility over F_p for small degree (trial division)."""
    k = len(f) - 1
    from itertools import product

    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = list(tail) + [1]
            _, r = _poly_divmod_p(f, g, p)
            if not r:
                return False
    return True


def _first_irreducible(p: int, k: int) -> list[int]:
    """First monic irreducible of degree k over F_p in lexicographic order."""
    from itertools import product

    for tail in product(range(p), repeat=k):
        f = list(reversed(tail)) + [1]
        if f[0] == 0:
            continue
        if _is_irreducible_p(f, p):
            return f
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")


class ExtElem:
    """An element of GF(p^k) as a coefficient tuple in the generator ``g``."""

    __slots__ = ("c", "F")

    def __init__(self, coeffs, F: "ExtensionField"):
        c = [v % F.characteristic for v in coeffs]
        c += [0] * (F.degree - len(c))
        self.c = tuple(c)
        self.F = F

    def _coerce(self, other):
        if isinstance(other, ExtElem):
            if other.F is not self.F:
                raise FieldMismatch("different extension fields mixed")
            return other.c
        if isinstance(other, (int, ModInt, Fraction)):
            return self.F(other).c
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem([a + b for a, b in zip(self.c, o)], self.F)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem([a - b for a, b in zip(self.c, o)], self.F)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem([b - a for a, b in zip(self.c, o)], self.F)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.F._mul(self.c, o), self.F)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * ExtElem(self.F._inv(o), self.F)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(o, self.F) * ExtElem(self.F._inv(self.c), self.F)

    def __neg__(self):
        return ExtElem([-a for a in self.c], self.F)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        base = self if n >= 0 else ExtElem(self.F._inv(self.c), self.F)
        n = abs(n)
        out = self.F.one
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return f"ExtElem({self.F.render(self)})"

    __str__ = lambda self: self.F.render(self)


class ExtensionField(Field):
    """GF(p^k) = F_p[g]/(m(g)) with a fixed first-found irreducible modulus."""

    _cache: dict = {}

    def __new__(cls, p: int, k: int, gen: str = "g"):
        key = (p, k, gen)
        if key in cls._cache:
            return cls._cache[key]
        if not _is_prime(p) or k < 1:
            raise ValueError(f"invalid extension GF({p},{k})")
        self = super().__new__(cls)
        self.characteristic = p
        self.degree = k
        self.gen_name = gen
        self.modulus = _first_irreducible(p, k) if k > 1 else [0, 1]
        self.name = f"GF({p},{k})"
        cls._cache[key] = self
        return self

    def __getnewargs__(self):
        return (self.characteristic, self.degree, self.gen_name)

    def _mul(self, a, b):
        p, k = self.characteristic, self.degree
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        prod = [v % p for v in prod]
        _, r = _poly_divmod_p(prod, self.modulus, p)
        return r

    def _inv(self, a):
        if not any(a):
            raise ZeroDivisionError(f"division by zero in {self.name}")
        # a^(q-2) is the inverse in a field of order q
        q = self.characteristic ** self.degree
        return (ExtElem(a, self) ** (q - 2)).c

    def __call__(self, x):
        if isinstance(x, ExtElem):
            if x.F is not self:
                raise FieldMismatch("element of another extension field")
            return x
        p = self.characteristic
        if isinstance(x, ModInt):
            if x.p != p:
                raise FieldMismatch(f"F_{x.p} value used in {self.name}")
            return ExtElem([x.v], self)
        if isinstance(x, int):
            return ExtElem([x], self)
        if isinstance(x, Fraction):
            return ExtElem([x.numerator * pow(x.denominator, -1, p)], self)
        raise FieldMismatch(f"cannot coerce {x!r} into {self.name}")

    def contains(self, x) -> bool:
        return isinstance(x, ExtElem) and x.F is self

    def gen(self) -> ExtElem:
        return ExtElem([0, 1], self)

    def generators(self) -> dict:
        return {self.gen_name: self.gen()}

    def render(self, x) -> str:
        x = self(x)
        parts = []
        for i in range(self.degree - 1, -1, -1):
            c = x.c[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def is_atomic(self, x) -> bool:
        # a constant or a bare power of the generator prints as one factor
        nz = [(i, c) for i, c in enumerate(self(x).c) if c]
        return len(nz) <= 1 and (not nz or nz[0][0] == 0 or nz[0][1] == 1)

    def random_element(self, rng, size=3):
        return ExtElem([rng.randrange(self.characteristic) for _ in range(self.degree)], self)

    def elements(self):
        from itertools import product

        return [ExtElem(list(c), self) for c in product(range(self.characteristic), repeat=self.degree)]
