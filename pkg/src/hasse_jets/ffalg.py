"""Finite free algebra schemes given by structure constants, and their morphisms.

A scheme of rank l over the base ring A is a table ``table[i][j] = {k: a_ijk}``
with ``e_i * e_j = sum_k a_ijk e_k`` and a distinguished unit vector.  The base
ring A is a polynomial ring over Q in zero or more parameters (``c``, ``c1``,
...); all built-in tables have integer-valued entries.  ``Algebra`` is the
specialization D(K) = K (x)_A D(A) at chosen parameter values.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .exactalg import QQ, Poly, PolyRing, RationalFunctionField
from .exactalg.linalg import rank as mat_rank
from .verdict import OK, Verdict

__all__ = [
    "AxiomViolation",
    "base_ring",
    "FFAlgebraScheme",
    "FFElement",
    "Algebra",
    "FFAlgebraMorphism",
    "scheme_from_structure_constants",
    "truncated_quotient_scheme",
    "compose_schemes",
    "morphism_check",
    "invert_element",
]


class AxiomViolation(ValueError):
    """A structure-constant table fails commutativity, associativity or unit laws."""

    def __init__(self, axiom: str, triple: tuple, msg: str = ""):
        super().__init__(f"{axiom} fails at basis triple {triple}" + (f": {msg}" if msg else ""))
        self.axiom = axiom
        self.triple = triple


_BASE_RINGS: dict = {}


def base_ring(params=()) -> PolyRing:
    """The base ring A = Q[params] (integer-valued tables live here)."""
    params = tuple(params)
    r = _BASE_RINGS.get(params)
    if r is None:
        r = _BASE_RINGS[params] = PolyRing(QQ, params)
    return r


def _to_A(A: PolyRing, v) -> Poly:
    if isinstance(v, Poly):
        return v if v.ring is A else v.change_ring(A)
    if isinstance(v, str):
        return A.parse(v)
    return A.const(v)


def _sparse_add(out: dict, k, v):
    cur = out.get(k)
    v = v if cur is None else cur + v
    if v:
        out[k] = v
    else:
        out.pop(k, None)


# ------------------------------------------------------------------ scheme

class FFAlgebraScheme:
    """A finite free commutative algebra over A with a fixed basis."""

    def __init__(self, rank: int, table, A: PolyRing | None = None, unit=None, meta=None, validate=True):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.A = A or base_ring()
        self.rank = rank
        tab = []
        for i in range(rank):
            row = []
            for j in range(rank):
                entry = table[i][j]
                items = entry.items() if isinstance(entry, dict) else enumerate(entry)
                d = {}
                for k, v in items:
                    p = _to_A(self.A, v)
                    if p:
                        d[k] = p
                row.append(d)
            tab.append(row)
        self.table = tab
        u = [0] * rank
        if unit is None:
            u[0] = 1
        else:
            u = list(unit)
        self.unit = [_to_A(self.A, v) for v in u]
        self.meta = dict(meta or {})
        self.meta.setdefault("labels", [f"e{i}" for i in range(rank)])
        self.meta.setdefault("kind", "generic")
        self.meta.setdefault("name", f"rank{rank}")
        self._spec: dict = {}
        if validate:
            self.validate()

    @property
    def labels(self):
        return self.meta["labels"]

    @property
    def kind(self):
        return self.meta["kind"]

    def __repr__(self):
        return f"FFAlgebraScheme({self.meta['name']}, rank={self.rank})"

    # arithmetic over A -------------------------------------------------
    def mul_vec(self, a, b) -> list:
        """Product of coordinate vectors with A-coefficients."""
        out: dict = {}
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                ab = ai * bj
                for k, c in self.table[i][j].items():
                    _sparse_add(out, k, ab * c)
        zero = self.A.zero
        return [out.get(k, zero) for k in range(self.rank)]

    def basis_vec(self, i) -> list:
        v = [self.A.zero] * self.rank
        v[i] = self.A.one
        return v

    def validate(self):
        """Check commutativity, unit and associativity on all basis triples."""
        n = self.rank
        z = self.A.zero
        for i in range(n):
            for j in range(i + 1, n):
                if self.table[i][j] != self.table[j][i]:
                    raise AxiomViolation("commutativity", (i, j, None))
        for j in range(n):
            got = self.mul_vec(self.unit, self.basis_vec(j))
            if got != self.basis_vec(j):
                bad = next(k for k in range(n) if got[k] != (self.A.one if k == j else z))
                raise AxiomViolation("unit", (0, j, bad))
        for i, j, k in product(range(n), repeat=3):
            if j > k:
                continue
            left = self.mul_vec(self.mul_vec(self.basis_vec(i), self.basis_vec(j)), self.basis_vec(k))
            right = self.mul_vec(self.basis_vec(i), self.mul_vec(self.basis_vec(j), self.basis_vec(k)))
            if left != right:
                raise AxiomViolation("associativity", (i, j, k))

    # specialization ----------------------------------------------------
    def over(self, K, values=None) -> "Algebra":
        """D(K) at parameter values (mapping name -> K element; default 0)."""
        values = dict(values or {})
        key = (K.name, tuple(sorted((k, K.render(K(v))) for k, v in values.items())))
        alg = self._spec.get(key)
        if alg is None:
            alg = Algebra(self, K, values)
            self._spec[key] = alg
        return alg

    def dump(self) -> dict:
        """JSON-friendly structure-constant table."""
        entries = []
        for i in range(self.rank):
            for j in range(i, self.rank):
                for k, c in sorted(self.table[i][j].items()):
                    entries.append([i, j, k, c.render()])
        return {
            "name": self.meta["name"],
            "rank": self.rank,
            "params": list(self.A.names),
            "labels": list(self.labels),
            "unit": [u.render() for u in self.unit],
            "kind": self.kind,
            "table": entries,
        }

    @classmethod
    def load(cls, data: dict) -> "FFAlgebraScheme":
        A = base_ring(data.get("params", ()))
        n = data["rank"]
        table = [[{} for _ in range(n)] for _ in range(n)]
        for i, j, k, c in data["table"]:
            table[i][j][k] = A.parse(c)
            table[j][i][k] = A.parse(c)
        meta = {"name": data.get("name"), "labels": data.get("labels"), "kind": data.get("kind", "generic")}
        meta = {k: v for k, v in meta.items() if v is not None}
        unit = [A.parse(u) for u in data["unit"]] if "unit" in data else None
        return cls(n, table, A, unit=unit, meta=meta)


def _spec_value(p: Poly, K, values):
    if p.is_constant():
        return K(p.constant_coeff())
    return p.map_coeffs(K, PolyRing(K, p.ring.names)).evaluate(
        {n: K(values.get(n, 0)) for n in p.ring.names}
    )


class Algebra:
    """D(K): the scheme's table specialized into a field K."""

    def __init__(self, scheme: FFAlgebraScheme, K, values):
        self.scheme = scheme
        self.field = K
        self.values = values
        self.rank = scheme.rank
        self.labels = scheme.labels
        self.kind = scheme.kind
        self.table = []
        for i in range(self.rank):
            row = []
            for j in range(self.rank):
                row.append([(k, _spec_value(c, K, values)) for k, c in sorted(scheme.table[i][j].items())])
                row[-1] = [(k, c) for k, c in row[-1] if c]
            self.table.append(row)
        self.unit = [_spec_value(u, K, values) for u in scheme.unit]

    def mul(self, a, b) -> list:
        """Product of coordinate vectors; coefficients may be field or Poly values."""
        out: dict = {}
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.table[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                ab = ai * bj
                for k, c in row[j]:
                    _sparse_add(out, k, ab * c if c != 1 else ab)
        zero = None
        res = []
        for k in range(self.rank):
            v = out.get(k)
            if v is None:
                if zero is None:
                    zero = _zero_like(a, b)
                v = zero
            res.append(v)
        return res

    def one(self) -> list:
        return list(self.unit)

    def scalar(self, x) -> list:
        """Image of x under the unit embedding K -> D(K)."""
        return [u * x if u else u for u in self.unit]

    def power(self, a, n: int) -> list:
        out = self.one()
        base = list(a)
        while n:
            if n & 1:
                out = self.mul(out, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return out

    def element(self, coeffs) -> "FFElement":
        return FFElement(self, tuple(self.field(c) for c in coeffs))

    def invert(self, x) -> list:
        return invert_element(self.element(x)).coeffs


def _zero_like(a, b):
    for v in list(a) + list(b):
        if isinstance(v, Poly):
            return v.ring.zero
    for v in list(a) + list(b):
        try:
            return v * 0
        except TypeError:
            pass
    return 0


@dataclass(frozen=True)
class FFElement:
    """A point of D(K): coordinates in the scheme's basis."""

    algebra: Algebra
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.rank:
            raise ValueError(f"expected {self.algebra.rank} coordinates, got {len(self.coeffs)}")

    def __mul__(self, other: "FFElement") -> "FFElement":
        return FFElement(self.algebra, tuple(self.algebra.mul(self.coeffs, other.coeffs)))

    def __add__(self, other: "FFElement") -> "FFElement":
        return FFElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FFElement") -> "FFElement":
        return FFElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def is_one(self) -> bool:
        return list(self.coeffs) == list(self.algebra.unit)


# ------------------------------------------------------------------ builders

def scheme_from_structure_constants(rank: int, table, A=None, unit=None, meta=None) -> FFAlgebraScheme:
    """Validated scheme from an l x l x l table (dict or dense lists per entry)."""
    return FFAlgebraScheme(rank, table, A, unit=unit, meta=meta)


def graded_lex_key(e):
    return (sum(e), tuple(-x for x in e))


def truncated_quotient_scheme(names, relations, cap: int | None = None, A=None, meta=None) -> FFAlgebraScheme:
    """A[names]/(relations, monomials of total degree > cap).

    ``relations[i]`` is a monic univariate polynomial in ``names[i]`` with
    coefficients in A, given as a Poly over A[names] or as ascending coefficient
    lists ``[a_0, ..., a_{d-1}, 1]``.  The basis is the set of standard
    monomials in graded lexicographic order.
    """
    A = A or base_ring()
    names = tuple(names)
    e = len(names)
    if len(relations) != e:
        raise ValueError("one relation per variable is required")
    rels = []
    for i, r in enumerate(relations):
        if isinstance(r, Poly):
            coeffs = _univariate_coeffs(r, i, A)
        else:
            coeffs = [_to_A(A, c) for c in r]
        if not coeffs or coeffs[-1] != A.one:
            raise ValueError(f"relation for {names[i]} is not monic")
        rels.append(coeffs)
    degs = [len(c) - 1 for c in rels]
    mons = [m for m in product(*[range(d) for d in degs]) if cap is None or sum(m) <= cap]
    mons.sort(key=graded_lex_key)
    index = {m: k for k, m in enumerate(mons)}

    def reduce(terms: dict) -> dict:
        work = dict(terms)
        out: dict = {}
        while work:
            m, c = work.popitem()
            bad = next((i for i in range(e) if m[i] >= degs[i]), None)
            if bad is None:
                if cap is None or sum(m) <= cap:
                    _sparse_add(out, m, c)
                continue
            d = degs[bad]
            # x^d = -(a_0 + ... + a_{d-1} x^{d-1})
            for p in range(d):
                a = rels[bad][p]
                if a:
                    nm = list(m)
                    nm[bad] = m[bad] - d + p
                    _sparse_add(work, tuple(nm), -a * c)
        return out

    n = len(mons)
    table = [[{} for _ in range(n)] for _ in range(n)]
    for i, mi in enumerate(mons):
        for j in range(i, n):
            mj = mons[j]
            prod = tuple(a + b for a, b in zip(mi, mj))
            red = reduce({prod: A.one})
            d = {index[m]: c for m, c in red.items()}
            table[i][j] = d
            table[j][i] = d
    labels = [_mono_label(names, m) for m in mons]
    meta = dict(meta or {})
    meta.setdefault("labels", labels)
    meta.setdefault("name", f"{'x'.join(names)} quotient")
    meta.setdefault("monomials", mons)
    meta.setdefault("kind", "generic")
    return FFAlgebraScheme(n, table, A, meta=meta)


def _univariate_coeffs(r: Poly, i: int, A: PolyRing):
    coeffs: dict = {}
    for e, c in r.terms.items():
        if any(x for k, x in enumerate(e) if k != i):
            raise ValueError("relation is not univariate")
        coeffs[e[i]] = A.const(c) if not isinstance(c, Poly) else c
    d = max(coeffs)
    return [coeffs.get(k, A.zero) for k in range(d + 1)]


def _mono_label(names, m) -> str:
    parts = []
    for n, x in zip(names, m):
        if x == 1:
            parts.append(n)
        elif x:
            parts.append(f"{n}^{x}")
    return "*".join(parts) or "1"


def compose_schemes(Dm: FFAlgebraScheme, Dn: FFAlgebraScheme) -> FFAlgebraScheme:
    """Tensor product with outer (first) index major: (i, j) -> i * l_n + j."""
    if Dm.A.names != Dn.A.names:
        raise ValueError(f"base ring mismatch: {Dm.A.names} vs {Dn.A.names}")
    A = Dm.A
    lm, ln = Dm.rank, Dn.rank
    N = lm * ln
    table = [[None] * N for _ in range(N)]
    for i1, j1, i2, j2 in product(range(lm), range(ln), range(lm), range(ln)):
        a = i1 * ln + j1
        b = i2 * ln + j2
        if table[b][a] is not None:
            table[a][b] = table[b][a]
            continue
        d: dict = {}
        for k, ck in Dm.table[i1][i2].items():
            for l, cl in Dn.table[j1][j2].items():
                _sparse_add(d, k * ln + l, ck * cl)
        table[a][b] = d
    unit = [u * v for u in Dm.unit for v in Dn.unit]
    labels = [f"{x}|{y}" for x in Dm.labels for y in Dn.labels]
    kinds = {Dm.kind, Dn.kind}
    kind = Dm.kind if len(kinds) == 1 else "generic"
    meta = {"labels": labels, "kind": kind, "name": f"({Dm.meta['name']})({Dn.meta['name']})"}
    return FFAlgebraScheme(N, table, A, unit=unit, meta=meta, validate=False)


# ------------------------------------------------------------------ morphisms

class FFAlgebraMorphism:
    """An A-linear map given by an l_target x l_source matrix (columns = images)."""

    def __init__(self, source: FFAlgebraScheme, target: FFAlgebraScheme, matrix, name: str = ""):
        A = source.A
        self.source = source
        self.target = target
        self.matrix = [[_to_A(A, v) for v in row] for row in matrix]
        self.name = name
        if len(self.matrix) != target.rank or any(len(r) != source.rank for r in self.matrix):
            raise ValueError(
                f"matrix shape must be {target.rank}x{source.rank} for {name or 'morphism'}"
            )

    def apply(self, v) -> list:
        out = []
        for row in self.matrix:
            s = self.source.A.zero
            for a, x in zip(row, v):
                if a and x:
                    s = s + a * x
            out.append(s)
        return out

    def column(self, j) -> list:
        return [row[j] for row in self.matrix]

    def specialized(self, K, values=None) -> list:
        values = dict(values or {})
        return [[_spec_value(c, K, values) if c else K.zero for c in row] for row in self.matrix]

    def dump(self) -> dict:
        return {"name": self.name, "matrix": [[c.render() for c in row] for row in self.matrix]}


def _frac_field(A: PolyRing):
    return QQ if not A.names else RationalFunctionField(QQ, A.names)


def morphism_check(phi: FFAlgebraMorphism, surjective: bool = False, embedding: bool = False) -> Verdict:
    """Unit, multiplicativity on basis pairs, and optional rank conditions.

    Ranks are computed over Frac(A), i.e. for generic parameter values.
    """
    S, T = phi.source, phi.target
    if phi.apply(S.unit) != T.unit:
        return Verdict.fail("unit", morphism=phi.name)
    images = [phi.column(j) for j in range(S.rank)]
    for i in range(S.rank):
        for j in range(i, S.rank):
            lhs = phi.apply(S.mul_vec(S.basis_vec(i), S.basis_vec(j)))
            rhs = T.mul_vec(images[i], images[j])
            if lhs != rhs:
                return Verdict.fail(
                    "multiplicativity", morphism=phi.name, pair=[S.labels[i], S.labels[j]]
                )
    if surjective or embedding:
        F = _frac_field(S.A)
        M = [[F(c.constant_coeff()) if F is QQ else F(c) for c in row] for row in phi.matrix]
        r = mat_rank(M, F, S.rank)
        if surjective and r != T.rank:
            return Verdict.fail("surjectivity", morphism=phi.name, rank=r, expected=T.rank)
        if embedding and r != S.rank:
            return Verdict.fail("closed-embedding", morphism=phi.name, rank=r, expected=S.rank)
    return OK


# ------------------------------------------------------------------ units

def invert_element(x: FFElement) -> FFElement:
    """Inverse in D(K).

    Local algebras (nilpotent augmentation ideal) use a truncated geometric
    series, split algebras invert coordinatewise, anything else solves the
    linear system x * y = 1.  Coordinate 0 is the augmentation.
    """
    alg = x.algebra
    K = alg.field
    a0 = x.coeffs[0]
    if not a0:
        raise ZeroDivisionError("zero augmentation: element is not a unit")
    if alg.kind == "split":
        if any(not c for c in x.coeffs):
            raise ZeroDivisionError("a coordinate vanishes: element of a split algebra is not a unit")
        return FFElement(alg, tuple(1 / c for c in x.coeffs))
    if alg.kind == "local":
        inv0 = 1 / a0
        u = [c * inv0 for c in x.coeffs]
        u = [c - o for c, o in zip(u, alg.unit)]
        neg_u = [-c for c in u]
        total = alg.one()
        term = alg.one()
        for _ in range(alg.rank):
            term = alg.mul(term, neg_u)
            if not any(term):
                break
            total = [s + t for s, t in zip(total, term)]
        y = FFElement(alg, tuple(c * inv0 for c in total))
    else:
        from .exactalg.linalg import solve

        n = alg.rank
        M = [[K.zero] * n for _ in range(n)]
        for j in range(n):
            col = alg.mul(list(x.coeffs), [K.one if k == j else K.zero for k in range(n)])
            for i in range(n):
                M[i][j] = K(col[i]) if col[i] else K.zero
        sol = solve(M, list(alg.unit), K, n)
        if sol is None:
            raise ZeroDivisionError("element is not a unit")
        y = FFElement(alg, tuple(sol))
    if not (x * y).is_one():
        raise ArithmeticError("inverse check failed")
    return y
