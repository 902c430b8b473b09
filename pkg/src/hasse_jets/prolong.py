"""Prolongation spaces of affine varieties over an HS field.

A point of tau_n X with coordinates x_j^(k) (j a variable of X, k a basis
index of D_n) corresponds to the D_n(K)-point x_j = sum_k x_j^(k) b_k of X.
Level-0 coordinates keep the names of X; the coordinate of basis index k >= 1
for the j-th variable is called ``{prefix}{k}_{letter}`` with letter a, b, c,
... by position of the variable.  Variables are ordered basis-index major.
"""
from __future__ import annotations

from dataclasses import dataclass
from string import ascii_lowercase

from ._parallel import pmap
from .exactalg import Ideal, Poly, PolyRing
from .exactalg.groebner import GroebnerBudgetExceeded
from .hsring import HSField
from .verdict import OK, Verdict

__all__ = [
    "AffineVariety",
    "Prolongation",
    "ProlongationLevel",
    "prolongation",
    "nabla",
    "pi_hat",
    "delta_hat",
    "fibre_check",
    "dominance_prolongation",
    "image_dominance",
]


class PointError(ValueError):
    """A point does not lie on the variety it was asserted to lie on."""


@dataclass(frozen=True)
class AffineVariety:
    """V(gens) in affine space with the given coordinate names."""

    ring: PolyRing
    gens: tuple
    name: str = "X"

    @classmethod
    def from_strings(cls, K, names, gens, name="X") -> "AffineVariety":
        ring = PolyRing(K, names)
        return cls(ring, tuple(ring.parse(g) if isinstance(g, str) else ring(g) for g in gens), name)

    @property
    def field(self):
        return self.ring.field

    @property
    def names(self) -> tuple:
        return self.ring.names

    @property
    def dim_ambient(self) -> int:
        return self.ring.nvars

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.gens)

    def contains_point(self, p) -> bool:
        p = [self.field(v) for v in p]
        return all(not g.evaluate(p) for g in self.gens)

    def render(self) -> dict:
        return {"name": self.name, "vars": list(self.names), "gens": [g.render() for g in self.gens]}


@dataclass(frozen=True)
class ProlongationLevel:
    level: int
    ring: PolyRing
    ideal: Ideal

    @property
    def names(self):
        return self.ring.names

    def render(self) -> dict:
        return {"level": self.level, "vars": list(self.names), "gens": [g.render() for g in self.ideal.gens]}


def _letter(j: int) -> str:
    if j < 26:
        return ascii_lowercase[j]
    return f"v{j}"


class Prolongation:
    """The tower tau_n X (n <= cap) of an affine variety with its structure maps."""

    def __init__(self, X: AffineVariety, hs: HSField, prefix: str | None = None):
        if X.field != hs.K:
            raise ValueError(f"{X.name} is over {X.field.name} but the HS field is {hs.K.name}")
        self.X = X
        self.hs = hs
        self.sys = hs.sys
        self.cap = hs.cap
        self.N = X.dim_ambient
        self.prefix = prefix or self._choose_prefix()
        self._rings: dict = {}
        self._cache: dict = {}

    def _choose_prefix(self) -> str:
        taken = set(self.X.names)
        for cand in ("x", "w", "z", "u", "q", "r", "s"):
            names = {f"{cand}{k}_{_letter(j)}" for k in range(1, self.sys.rank(self.cap)) for j in range(self.N)}
            if not names & taken:
                return cand
        k = 0
        while True:
            cand = f"p{k}"
            if not {f"{cand}{i}_{_letter(j)}" for i in range(1, self.sys.rank(self.cap)) for j in range(self.N)} & taken:
                return cand
            k += 1

    # naming -------------------------------------------------------------
    def var_name(self, j: int, k: int) -> str:
        return self.X.names[j] if k == 0 else f"{self.prefix}{k}_{_letter(j)}"

    def names(self, n: int) -> tuple:
        return tuple(self.var_name(j, k) for k in range(self.sys.rank(n)) for j in range(self.N))

    def ring(self, n: int) -> PolyRing:
        self._check(n)
        r = self._rings.get(n)
        if r is None:
            r = self._rings[n] = PolyRing(self.X.field, self.names(n))
        return r

    def index(self, j: int, k: int) -> int:
        return k * self.N + j

    def _check(self, *levels):
        for n in levels:
            if not 0 <= n <= self.cap:
                raise ValueError(f"level {n} is outside the cap 0..{self.cap}")

    # prolonging polynomials ---------------------------------------------
    def prolong_polys(self, polys, n: int) -> list:
        """Coefficient-collected images of polynomials in the variables of X.

        Each f yields rank(D_n) polynomials (the basis coordinates of
        f^E(sum_k x^(k) b_k)); the list is ordered polynomial-major.
        """
        self._check(n)
        R = self.ring(n)
        alg = self.hs.algebra(n)
        ell = alg.rank
        xs = [[R.var(self.var_name(j, k)) for k in range(ell)] for j in range(self.N)]
        powers: dict = {}

        def power(j, a):
            key = (j, a)
            r = powers.get(key)
            if r is None:
                r = xs[j] if a == 1 else alg.mul(power(j, a - 1), xs[j])
                powers[key] = r
            return r

        def one_poly(f):
            f = self.X.ring(f) if not isinstance(f, Poly) else f
            acc = [R.zero] * ell
            for e, c in f.terms.items():
                vec = [R.const(v) for v in self.hs.E(c, n)]
                for j, a in enumerate(e):
                    if a:
                        vec = alg.mul(vec, power(j, a))
                acc = [u + v for u, v in zip(acc, vec)]
            return acc

        out = []
        for coords in pmap(one_poly, list(polys)):
            out.extend(coords)
        return out

    def ideal(self, n: int) -> Ideal:
        """I(tau_n X)."""
        key = ("ideal", n)
        I = self._cache.get(key)
        if I is None:
            I = Ideal(self.ring(n), self.prolong_polys(self.X.gens, n))
            self._cache[key] = I
        return I

    def level(self, n: int) -> ProlongationLevel:
        return ProlongationLevel(n, self.ring(n), self.ideal(n))

    # points -------------------------------------------------------------
    def nabla(self, p, n: int, check: bool = True) -> tuple:
        self._check(n)
        K = self.X.field
        p = [K(v) for v in p]
        if len(p) != self.N:
            raise PointError(f"expected {self.N} coordinates, got {len(p)}")
        if check and not self.X.contains_point(p):
            raise PointError(f"the point is not on {self.X.name}")
        imgs = [self.hs.E(v, n) for v in p]
        q = tuple(imgs[j][k] for k in range(self.sys.rank(n)) for j in range(self.N))
        if check:
            bad = [g for g in self.ideal(n).gens if g.evaluate(q)]
            if bad:
                raise AssertionError(f"nabla image misses the prolongation generator {bad[0].render()}")
        return q

    # structure maps ------------------------------------------------------
    def _pi_matrix(self, m, n):
        key = ("pim", m, n)
        M = self._cache.get(key)
        if M is None:
            M = self.sys.pi(m, n).specialized(self.X.field, self.hs.params)
            self._cache[key] = M
        return M

    def pi_images(self, m: int, n: int) -> list:
        """Images of the level-n coordinates as linear forms in the level-m ring."""
        self._check(m, n)
        if n > m:
            raise ValueError("pi_hat needs m >= n")
        key = ("pi", m, n)
        r = self._cache.get(key)
        if r is None:
            M = self._pi_matrix(m, n)
            Rm = self.ring(m)
            r = []
            for k in range(self.sys.rank(n)):
                for j in range(self.N):
                    f = Rm.zero
                    for s, c in enumerate(M[k]):
                        if c:
                            f = f + Rm.var(self.var_name(j, s)) * c
                    r.append(f)
            self._cache[key] = r
        return r

    def pi_point(self, q, m: int, n: int) -> tuple:
        M = self._pi_matrix(m, n)
        K = self.X.field
        out = []
        for k in range(self.sys.rank(n)):
            for j in range(self.N):
                v = K.zero
                for s, c in enumerate(M[k]):
                    if c:
                        v = v + c * q[self.index(j, s)]
                out.append(v)
        return tuple(out)

    def pullback_pi(self, polys, m: int, n: int) -> list:
        imgs = self.pi_images(m, n)
        Rm, Rn = self.ring(m), self.ring(n)
        assign = dict(zip(Rn.names, imgs))
        return [f.substitute(assign, Rm) for f in polys]

    def inner(self, m: int) -> "Prolongation":
        """The prolongation tower of tau_m X itself (meaningful up to level cap - m)."""
        key = ("inner", m)
        P = self._cache.get(key)
        if P is None:
            Y = AffineVariety(self.ring(m), tuple(self.ideal(m).gens), f"tau_{m}{self.X.name}")
            P = Prolongation(Y, self.hs)
            self._cache[key] = P
        return P

    def delta_images(self, m: int, n: int) -> list:
        """Images of the coordinates of tau_n tau_m X as linear forms on tau_{m+n} X."""
        self._check(m + n)
        key = ("delta", m, n)
        r = self._cache.get(key)
        if r is not None:
            return r
        D = self.hs.delta_matrix(m, n)
        ln = self.sys.rank(n)
        lm = self.sys.rank(m)
        R = self.ring(m + n)
        r = []
        for k2 in range(ln):
            for k1 in range(lm):
                row = D[k1 * ln + k2]
                for j in range(self.N):
                    f = R.zero
                    for s, c in enumerate(row):
                        if c:
                            f = f + R.var(self.var_name(j, s)) * c
                    r.append(f)
        self._cache[key] = r
        return r

    def delta_point(self, q, m: int, n: int) -> tuple:
        D = self.hs.delta_matrix(m, n)
        ln, lm = self.sys.rank(n), self.sys.rank(m)
        K = self.X.field
        out = []
        for k2 in range(ln):
            for k1 in range(lm):
                row = D[k1 * ln + k2]
                for j in range(self.N):
                    v = K.zero
                    for s, c in enumerate(row):
                        if c:
                            v = v + c * q[self.index(j, s)]
                    out.append(v)
        return tuple(out)

    def pullback_delta(self, polys, m: int, n: int) -> list:
        """Pull polynomials on tau_n tau_m X back to tau_{m+n} X."""
        P = self.inner(m)
        Rt = P.ring(n)
        assign = dict(zip(Rt.names, self.delta_images(m, n)))
        R = self.ring(m + n)
        return [f.substitute(assign, R) for f in polys]


# ------------------------------------------------------------------ functional API

def prolongation(X: AffineVariety, hs: HSField, n: int) -> ProlongationLevel:
    return Prolongation(X, hs).level(n)


def nabla(p, X: AffineVariety, hs: HSField, n: int) -> tuple:
    return Prolongation(X, hs).nabla(p, n)


def pi_hat(P: Prolongation, q, m: int, n: int) -> tuple:
    """pi-hat(m, n) on a point of tau_m X."""
    return P.pi_point(q, m, n)


def delta_hat(P: Prolongation, q, m: int, n: int) -> tuple:
    """Delta-hat(m, n) on a point of tau_{m+n} X, landing in tau_n tau_m X."""
    return P.delta_point(q, m, n)


def fibre_check(X: AffineVariety, hs: HSField, coords, a, n: int) -> Verdict:
    """The fibre of tau_n X over nabla_n(a) equals tau_n of the fibre X_a.

    ``coords`` names the coordinates of X that the projection keeps; ``a``
    gives their values.
    """
    K = X.field
    P = Prolongation(X, hs)
    R = P.ring(n)
    idx = [X.names.index(c) for c in coords]
    imgs = [hs.E(K(v), n) for v in a]
    fib_gens = list(P.ideal(n).gens)
    for j, img in zip(idx, imgs):
        for k, v in enumerate(img):
            fib_gens.append(R.var(P.var_name(j, k)) - v)
    lhs = Ideal(R, fib_gens)
    Xa = AffineVariety(X.ring, X.gens + tuple(X.ring.var(X.names[j]) - K(v) for j, v in zip(idx, a)), X.name + "_a")
    rhs = Ideal(R, Prolongation(Xa, hs, P.prefix).prolong_polys(Xa.gens, n))
    out = lhs.first_outside(rhs.gens)
    if out is not None:
        return Verdict.fail("fibre", side="tau_n(X_a)", level=n, generator=rhs.gens[out[0]].render())
    out = rhs.first_outside(lhs.gens)
    if out is not None:
        return Verdict.fail("fibre", side="(tau_n X)_a", level=n, generator=lhs.gens[out[0]].render())
    return OK


def image_dominance(upper: Ideal, lower: Ideal, drop, max_pairs: int | None = None) -> Verdict:
    """Is the projection V(upper) -> V(lower) dominant at ideal level?

    Verdicts: ok (dominant), "radical" (the image closure agrees only up to
    radical), "not-dominant", or "inconclusive" when the Gröbner budget runs
    out.
    """
    try:
        elim = upper.eliminate(drop, target=lower.ring, max_pairs=max_pairs)
        out = lower.first_outside(elim.gens)
        if out is None:
            return OK
        k, _ = out
        g = elim.gens[k]
        for h in elim.gens[k:]:
            if not lower.contains(h) and not lower.radical_contains(h, max_pairs=max_pairs):
                return Verdict.fail("not-dominant", generator=h.render())
        return Verdict.fail("radical", generator=g.render())
    except GroebnerBudgetExceeded as exc:
        return Verdict.fail("inconclusive", reason=str(exc))


def dominance_prolongation(X: AffineVariety, hs: HSField, m: int, n: int, max_pairs: int | None = None) -> Verdict:
    """Dominance of pi-hat(m, n): tau_m X -> tau_n X via the elimination ideal."""
    if m < n:
        raise ValueError("dominance_prolongation needs m >= n")
    P = Prolongation(X, hs)
    upper, lower = P.ideal(m), P.ideal(n)
    return _pi_dominance(P, upper, lower, m, n, max_pairs)


def _pi_dominance(P: Prolongation, upper: Ideal, lower: Ideal, m: int, n: int, max_pairs=None) -> Verdict:
    if P.sys.is_prefix_projection(m, n):
        drop = [v for v in P.names(m) if v not in set(P.names(n))]
        return image_dominance(upper, lower, drop, max_pairs)
    # general linear projection: eliminate along the graph
    Rm = P.ring(m)
    tmp = [f"_g{i}" for i in range(len(P.names(n)))]
    big = PolyRing(Rm.field, Rm.names + tuple(tmp))
    gens = [g.change_ring(big) for g in upper.gens]
    for t, img in zip(tmp, P.pi_images(m, n)):
        gens.append(big.var(t) - img.change_ring(big))
    graph = Ideal(big, gens)
    Rt = PolyRing(Rm.field, tmp)
    lower_t = Ideal(Rt, [g.change_ring(Rt, [Rt.index[t] for t in tmp]) for g in lower.gens])
    return image_dominance(graph, lower_t, list(Rm.names), max_pairs)
