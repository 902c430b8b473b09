"""Concrete Hasse-Schmidt field structures and their axiom checks.

An ``HSField`` couples a coefficient field K with an ``HSSystem`` and an
operator presentation, and evaluates E_n: K -> D_n(K) as coordinate tuples
in the system's basis.  Presentations come in three styles:

* generator style: images E_n(t) of the field generators, extended as a ring
  homomorphism (fractions go through the inverse in D_n(K));
* linear style: images of monomials in the generators, extended additively;
  this is how divided powers are given, and it lets a corrupted table show up
  as a failure of multiplicativity;
* direct style: the operators act on any element (derivations, endomorphisms).
"""
from __future__ import annotations

from itertools import combinations_with_replacement, product
from math import comb, factorial

from .exactalg import ExtensionField, PrimeField, RationalFunctionField
from .ffalg import FFElement, invert_element
from .hssystem import HSSystem, _multi_indices
from .verdict import OK, Verdict

__all__ = [
    "PresentationError",
    "Presentation",
    "ZeroOperators",
    "DividedPowers",
    "Derivations",
    "ExplicitImages",
    "Endomorphisms",
    "Frobenius",
    "HigherFromFirst",
    "DiffDiffOperators",
    "HSField",
    "make_hs_field",
    "default_samples",
    "verify_dring",
    "verify_iterative",
    "check_higherD_rules",
]


class PresentationError(ValueError):
    """The operator presentation does not fit the field or the system."""


# ------------------------------------------------------------------ field helpers

def field_generators(K) -> list[str]:
    if isinstance(K, RationalFunctionField):
        return list(K.names)
    if isinstance(K, ExtensionField):
        return [K.gen_name]
    return []


def field_base(K):
    if isinstance(K, RationalFunctionField):
        return K.base
    if isinstance(K, ExtensionField):
        return PrimeField(K.characteristic)
    return K


def decompose(K, x):
    """Numerator and denominator as {exponent: base coefficient} dictionaries."""
    x = K(x)
    if isinstance(K, RationalFunctionField):
        return x.num.terms, x.den.terms
    if isinstance(K, ExtensionField):
        base = field_base(K)
        return {(i,): base(c) for i, c in enumerate(x.c) if c}, {(0,): base(1)}
    return ({(): x} if x else {}), {(): K.one}


def monomial_value(K, exp) -> object:
    gens = field_generators(K)
    out = K.one
    for n, a in zip(gens, exp):
        if a:
            out = out * K.generators()[n] ** a
    return out


def substitute_element(K, x, images: dict):
    """Apply the K-endomorphism determined by generator images to x."""
    x = K(x)
    gens = field_generators(K)
    if not gens:
        return x
    num, den = decompose(K, x)
    vals = [K(images[g]) for g in gens]
    cache: dict = {}

    def evalp(terms):
        total = K.zero
        for e, c in terms.items():
            t = K(c)
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    p = cache.get(key)
                    if p is None:
                        p = cache[key] = vals[i] ** a
                    t = t * p
            total = total + t
        return total

    n = evalp(num)
    d = evalp(den)
    return n / d


# ------------------------------------------------------------------ presentations

class Presentation:
    """Base class; subclasses implement one of the three styles."""

    style = "generator"
    system_kinds: tuple = ()
    description = "?"

    def bind(self, hs: "HSField"):
        """Validate against the field and system; called once by HSField."""
        kind = hs.sys.meta.get("builtin")
        if self.system_kinds and kind not in self.system_kinds:
            raise PresentationError(
                f"{self.description} operators need a {' or '.join(self.system_kinds)} system, got {hs.sys.name}"
            )

    def param_values(self) -> dict:
        return {}


class ZeroOperators(Presentation):
    """E_n(x) = s_n(x): every operator beyond level 0 is trivial."""

    style = "direct"
    description = "zero"

    def direct(self, hs, x, n):
        return hs.algebra(n).scalar(hs.K(x))


class DividedPowers(Presentation):
    """D_{i,k}(t_i^a) = binom(a, k) t_i^{a-k} on a p-basis t_1..t_e (HSD_e).

    ``overrides`` maps (multi-index, generator) to a replacement value of
    D_multi-index(generator); it exists to build deliberately broken tables.
    """

    style = "linear"
    system_kinds = ("HSD",)
    description = "divided-power"

    def __init__(self, on, overrides=None):
        self.on = [on] if isinstance(on, str) else list(on)
        self.overrides = dict(overrides or {})

    def bind(self, hs):
        super().bind(hs)
        e = hs.sys.meta["e"]
        if len(self.on) != e:
            raise PresentationError(f"HSD({e}) needs {e} divided-power variables, got {len(self.on)}")
        gens = field_generators(hs.K)
        for t in self.on:
            if t not in gens:
                raise PresentationError(f"{t!r} is not a generator of {hs.K.name}")
        self.slot = [gens.index(t) for t in self.on]
        self.idx = [_multi_indices(e, n) for n in range(hs.sys.cap + 1)]

    def mono_image(self, hs, exp, n):
        K = hs.K
        out = []
        gens = field_generators(K)
        for beta in self.idx[n]:
            coef = 1
            new = list(exp)
            for i, b in enumerate(beta):
                a = exp[self.slot[i]]
                coef *= comb(a, b)
                new[self.slot[i]] = a - b
            val = K(coef) * monomial_value(K, new) if coef else K.zero
            if sum(exp) == 1 and any(beta):
                g = gens[exp.index(1)]
                key = (beta if len(beta) > 1 else beta[0], g)
                if key in self.overrides:
                    val = K(self.overrides[key])
            out.append(val)
        return out


class Derivations(Presentation):
    """Commuting derivations d_1..d_e in characteristic zero; D_a = d^a / a!."""

    style = "direct"
    system_kinds = ("HSD",)
    description = "derivation"

    def __init__(self, images):
        """``images[i]`` maps generator names to d_i(generator)."""
        if isinstance(images, dict):
            images = [images]
        self.images = [dict(d) for d in images]

    def bind(self, hs):
        super().bind(hs)
        e = hs.sys.meta["e"]
        if len(self.images) != e:
            raise PresentationError(f"HSD({e}) needs {e} derivations, got {len(self.images)}")
        p = hs.K.characteristic
        if p and hs.sys.cap >= p:
            raise PresentationError("d^n/n! needs n! invertible: use divided powers in characteristic p")
        gens = field_generators(hs.K)
        for d in self.images:
            for g in d:
                if g not in gens:
                    raise PresentationError(f"{g!r} is not a generator of {hs.K.name}")
        self.vals = [{g: hs.K(d.get(g, 0)) for g in gens} for d in self.images]
        self.idx = [_multi_indices(e, n) for n in range(hs.sys.cap + 1)]
        self._cache: dict = {}

    def derive(self, hs, i, x):
        K = hs.K
        if not isinstance(K, RationalFunctionField):
            return K.zero
        total = K.zero
        for g, v in self.vals[i].items():
            if v:
                total = total + K(x).diff(g) * v
        return total

    def iterate(self, hs, alpha, x):
        key = (alpha, x)
        r = self._cache.get(key)
        if r is not None:
            return r
        if not any(alpha):
            r = hs.K(x)
        else:
            i = next(k for k, a in enumerate(alpha) if a)
            prev = list(alpha)
            prev[i] -= 1
            r = self.derive(hs, i, self.iterate(hs, tuple(prev), x))
        self._cache[key] = r
        return r

    def direct(self, hs, x, n):
        out = []
        for alpha in self.idx[n]:
            f = 1
            for a in alpha:
                f *= factorial(a)
            out.append(self.iterate(hs, alpha, x) / hs.K(f))
        return out


class ExplicitImages(Presentation):
    """Generator style: images of each generator in D_cap(K) (basis coordinates).

    ``images[g]`` lists the coordinates of E_cap(g); missing trailing entries
    are zero and coordinate 0 defaults to g itself when omitted.  Lower levels
    use the transition maps.
    """

    style = "generator"
    description = "explicit"

    def __init__(self, images, params=None, system_kinds=()):
        self.images = {g: list(v) for g, v in images.items()}
        self.params = dict(params or {})
        self.system_kinds = tuple(system_kinds)

    def param_values(self):
        return self.params

    def bind(self, hs):
        super().bind(hs)
        K = hs.K
        gens = field_generators(K)
        for g in self.images:
            if g not in gens:
                raise PresentationError(f"{g!r} is not a generator of {K.name}")
        top = hs.sys.rank(hs.sys.cap)
        self.top = {}
        for g in gens:
            vals = self.images.get(g)
            if vals is None:
                v = hs.algebra(hs.sys.cap).scalar(K.generators()[g])
            else:
                if len(vals) > top:
                    raise PresentationError(f"{len(vals)} coordinates given for {g}, D_{hs.sys.cap} has rank {top}")
                v = [K(a) for a in vals] + [K.zero] * (top - len(vals))
            self.top[g] = v

    def gen_image(self, hs, g, n):
        return hs.project(self.top[g], hs.sys.cap, n)


class HigherFromFirst(Presentation):
    """HigherD(1) from the single operator d_1 via d_n = d_1^n / n! (char 0)."""

    style = "generator"
    system_kinds = ("HigherD",)
    description = "higher"

    def __init__(self, c, first):
        self.c = c
        self.first = dict(first)

    def param_values(self):
        return {"c": self.c}

    def bind(self, hs):
        super().bind(hs)
        if hs.sys.meta["e"] != 1:
            raise PresentationError("the derived presentation is for HigherD(1)")
        p = hs.K.characteristic
        if p and hs.sys.cap >= p:
            raise PresentationError("d_1^n / n! needs n! invertible")
        K = hs.K
        gens = field_generators(K)
        for g in self.first:
            if g not in gens:
                raise PresentationError(f"{g!r} is not a generator of {K.name}")
        level1 = {g: [K.generators()[g], K(self.first.get(g, 0))] for g in gens}
        # a level-1 structure computes d_1 on any element
        self._lvl1 = HSField(K, hs.sys.truncate(1), ExplicitImages(level1, {"c": self.c}))
        cap = hs.sys.cap
        self.top = {}
        for g in gens:
            coords = [K.generators()[g]]
            cur = K.generators()[g]
            for n in range(1, cap + 1):
                cur = self._lvl1.E(cur, 1)[1]
                coords.append(cur / K(factorial(n)))
            self.top[g] = coords

    def gen_image(self, hs, g, n):
        return hs.project(self.top[g], hs.sys.cap, n)


class Endomorphisms(Presentation):
    """Endomorphisms tau_1..tau_e with sigma_alpha = tau_1^a1 o ... o tau_e^ae.

    ``images[i]`` maps generators to tau_i(generator).  The automorphism
    variant of End also needs ``inverses[i]``.
    """

    style = "direct"
    system_kinds = ("End",)
    description = "endomorphism"

    def __init__(self, images, inverses=None):
        if isinstance(images, dict):
            images = [images]
        self.images = [dict(d) for d in images]
        self.inverses = [dict(d) for d in inverses] if inverses else None

    def bind(self, hs):
        super().bind(hs)
        e = hs.sys.meta["e"]
        if len(self.images) != e:
            raise PresentationError(f"End({e}) needs {e} endomorphisms, got {len(self.images)}")
        K = hs.K
        gens = field_generators(K)
        full = lambda d: {g: K(d[g]) if g in d else K.generators()[g] for g in gens}
        for d in self.images + (self.inverses or []):
            for g in d:
                if g not in gens:
                    raise PresentationError(f"{g!r} is not a generator of {K.name}")
        self.fwd = [full(d) for d in self.images]
        self.auto = bool(hs.sys.meta.get("auto"))
        if self.auto:
            if self.inverses is None or len(self.inverses) != e:
                raise PresentationError("the automorphism End system needs inverse images")
            self.bwd = [full(d) for d in self.inverses]
        self.idx = hs.sys.meta["indices"]
        self._cache: dict = {}

    def sigma(self, hs, alpha, x):
        key = (alpha, x)
        r = self._cache.get(key)
        if r is not None:
            return r
        if not any(alpha):
            r = hs.K(x)
        else:
            i = next(k for k, a in enumerate(alpha) if a)
            prev = list(alpha)
            if alpha[i] > 0:
                prev[i] -= 1
                imgs = self.fwd[i]
            else:
                prev[i] += 1
                imgs = self.bwd[i]
            r = substitute_element(hs.K, self.sigma(hs, tuple(prev), x), imgs)
        self._cache[key] = r
        return r

    def direct(self, hs, x, n):
        return [self.sigma(hs, tuple(a), x) for a in self.idx[n]]


class Frobenius(Endomorphisms):
    """End(1) with sigma the p-th power map."""

    description = "frobenius"

    def __init__(self):
        super().__init__([{}])

    def bind(self, hs):
        K = hs.K
        if not K.characteristic:
            raise PresentationError("Frobenius needs positive characteristic")
        if hs.sys.meta.get("e") != 1 or hs.sys.meta.get("auto"):
            raise PresentationError("Frobenius is presented on End(1)")
        self.images = [{g: K.generators()[g] ** K.characteristic for g in field_generators(K)}]
        super().bind(hs)


class DiffDiffOperators(Presentation):
    """One HS derivation and one commuting endomorphism on the DiffDiff system.

    Coordinate (i, j) of E_n(x) is sigma^i(D_j(x)).
    """

    style = "direct"
    system_kinds = ("DiffDiff",)
    description = "difference-differential"

    def __init__(self, hsd: Presentation, endo: dict):
        self.hsd = hsd
        self.endo = dict(endo)

    def bind(self, hs):
        super().bind(hs)
        from .hssystem import builtin

        self._hsd_field = HSField(hs.K, builtin("HSD", hs.sys.cap), self.hsd)
        gens = field_generators(hs.K)
        self.imgs = {g: hs.K(self.endo[g]) if g in self.endo else hs.K.generators()[g] for g in gens}
        self.idx = hs.sys.meta["indices"]
        self._cache: dict = {}

    def sig(self, hs, i, x):
        key = (i, x)
        r = self._cache.get(key)
        if r is None:
            r = hs.K(x) if i == 0 else substitute_element(hs.K, self.sig(hs, i - 1, x), self.imgs)
            self._cache[key] = r
        return r

    def direct(self, hs, x, n):
        top = self._hsd_field.E(x, n)
        return [self.sig(hs, i, top[j]) for i, j in map(tuple, self.idx[n])]


# ------------------------------------------------------------------ HS field

class HSField:
    """(K, E): a field with evaluators E_n into D_n(K) for n up to the cap."""

    def __init__(self, K, sys: HSSystem, presentation: Presentation, params=None):
        self.K = K
        self.sys = sys
        self.presentation = presentation
        vals = dict(presentation.param_values())
        vals.update(params or {})
        missing = [p for p in sys.params if p not in vals]
        if missing:
            raise PresentationError(f"values for the parameters {missing} are required")
        self.params = {k: K(v) for k, v in vals.items()}
        self._cache: dict = {}
        self._gen_pow: dict = {}
        presentation.bind(self)

    @property
    def cap(self) -> int:
        return self.sys.cap

    def __repr__(self):
        return f"HSField({self.K.name}, {self.sys.name}, {self.presentation.description})"

    def algebra(self, n: int):
        return self.sys.scheme(n).over(self.K, self.params)

    def project(self, v, m: int, n: int):
        """pi(m, n) applied to a coordinate vector over K."""
        if m == n:
            return list(v)
        if self.sys.is_prefix_projection(m, n):
            return list(v[: self.sys.rank(n)])
        M = self.sys.pi(m, n).specialized(self.K, self.params)
        return [sum((a * b for a, b in zip(row, v) if a and b), self.K.zero) for row in M]

    def delta_matrix(self, m: int, n: int):
        key = ("delta", m, n)
        M = self._cache.get(key)
        if M is None:
            M = self.sys.delta(m, n).specialized(self.K, self.params)
            self._cache[key] = M
        return M

    # evaluators ---------------------------------------------------------
    def E(self, x, n: int) -> tuple:
        """E_n(x) as a coordinate tuple in the basis of D_n."""
        if not 0 <= n <= self.cap:
            raise ValueError(f"level {n} is outside the cap 0..{self.cap}")
        K = self.K
        x = K(x)
        key = (n, x)
        r = self._cache.get(key)
        if r is not None:
            return r
        pres = self.presentation
        if n == 0:
            r = (x,)
        elif pres.style == "direct":
            r = tuple(pres.direct(self, x, n))
        else:
            num, den = decompose(K, x)
            top = self._poly_image(num, n)
            if den != {self._zero_exp(): field_base(K).one} and not (len(den) == 1 and self._is_one_term(den)):
                inv = invert_element(FFElement(self.algebra(n), tuple(self._poly_image(den, n))))
                top = self.algebra(n).mul(top, list(inv.coeffs))
            r = tuple(K(c) for c in top)
        self._cache[key] = r
        return r

    def _zero_exp(self):
        return (0,) * len(field_generators(self.K))

    def _is_one_term(self, den):
        (e, c), = den.items()
        return not any(e) and c == 1

    def _poly_image(self, terms, n):
        alg = self.algebra(n)
        K = self.K
        out = [K.zero] * alg.rank
        for e, c in terms.items():
            img = self._mono_image(e, n)
            c = K(c)
            out = [a + c * b if b else a for a, b in zip(out, img)]
        return out

    def _mono_image(self, e, n):
        key = ("mono", n, e)
        r = self._cache.get(key)
        if r is not None:
            return r
        pres = self.presentation
        alg = self.algebra(n)
        if pres.style == "linear":
            r = pres.mono_image(self, e, n)
        else:
            r = alg.one()
            gens = field_generators(self.K)
            for g, a in zip(gens, e):
                if a:
                    r = alg.mul(r, self._gen_power(g, a, n))
            r = [self.K(c) for c in r]
        self._cache[key] = r
        return r

    def _gen_power(self, g, a, n):
        key = (g, a, n)
        r = self._gen_pow.get(key)
        if r is None:
            if a == 1:
                r = [self.K(c) for c in self.presentation.gen_image(self, g, n)]
            else:
                r = self.algebra(n).mul(self._gen_power(g, a - 1, n), self._gen_power(g, 1, n))
            self._gen_pow[key] = r
        return r

    def operator(self, index: int, x, n: int | None = None):
        """Coordinate ``index`` of E_n(x) (n defaults to the cap)."""
        n = self.cap if n is None else n
        return self.E(x, n)[index]

    def E_composed(self, x, m: int, n: int) -> list:
        """E_(m,n)(x) = D_m(E_n)(E_m(x)) in the basis of D_m(D_n)."""
        outer = self.E(x, m)
        out = []
        for a in outer:
            out.extend(self.E(a, n))
        return out

    def render(self, x) -> str:
        return self.K.render(x)


def make_hs_field(K, sys: HSSystem, presentation: Presentation, params=None) -> HSField:
    return HSField(K, sys, presentation, params)


# ------------------------------------------------------------------ checks

def default_samples(K) -> list:
    """Generators, their pairwise products, inverses of generators, and 1."""
    gens = [K.generators()[g] for g in field_generators(K)]
    out = list(gens)
    for a, b in combinations_with_replacement(range(len(gens)), 2):
        out.append(gens[a] * gens[b])
    out += [1 / g for g in gens if g]
    out.append(K.one)
    seen = []
    for x in out:
        if x not in seen:
            seen.append(x)
    return seen


def _vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def verify_dring(hs: HSField, samples=None, cap: int | None = None) -> Verdict:
    """E_0 = id, additivity, multiplicativity and pi-compatibility on samples."""
    K = hs.K
    cap = hs.cap if cap is None else min(cap, hs.cap)
    samples = [K(s) for s in (samples if samples is not None else default_samples(K))]
    r = hs.render
    for x in samples:
        if list(hs.E(x, 0)) != [x]:
            return Verdict.fail("E_0-identity", level=0, inputs=[r(x)])
    for n in range(1, cap + 1):
        alg = hs.algebra(n)
        for i, x in enumerate(samples):
            for y in samples[i:]:
                if list(hs.E(x + y, n)) != _vec_add(hs.E(x, n), hs.E(y, n)):
                    return Verdict.fail("additivity", level=n, inputs=[r(x), r(y)])
                lhs = list(hs.E(x * y, n))
                rhs = [K(c) for c in alg.mul(list(hs.E(x, n)), list(hs.E(y, n)))]
                if lhs != rhs:
                    k = next(k for k in range(len(lhs)) if lhs[k] != rhs[k])
                    return Verdict.fail(
                        "multiplicativity",
                        level=n,
                        inputs=[r(x), r(y)],
                        coordinate=alg.labels[k],
                        lhs=r(lhs[k]),
                        rhs=r(rhs[k]),
                    )
        for m in range(n, cap + 1):
            for x in samples:
                if hs.project(hs.E(x, m), m, n) != list(hs.E(x, n)):
                    return Verdict.fail("pi-compatibility", level=[m, n], inputs=[r(x)])
    return OK


def verify_iterative(hs: HSField, samples=None, cap: int | None = None) -> Verdict:
    """Delta(m,n) o E_{m+n} = D_m(E_n) o E_m on samples for m + n <= cap."""
    K = hs.K
    cap = hs.cap if cap is None else min(cap, hs.cap)
    samples = [K(s) for s in (samples if samples is not None else default_samples(K))]
    for total in range(2, cap + 1):
        for m in range(1, total):
            n = total - m
            M = hs.delta_matrix(m, n)
            ln = hs.sys.rank(n)
            for x in samples:
                src = hs.E(x, total)
                lhs = [sum((a * b for a, b in zip(row, src) if a and b), K.zero) for row in M]
                rhs = hs.E_composed(x, m, n)
                if lhs != rhs:
                    k = next(k for k in range(len(lhs)) if lhs[k] != rhs[k])
                    so = hs.sys.scheme(m).labels[k // ln]
                    si = hs.sys.scheme(n).labels[k % ln]
                    return Verdict.fail(
                        "iterativity",
                        m=m,
                        n=n,
                        input=hs.render(x),
                        outer=so,
                        inner=si,
                        lhs=hs.render(lhs[k]),
                        rhs=hs.render(rhs[k]),
                    )
    return OK


def check_higherD_rules(hs: HSField, samples=None, cap: int | None = None) -> Verdict:
    """Twisted product rule, iteration rule and sigma-power expansion.

    The outcome is cross-validated: the two rules hold exactly when E is a
    ring map and iterative, so a disagreement with ``verify_dring`` plus
    ``verify_iterative`` is itself reported.
    """
    if hs.sys.meta.get("builtin") != "HigherD":
        raise PresentationError("check_higherD_rules needs a HigherD system")
    K = hs.K
    cap = hs.cap if cap is None else min(cap, hs.cap)
    samples = [K(s) for s in (samples if samples is not None else default_samples(K))]
    e = hs.sys.meta["e"]
    idx = _multi_indices(e, cap)
    pos = {a: k for k, a in enumerate(idx)}
    cs = [hs.params[p] for p in hs.sys.params]
    r = hs.render

    def d(J, x):
        return hs.E(x, cap)[pos[J]]

    def unit(i):
        return tuple(1 if k == i else 0 for k in range(e))

    def sigma(i, x):
        return cs[i] * d(unit(i), x) + x

    def sigma_pow(Kidx, x):
        # sigma^K = sigma_1^K1 o ... o sigma_e^Ke, the last factor acts first
        for i in range(e - 1, -1, -1):
            for _ in range(Kidx[i]):
                x = sigma(i, x)
        return x

    rules = OK
    for x in samples:
        for y in samples:
            for I in idx:
                lhs = d(I, x * y)
                rhs = K.zero
                for J in product(*[range(a + 1) for a in I]):
                    Kk = tuple(a - b for a, b in zip(I, J))
                    rhs = rhs + sigma_pow(Kk, d(J, x)) * d(Kk, y)
                if lhs != rhs:
                    rules = Verdict.fail("product-rule", index=list(I), inputs=[r(x), r(y)], lhs=r(lhs), rhs=r(rhs))
                    break
            if not rules:
                break
        if not rules:
            break
    if rules:
        for x in samples:
            for I in idx:
                for J in idx:
                    IJ = tuple(a + b for a, b in zip(I, J))
                    if sum(IJ) > cap:
                        continue
                    lhs = d(I, d(J, x))
                    coef = 1
                    for a, b in zip(I, J):
                        coef *= comb(a + b, a)
                    rhs = K(coef) * d(IJ, x)
                    if lhs != rhs:
                        rules = Verdict.fail("iteration-rule", I=list(I), J=list(J), input=r(x), lhs=r(lhs), rhs=r(rhs))
                        break
                if not rules:
                    break
            if not rules:
                break
    if rules:
        for x in samples:
            for i in range(e):
                for n in range(cap + 1):
                    lhs = x
                    for _ in range(n):
                        lhs = sigma(i, lhs)
                    rhs = K.zero
                    for k in range(n + 1):
                        rhs = rhs + cs[i] ** k * K(factorial(n) // factorial(n - k)) * d(tuple(k if t == i else 0 for t in range(e)), x)
                    if lhs != rhs:
                        rules = Verdict.fail("sigma-power", n=n, variable=i + 1, input=r(x), lhs=r(lhs), rhs=r(rhs))
                        break
                if not rules:
                    break
            if not rules:
                break
    axioms = bool(verify_dring(hs, samples, cap)) and bool(verify_iterative(hs, samples, cap))
    if bool(rules) != axioms:
        return Verdict.fail(
            "cross-validation",
            rules="ok" if rules else rules.kind,
            axioms="ok" if axioms else "failed",
        )
    return rules
