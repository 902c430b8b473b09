"""Buchberger's algorithm and ideal operations.

Pairs are chosen by the sugar strategy (ties broken by the lcm under the
ring order, then by pair indices) and pruned with the Gebauer-Moeller update,
which applies both Buchberger criteria.  Output bases are reduced, monic and
sorted by descending leading monomial, so they are canonical for the ideal
and the order.
"""
from __future__ import annotations

from .poly import Poly, PolyRing

__all__ = [
    "GroebnerBudgetExceeded",
    "MissingBasis",
    "groebner_basis",
    "reduce_poly",
    "Ideal",
    "normal_form",
    "eliminate",
    "ideal_intersection",
]

class GroebnerBudgetExceeded(RuntimeError):
    """The pair budget ran out before Buchberger's algorithm finished."""

class MissingBasis(RuntimeError):
    """normal_form was asked for on an ideal without a cached basis."""

# ------------------------------------------------------------ monomials

def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))

def _lcm(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))

def _disjoint(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))

# ------------------------------------------------------------ reduction

def _reduce_terms(p: dict, basis, key, full=True) -> dict:
    """Remainder of p modulo basis entries (lm, lc, terms).

    With ``full`` every term is reduced, otherwise only the leading one.
    """
    p = dict(p)
    rem: dict = {}
    while p:
        e = max(p, key=key)
        c = p[e]
        for lm, lc, terms in basis:
            if _divides(lm, e):
                f = c / lc
                s = tuple(a - b for a, b in zip(e, lm))
                for ge, gc in terms.items():
                    te = tuple(a + b for a, b in zip(ge, s))
                    v = p.get(te)
                    v = -f * gc if v is None else v - f * gc
                    if v:
                        p[te] = v
                    else:
                        p.pop(te, None)
                p.pop(e, None)
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[e] = c
            del p[e]
    return rem

def reduce_poly(p: Poly, basis: list[Poly]) -> Poly:
    """Full multivariate division remainder of p by ``basis`` (ring order)."""
    ring = p.ring
    key = ring.key
    entries = []
    for g in basis:
        if g:
            lm = g.lm()
            entries.append((lm, g.terms[lm], g.terms))
    return Poly(ring, _reduce_terms(p.terms, entries, key))

# ------------------------------------------------------------ Buchberger

def groebner_basis(gens: list[Poly], ring: PolyRing | None = None, max_pairs: int | None = None) -> list[Poly]:
    """Reduced Gröbner basis of the ideal generated by ``gens`` in ``ring``.

    ``ring`` fixes the monomial order; the generators are moved into it by
    variable name.  ``max_pairs`` bounds the number of S-pairs reduced.
    """
    if ring is None:
        if not gens:
            return []
        ring = gens[0].ring
    key = ring.key
    polys: list[dict] = []
    lms: list[tuple] = []
    sugars: list[int] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []

    def add(terms: dict, sugar: int):
        lm = max(terms, key=key)
        inv = 1 / terms[lm]
        if inv != 1:
            terms = {e: c * inv for e, c in terms.items()}
        polys.append(terms)
        lms.append(lm)
        sugars.append(sugar)
        update(len(polys) - 1)

    def update(h: int):
        nonlocal G, B
        lmh = lms[h]
        C = list(G)
        D: list[int] = []
        while C:
            i = C.pop(0)
            lcm_ih = _lcm(lms[i], lmh)
            if _disjoint(lms[i], lmh) or not any(
                _divides(_lcm(lms[j], lmh), lcm_ih) for j in C + D
            ):
                D.append(i)
        E = [i for i in D if not _disjoint(lms[i], lmh)]
        kept = []
        for i, j in B:
            l_ij = _lcm(lms[i], lms[j])
            if (
                _divides(lmh, l_ij)
                and _lcm(lms[i], lmh) != l_ij
                and _lcm(lms[j], lmh) != l_ij
            ):
                continue
            kept.append((i, j))
        B = kept + [(i, h) for i in E]
        G = [g for g in G if not _divides(lmh, lms[g])] + [h]

    def active():
        return [(lms[g], polys[g][lms[g]], polys[g]) for g in G]

    for f in gens:
        f = f if f.ring is ring else f.change_ring(ring)
        if not f:
            continue
        r = _reduce_terms(f.terms, active(), key)
        if r:
            add(r, f.total_degree())

    def pair_sugar(i, j):
        l = _lcm(lms[i], lms[j])
        d = sum(l)
        return max(sugars[i] - sum(lms[i]), sugars[j] - sum(lms[j])) + d

    done = 0
    while B:
        best = min(
            B, key=lambda ij: (pair_sugar(*ij), key(_lcm(lms[ij[0]], lms[ij[1]])), ij)
        )
        B.remove(best)
        done += 1
        if max_pairs is not None and done > max_pairs:
            raise GroebnerBudgetExceeded(f"more than {max_pairs} S-pairs")
        i, j = best
        l = _lcm(lms[i], lms[j])
        si = tuple(a - b for a, b in zip(l, lms[i]))
        sj = tuple(a - b for a, b in zip(l, lms[j]))
        s: dict = {}
        for e, c in polys[i].items():
            s[tuple(a + b for a, b in zip(e, si))] = c
        for e, c in polys[j].items():
            te = tuple(a + b for a, b in zip(e, sj))
            v = s.get(te)
            v = -c if v is None else v - c
            if v:
                s[te] = v
            else:
                s.pop(te, None)
        if not s:
            continue
        r = _reduce_terms(s, active(), key)
        if r:
            add(r, pair_sugar(i, j))
        if any(not any(lms[g]) for g in G):
            # the unit ideal: stop early
            return [ring.one]

    # G is minimal; inter-reduce tails and sort
    basis = [(lms[g], polys[g]) for g in G]
    if any(not any(lm) for lm, _ in basis):
        return [ring.one]
    out = []
    for idx, (lm, terms) in enumerate(basis):
        others = [(l2, t2[l2], t2) for k, (l2, t2) in enumerate(basis) if k != idx]
        tail = dict(terms)
        lead = tail.pop(lm)
        rest = _reduce_terms(tail, others, key)
        rest[lm] = lead
        out.append(Poly(ring, rest))
    out.sort(key=lambda g: key(g.lm()), reverse=True)
    return out

# ------------------------------------------------------------ ideals

class Ideal:
    """An ideal of a polynomial ring with lazily cached reduced Gröbner bases."""

    def __init__(self, ring: PolyRing, gens, basis: list[Poly] | None = None):
        self.ring = ring
        self.gens = tuple(ring(g) if not isinstance(g, Poly) or g.ring is not ring else g for g in gens)
        self.gens = tuple(g for g in self.gens if g)
        self._bases: dict = {}
        if basis is not None:
            self._bases[ring.order] = list(basis)

    def __repr__(self):
        return f"Ideal({[g.render() for g in self.gens]})"

    @property
    def has_basis(self) -> bool:
        return self.ring.order in self._bases

    def groebner(self, order=None, max_pairs: int | None = None) -> list[Poly]:
        """Reduced Gröbner basis for ``order`` (default: the ring order)."""
        ring = self.ring if order is None else self.ring.with_order(order)
        b = self._bases.get(ring.order)
        if b is None:
            b = groebner_basis(list(self.gens), ring, max_pairs=max_pairs)
            self._bases[ring.order] = b
        return b

    basis = property(lambda self: self.groebner())

    def with_basis(self) -> "Ideal":
        self.groebner()
        return self

    def reduce(self, p: Poly) -> Poly:
        if p.ring.names != self.ring.names:
            p = p.change_ring(self.ring)
        elif p.ring is not self.ring:
            p = Poly(self.ring, p.terms)
        return reduce_poly(p, self.groebner())

    def contains(self, p: Poly) -> bool:
        return not self.reduce(p)

    __contains__ = contains

    def contains_all(self, polys) -> bool:
        return all(self.contains(p) for p in polys)

    def first_outside(self, polys):
        """Index and normal form of the first polynomial not in the ideal."""
        for k, p in enumerate(polys):
            r = self.reduce(p)
            if r:
                return k, r
        return None

    def issubset(self, other: "Ideal") -> bool:
        return other.contains_all(self.gens)

    def same_as(self, other: "Ideal") -> bool:
        return self.issubset(other) and other.issubset(self)

    def is_unit(self) -> bool:
        b = self.groebner()
        return len(b) == 1 and b[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def __add__(self, other) -> "Ideal":
        extra = other.gens if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.ring, self.gens + tuple(self.ring(g) for g in extra))

    def dimension(self) -> int:
        """Krull dimension of R/I from a maximal independent set of leading monomials."""
        if self.is_unit():
            return -1
        lms = [g.lm() for g in self.groebner()]
        supports = [frozenset(i for i, x in enumerate(e) if x) for e in lms]
        n = self.ring.nvars
        best = 0

        def search(start, chosen):
            nonlocal best
            if len(chosen) + (n - start) <= best:
                return
            if start == n:
                best = max(best, len(chosen))
                return
            cand = chosen | {start}
            if not any(s <= cand for s in supports):
                search(start + 1, cand)
            search(start + 1, chosen)

        search(0, frozenset())
        return best

    def eliminate(self, drop, target: PolyRing | None = None, max_pairs: int | None = None) -> "Ideal":
        """I ∩ k[kept variables] as an ideal of ``target`` (kept variables by default)."""
        return eliminate(self, drop, target, max_pairs=max_pairs)

    def radical_contains(self, p: Poly, max_pairs: int | None = None) -> bool:
        """Radical membership by the Rabinowitsch trick."""
        p = self.ring(p)
        z = "_rab"
        while z in self.ring.index:
            z += "_"
        big = PolyRing(self.ring.field, self.ring.names + (z,), "grevlex")
        gens = [g.change_ring(big) for g in self.gens]
        gens.append(big.one - big.var(z) * p.change_ring(big))
        b = groebner_basis(gens, big, max_pairs=max_pairs)
        return len(b) == 1 and b[0].is_constant()

    def render(self) -> list[str]:
        return [g.render() for g in self.groebner()]

def normal_form(p: Poly, I: Ideal) -> Poly:
    """Remainder of p modulo the cached basis of I; raises if none is cached."""
    if not I.has_basis:
        raise MissingBasis("normal_form requires a cached Gröbner basis; call groebner() first")
    return I.reduce(p)

def eliminate(I: Ideal, drop, target: PolyRing | None = None, max_pairs: int | None = None) -> Ideal:
    """Elimination ideal using a block order (grevlex on dropped, then kept)."""
    ring = I.ring
    drop_names = [ring.names[d] if isinstance(d, int) else d for d in drop]
    drop_set = set(drop_names)
    for d in drop_names:
        if d not in ring.index:
            raise KeyError(f"unknown variable {d!r}")
    kept = [n for n in ring.names if n not in drop_set]
    if target is None:
        target = PolyRing(ring.field, kept, "grevlex")
    if not drop_names:
        return Ideal(target, [g.change_ring(target) for g in I.gens])
    ordered = [n for n in ring.names if n in drop_set] + kept
    block = PolyRing(ring.field, ordered, ("block", len(drop_names)))
    b = groebner_basis([g.change_ring(block) for g in I.gens], block, max_pairs=max_pairs)
    k = len(drop_names)
    keep = [g for g in b if not any(any(e[:k]) for e in g.terms)]
    polys = [g.change_ring(target) for g in keep]
    out = Ideal(target, polys)
    if target.order == "grevlex" and target.names == tuple(kept):
        # the kept part of a block basis is already reduced for grevlex on the kept block
        out._bases["grevlex"] = sorted(polys, key=lambda g: target.key(g.lm()), reverse=True)
    return out

def ideal_intersection(ring: PolyRing, F, G) -> list[Poly]:
    """Basis of (F) ∩ (G) via the auxiliary variable s: s·F + (1-s)·G."""
    s = "_s"
    while s in ring.index:
        s += "_"
    big = PolyRing(ring.field, (s,) + ring.names, ("block", 1))
    sv = big.var(s)
    gens = [sv * f.change_ring(big) for f in F] + [(big.one - sv) * g.change_ring(big) for g in G]
    b = groebner_basis(gens, big)
    out = [g.change_ring(ring) for g in b if not any(e[0] for e in g.terms)]
    return groebner_basis(out, ring) if len(out) > 1 else [g.monic() for g in out]
