"""Algebraic jet fibers, the maps e_r, and Hasse-Schmidt jet fibers at points.

Jets at a point p are linear functionals on the centered monomials of degree
1..m that kill the truncated multiples of the defining equations.  For a
tower Z and a point a, the level-n HS jet fiber is the subspace of
tau_n(Jet^m(X)_a) cut out by the images of the jets of Z_n at the level-n
point: coordinate (k, u) of the image of gamma is gamma applied to the
b_k-component of e_n(u).  Coordinates are ordered basis-index major, like
prolongation coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement

from .exactalg import PolyRing
from .exactalg.linalg import kernel_basis, rank, rref, same_span, solve, span_basis
from .hsring import HSField
from .prolong import PointError
from .subscheme import HSSubscheme
from .verdict import OK, Verdict

__all__ = [
    "JetFiber",
    "HSJetFiber",
    "ExpMapData",
    "MembershipResult",
    "jet_fiber",
    "prolong_linear",
    "e_r_map",
    "hs_jet_membership",
    "hs_jet_fiber",
    "good_locus",
    "jets_determine",
]


def _monomials(nvars: int, m: int, ring: PolyRing) -> list:
    """Exponents of degree 1..m ordered by degree, then descending ring order."""
    out = []
    for d in range(1, m + 1):
        level = []
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            level.append(tuple(e))
        level.sort(key=ring.key, reverse=True)
        out.extend(level)
    return out


def _mono_label(ring: PolyRing, e) -> str:
    parts = []
    for n, x in zip(ring.names, e):
        if x:
            parts.append(n if x == 1 else f"{n}^{x}")
    return "*".join(parts) or "1"


@dataclass
class JetFiber:
    """m_p / m_p^(m+1) of V(gens) at p, with its dual (the jet fiber)."""

    ring: PolyRing
    point: tuple
    m: int
    monomials: list
    relations: list
    pivots: list
    dual: list

    @property
    def field(self):
        return self.ring.field

    @property
    def size(self) -> int:
        return len(self.monomials)

    @property
    def dim(self) -> int:
        return self.size - len(self.relations)

    @property
    def basis(self) -> list:
        """Indices of the monomials forming a basis of the quotient V."""
        piv = set(self.pivots)
        return [i for i in range(self.size) if i not in piv]

    @property
    def labels(self) -> list[str]:
        return [_mono_label(self.ring, e) for e in self.monomials]

    def basis_labels(self) -> list[str]:
        lab = self.labels
        return [lab[i] for i in self.basis]

    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.monomials)}

    def reduce(self, v) -> list:
        """Normal form of a monomial-coefficient vector modulo the relations."""
        v = list(v)
        for row, pc in zip(self.relations, self.pivots):
            c = v[pc]
            if c:
                v = [a - c * b if b else a for a, b in zip(v, row)]
        return v

    def coords(self, v) -> list:
        r = self.reduce(v)
        return [r[i] for i in self.basis]

    def contains(self, lam) -> bool:
        """Does the functional lam (values on monomials) kill every relation?"""
        K = self.field
        return all(not sum((a * K(b) for a, b in zip(row, lam) if a), K.zero) for row in self.relations)

    def dump(self) -> dict:
        r = self.field.render
        return {
            "point": [r(v) for v in self.point],
            "m": self.m,
            "monomials": self.labels,
            "basis": self.basis_labels(),
            "dim": self.dim,
            "relations": [[r(v) for v in row] for row in self.relations],
            "dual": [[r(v) for v in row] for row in self.dual],
        }


def jet_fiber(X, p, m: int) -> JetFiber:
    """Jet^m at p of V(gens); X is an AffineVariety, an Ideal or (ring, gens)."""
    if hasattr(X, "gens") and hasattr(X, "ring"):
        ring, gens = X.ring, list(X.gens)
    else:
        ring, gens = X
        gens = list(gens)
    K = ring.field
    p = tuple(K(v) for v in p)
    if len(p) != ring.nvars:
        raise PointError(f"expected {ring.nvars} coordinates, got {len(p)}")
    if m < 1:
        raise ValueError("jet order m must be at least 1")
    for g in gens:
        if g.evaluate(p):
            raise PointError(f"the point does not satisfy {g.render()}")
    shift = {n: ring.var(n) + v for n, v in zip(ring.names, p)}
    centered = [g.substitute(shift, ring) for g in gens]
    monos = _monomials(ring.nvars, m, ring)
    pos = {e: i for i, e in enumerate(monos)}
    multipliers = [ring.zero_exp] + [e for e in monos if sum(e) <= m - 1]
    rows = []
    for f in centered:
        for g in multipliers:
            h = f.mul_term(g, K.one)
            row = [K.zero] * len(monos)
            nz = False
            for e, c in h.terms.items():
                d = sum(e)
                if 1 <= d <= m:
                    row[pos[e]] = c
                    nz = True
            if nz:
                rows.append(row)
    R, piv = rref(rows, K, len(monos)) if rows else ([], [])
    dual = kernel_basis(R, K, len(monos)) if R else [[K.one if i == j else K.zero for i in range(len(monos))] for j in range(len(monos))]
    return JetFiber(ring, p, m, monos, R, piv, dual)


def prolong_linear(hs: HSField, equations, ncols: int, n: int) -> list:
    """Equations of tau_n of the linear space {v : A v = 0}.

    Coordinates of the prolongation are indexed k * ncols + d for basis
    index k of D_n; coefficients are pushed through E_n.
    """
    alg = hs.algebra(n)
    K = hs.K
    ell = alg.rank
    out = []
    for a in equations:
        rows = [[K.zero] * (ncols * ell) for _ in range(ell)]
        for d, ad in enumerate(a):
            if not ad:
                continue
            e = hs.E(ad, n)
            for k1, ek in enumerate(e):
                if not ek:
                    continue
                for k in range(ell):
                    for s, c in alg.table[k1][k]:
                        rows[s][k * ncols + d] += ek * c
        out.extend(r for r in rows if any(r))
    return out


def _solution_space(equations, ncols: int, K):
    if not equations:
        return [[K.one if i == j else K.zero for i in range(ncols)] for j in range(ncols)]
    return kernel_basis(equations, K, ncols)


# ------------------------------------------------------------------ tower context

class MembershipError(ValueError):
    """The point (or one of its lifts) is not on the tower."""


class _JetContext:
    """Shared per-(Z, a, m) data: level points, level jet fibers, e_r vectors."""

    def __init__(self, Z: HSSubscheme, a, m: int, lifts=None):
        self.Z = Z
        self.P = Z.prol
        self.hs = Z.prol.hs
        self.K = Z.prol.X.field
        self.a = tuple(self.K(v) for v in a)
        self.m = m
        self.lifts = {int(r): tuple(self.K(v) for v in q) for r, q in (lifts or {}).items()}
        self.X = Z.prol.X
        self.ambient = jet_fiber(self.X, self.a, m)
        self.P_size = self.ambient.size
        self._pts: dict = {}
        self._fib: dict = {}
        self._e: dict = {}
        top = max(self.lifts, default=0)
        if top > Z.cap:
            raise MembershipError(f"lift at level {top} exceeds the tower cap {Z.cap}")
        if self.point(0) != self.a:
            raise MembershipError("the lifts do not project to the base point")
        for r in range(top + 1):
            self._check_on(r)

    def point(self, r: int) -> tuple:
        q = self._pts.get(r)
        if q is not None:
            return q
        above = [s for s in self.lifts if s >= r]
        if r in self.lifts:
            q = self.lifts[r]
        elif above:
            s = min(above)
            q = self.P.pi_point(self.lifts[s], s, r)
        else:
            q = self.P.nabla(self.a, r, check=False)
        self._pts[r] = q
        return q

    def _check_on(self, r: int):
        q = self.point(r)
        for g in self.Z.ideals[r].gens:
            if g.evaluate(q):
                raise MembershipError(f"the level-{r} point misses {g.render()}")

    def level_fiber(self, r: int) -> JetFiber:
        f = self._fib.get(r)
        if f is None:
            self._check_on(r)
            f = jet_fiber((self.P.ring(r), self.Z.ideals[r].gens), self.point(r), self.m)
            self._fib[r] = f
        return f

    def e_vectors(self, r: int) -> list:
        """w[i][k]: monomial-coefficient vector of the b_k-part of e_r(u_i)."""
        w = self._e.get(r)
        if w is not None:
            return w
        R = self.P.ring(r)
        alg = self.hs.algebra(r)
        ell = alg.rank
        N = self.P.N
        fib = self.level_fiber(r)
        pos = fib.index()
        Y = [[R.var(self.P.var_name(j, k)) for k in range(ell)] for j in range(N)]
        w = []
        for e in self.ambient.monomials:
            vec = [R.const(c) for c in alg.one()]
            for j, x in enumerate(e):
                for _ in range(x):
                    vec = alg.mul(vec, Y[j])
            per_k = []
            for k in range(ell):
                row = [self.K.zero] * fib.size
                for te, c in vec[k].terms.items():
                    row[pos[te]] = row[pos[te]] + c
                per_k.append(row)
            w.append(per_k)
        self._e[r] = w
        return w

    def phi_matrix(self, r: int) -> list:
        """Rows k * P + i, columns level-r monomials: gamma -> image coordinates."""
        w = self.e_vectors(r)
        ell = self.hs.sys.rank(r)
        return [w[i][k] for k in range(ell) for i in range(self.P_size)]

    def level_image(self, r: int) -> list:
        """Canonical basis of T_r: the image of Jet^m(Z_r) at the level-r point."""
        Phi = self.phi_matrix(r)
        gens = self.level_fiber(r).dual
        K = self.K
        vecs = [[sum((a * b for a, b in zip(row, g) if a and b), K.zero) for row in Phi] for g in gens]
        return span_basis([v for v in vecs if any(v)], K, len(Phi))

    def nabla_jet(self, lam, r: int) -> list:
        """nabla_r(lambda) in the coordinates of tau_r(Jet^m(X)_a)."""
        ell = self.hs.sys.rank(r)
        imgs = [self.hs.E(self.K(v), r) for v in lam]
        return [imgs[i][k] for k in range(ell) for i in range(self.P_size)]

    def inclusion_index(self, r: int) -> list:
        """Level-r monomial index of each ambient monomial (level-0 coordinates)."""
        fib = self.level_fiber(r)
        pos = fib.index()
        pad = (0,) * (fib.ring.nvars - self.P.N)
        return [pos[tuple(e) + pad] for e in self.ambient.monomials]


# ------------------------------------------------------------------ e_r

@dataclass
class ExpMapData:
    r: int
    source_labels: list
    target_labels: list
    matrix: list
    augmentation_ok: bool

    def dump(self, field) -> dict:
        return {
            "r": self.r,
            "rows": self.source_labels,
            "cols": self.target_labels,
            "matrix": [[field.render(v) for v in row] for row in self.matrix],
            "augmentation_ok": self.augmentation_ok,
        }


def e_r_map(Z: HSSubscheme, a, m: int, r: int, lifts=None) -> ExpMapData:
    """Matrix of e_r: V_0 -> V_r (x) D_r(K) in the quotient bases.

    Rows follow the basis of V_0 (the jet fiber of Z_0 at a); column (b, k)
    has index k * dim V_r + b.
    """
    ctx = _JetContext(Z, a, m, lifts)
    V0 = ctx.level_fiber(0)
    Vr = ctx.level_fiber(r)
    amb_pos = ctx.ambient.index()
    w = ctx.e_vectors(r)
    alg = ctx.hs.algebra(r)
    ell = alg.rank
    incl = ctx.inclusion_index(r)
    M = []
    aug_ok = True
    pi0 = ctx.P._pi_matrix(r, 0)[0]
    K = ctx.K
    for i0 in V0.basis:
        i = amb_pos[V0.monomials[i0]]
        row = []
        for k in range(ell):
            row.extend(Vr.coords(w[i][k]))
        M.append(row)
        aug = [K.zero] * Vr.size
        for k, c in enumerate(pi0):
            if c:
                aug = [x + c * y for x, y in zip(aug, w[i][k])]
        direct = [K.zero] * Vr.size
        direct[incl[i]] = K.one
        if Vr.coords(aug) != Vr.coords(direct):
            aug_ok = False
    tl = [f"{b}*{lab}" for lab in alg.labels for b in Vr.basis_labels()]
    return ExpMapData(r, V0.basis_labels(), tl, M, aug_ok)


# ------------------------------------------------------------------ membership

@dataclass
class MembershipResult:
    ok: bool
    certificates: dict = dc_field(default_factory=dict)
    failed_level: int | None = None
    caveat: str | None = None

    def __bool__(self):
        return self.ok

    def dump(self, field) -> dict:
        out = {"member": self.ok}
        if self.failed_level is not None:
            out["failed_level"] = self.failed_level
        out["certificates"] = {str(r): [field.render(v) for v in g] for r, g in sorted(self.certificates.items())}
        if self.caveat:
            out["caveat"] = self.caveat
        return out


def _check_certificate(ctx: _JetContext, lam, gamma, r: int) -> bool:
    """E_r(lambda(u)) == (gamma (x) D_r)(e_r(u)) for every ambient monomial u."""
    K = ctx.K
    w = ctx.e_vectors(r)
    for i, v in enumerate(lam):
        lhs = list(ctx.hs.E(K(v), r))
        rhs = [sum((a * b for a, b in zip(wk, gamma) if a and b), K.zero) for wk in w[i]]
        if lhs != rhs:
            return False
    return True


def hs_jet_membership(lam, Z: HSSubscheme, a, m: int, r_cap: int, lifts=None, assume_good: bool = False) -> MembershipResult:
    """Solve for gamma_r extending lambda with E_r o lambda = (gamma_r (x) D_r) o e_r.

    ``lam`` lists the values of the jet on the centered ambient monomials
    (degree 1..m, the order of ``jet_fiber(X, a, m).monomials``).
    """
    ctx = _JetContext(Z, a, m, lifts)
    K = ctx.K
    lam = [K(v) for v in lam]
    if len(lam) != ctx.P_size:
        raise ValueError(f"a jet of order {m} here has {ctx.P_size} values, got {len(lam)}")
    caveat = None
    if not assume_good:
        rep = good_locus(Z, a, m, r_cap, lifts)
        if not rep["ok"]:
            caveat = "outside good locus"
    if not ctx.ambient.contains(lam):
        return MembershipResult(False, {}, 0, "not a jet of the ambient variety")
    certs = {}
    for r in range(min(r_cap, Z.cap) + 1):
        fib = ctx.level_fiber(r)
        Gam = fib.dual
        Phi = ctx.phi_matrix(r)
        A = [[sum((x * y for x, y in zip(row, g) if x and y), K.zero) for g in Gam] for row in Phi]
        b = ctx.nabla_jet(lam, r)
        for i, idx in enumerate(ctx.inclusion_index(r)):
            A.append([g[idx] for g in Gam])
            b.append(lam[i])
        c = solve(A, b, K, len(Gam)) if Gam else ([] if not any(b) else None)
        if c is None:
            return MembershipResult(False, certs, r, caveat)
        gamma = [sum((ci * g[j] for ci, g in zip(c, Gam) if ci), K.zero) for j in range(fib.size)]
        if not _check_certificate(ctx, lam, gamma, r):
            raise AssertionError(f"certificate at level {r} fails re-evaluation")
        certs[r] = gamma
    return MembershipResult(True, certs, None, caveat)


# ------------------------------------------------------------------ HS jet fibers

@dataclass
class HSJetFiber:
    ambient: JetFiber
    m: int
    points: list
    levels: list
    ranks: list
    dominant_levels: list
    field: object = None

    @property
    def cap(self) -> int:
        return len(self.levels) - 1

    def dims(self) -> list[int]:
        return [len(b) for b in self.levels]

    @property
    def dominant(self) -> bool:
        return all(self.dominant_levels)

    def dump(self) -> dict:
        r = self.field.render
        return {
            "m": self.m,
            "ambient_dim": self.ambient.dim,
            "dims": self.dims(),
            "projected_dims": [None] + [self._proj_dim[n] for n in range(1, self.cap + 1)],
            "dominant": self.dominant,
            "levels": [[[r(v) for v in row] for row in basis] for basis in self.levels],
        }


def _pi_vec(ctx: _JetContext, v, m: int, n: int) -> list:
    M = ctx.P._pi_matrix(m, n)
    P = ctx.P_size
    K = ctx.K
    out = []
    for k in range(ctx.hs.sys.rank(n)):
        for i in range(P):
            s = K.zero
            for t, c in enumerate(M[k]):
                if c:
                    s = s + c * v[t * P + i]
            out.append(s)
    return out


def _delta_vec(ctx: _JetContext, v, n: int) -> list:
    """Delta-hat(n, 1) on tau_{n+1}(Jet) coordinates, into tau_1 tau_n(Jet)."""
    D = ctx.hs.delta_matrix(n, 1)
    P = ctx.P_size
    ln, l1 = ctx.hs.sys.rank(n), ctx.hs.sys.rank(1)
    K = ctx.K
    out = []
    for k2 in range(l1):
        for k1 in range(ln):
            row = D[k1 * l1 + k2]
            for i in range(P):
                s = K.zero
                for t, c in enumerate(row):
                    if c:
                        s = s + c * v[t * P + i]
                out.append(s)
    return out


def hs_jet_fiber(Z: HSSubscheme, a, m: int, n_cap: int | None = None, lifts=None) -> HSJetFiber:
    """The tower of level fibers T_n of the m-th HS jet space at a."""
    n_cap = Z.cap if n_cap is None else min(n_cap, Z.cap)
    ctx = _JetContext(Z, a, m, lifts)
    levels = [ctx.level_image(n) for n in range(n_cap + 1)]
    K = ctx.K
    dom = []
    proj = {}
    for n in range(n_cap):
        image = span_basis([_pi_vec(ctx, v, n + 1, n) for v in levels[n + 1]], K, ctx.P_size * ctx.hs.sys.rank(n))
        proj[n + 1] = len(image)
        dom.append(len(image) == len(levels[n]) and same_span(image, levels[n], K, ctx.P_size * ctx.hs.sys.rank(n)))
    fib = HSJetFiber(ctx.ambient, m, [ctx.point(n) for n in range(n_cap + 1)], levels, [len(b) for b in levels], dom, K)
    fib._proj_dim = proj
    fib._ctx = ctx
    return fib


def check_jet_tower(F: HSJetFiber) -> Verdict:
    """pi-hat maps T_{n+1} into T_n and Delta-hat(n,1) maps T_{n+1} into tau(T_n)."""
    ctx = F._ctx
    K = ctx.K
    for n in range(F.cap):
        dim_n = ctx.P_size * ctx.hs.sys.rank(n)
        for v in F.levels[n + 1]:
            w = _pi_vec(ctx, v, n + 1, n)
            if rank(F.levels[n] + [w], K, dim_n) != len(F.levels[n]):
                return Verdict.fail("jet-pi-compatibility", level=n + 1)
        annihilator = kernel_basis(F.levels[n], K, dim_n) if F.levels[n] else [
            [K.one if i == j else K.zero for i in range(dim_n)] for j in range(dim_n)
        ]
        tau = prolong_linear(ctx.hs, annihilator, dim_n, 1)
        for v in F.levels[n + 1]:
            w = _delta_vec(ctx, v, n)
            for eq in tau:
                if sum((x * y for x, y in zip(eq, w) if x and y), K.zero):
                    return Verdict.fail("jet-delta-compatibility", level=n + 1)
    return OK


def prolonged_jet_space(hs: HSField, J: JetFiber, n: int) -> list:
    """Canonical basis of tau_n(Jet^m(X)_a)."""
    eqs = prolong_linear(hs, J.relations, J.size, n)
    return span_basis(_solution_space(eqs, J.size * hs.sys.rank(n), hs.K), hs.K, J.size * hs.sys.rank(n))


# ------------------------------------------------------------------ good locus

def _jacobian_at(gens, names, q, ring):
    K = ring.field
    return [[g.diff(v).evaluate(q) if g.diff(v) else K.zero for v in names] for g in gens]


def good_locus(Z: HSSubscheme, a, m: int = 1, n_cap: int | None = None, lifts=None) -> dict:
    """Report on the three good-locus conditions at a (levels up to n_cap)."""
    n_cap = Z.cap if n_cap is None else min(n_cap, Z.cap)
    P = Z.prol
    X = P.X
    K = X.field
    report = {"smooth_point": None, "levels": [], "image_identity": None, "ok": False}
    try:
        ctx = _JetContext(Z, a, m, lifts)
    except MembershipError as exc:
        report["error"] = str(exc)
        return report
    IX = X.ideal()
    codim = X.dim_ambient - IX.dimension() if X.gens else 0
    jac = _jacobian_at(IX.groebner() if X.gens else [], X.names, ctx.a, X.ring)
    report["smooth_point"] = (rank(jac, K, X.dim_ambient) if jac else 0) == codim
    all_ok = report["smooth_point"]
    for n in range(n_cap):
        up, low = Z.ideals[n + 1], Z.ideals[n]
        q_up, q_low = ctx.point(n + 1), ctx.point(n)
        R_up, R_low = P.ring(n + 1), P.ring(n)
        J_up = _jacobian_at(up.groebner(), R_up.names, q_up, R_up) if up.gens else []
        J_low = _jacobian_at(low.groebner(), R_low.names, q_low, R_low) if low.gens else []
        cod_up = R_up.nvars - up.dimension() if up.gens else 0
        cod_low = R_low.nvars - low.dimension() if low.gens else 0
        smooth_up = (rank(J_up, K, R_up.nvars) if J_up else 0) == cod_up
        smooth_low = (rank(J_low, K, R_low.nvars) if J_low else 0) == cod_low
        T_up = _solution_space(J_up, R_up.nvars, K)
        T_low = _solution_space(J_low, R_low.nvars, K)
        img = [list(P.pi_point(v, n + 1, n)) for v in T_up]
        surj = same_span(span_basis(img, K, R_low.nvars), span_basis(T_low, K, R_low.nvars), K, R_low.nvars) if T_low else True
        ok = smooth_up and smooth_low and surj
        report["levels"].append({"level": n + 1, "smooth_projection": ok})
        all_ok = all_ok and ok
    F = hs_jet_fiber(Z, a, m, n_cap, lifts)
    report["image_identity"] = "verified to cap (proxy)" if check_jet_tower(F) else "failed"
    all_ok = all_ok and report["image_identity"] != "failed"
    report["ok"] = bool(all_ok)
    return report


# ------------------------------------------------------------------ determination

def jets_determine(Z: HSSubscheme, Z2: HSSubscheme, a, m_cap: int, r_cap: int, lifts=None, lifts2=None) -> Verdict:
    """First (m, r) where the level-r HS jet fibers of the two towers differ."""
    if Z.prol.X.names != Z2.prol.X.names or Z.prol.X.field != Z2.prol.X.field:
        raise ValueError("the towers must live over the same ambient variety and HS field")
    for m in range(1, m_cap + 1):
        F1 = hs_jet_fiber(Z, a, m, r_cap, lifts)
        F2 = hs_jet_fiber(Z2, a, m, r_cap, lifts2)
        K = F1.field
        for r in range(min(F1.cap, F2.cap) + 1):
            dim = F1.ambient.size * Z.prol.sys.rank(r)
            if not same_span(F1.levels[r], F2.levels[r], K, dim):
                return Verdict.fail("distinguished", m=m, r=r, dims=[len(F1.levels[r]), len(F2.levels[r])])
    return OK
