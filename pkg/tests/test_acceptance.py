"""Acceptance criteria 1-10, exact equality throughout.

Each criterion records one PASS/FAIL line; ``conftest.py`` prints them at
the end of the run, and ``python3 tests/test_acceptance.py`` prints them
directly.
"""
import random
import subprocess
import sys
from pathlib import Path

import pytest

from hasse_jets.exactalg import QQ, Ideal, PolyRing, PrimeField, RationalFunctionField
from hasse_jets.exactalg.linalg import same_span
from hasse_jets.hsring import DividedPowers, Endomorphisms, HSField, ZeroOperators, verify_dring, verify_iterative
from hasse_jets.hssystem import builtin, check_iterativity, check_p_identities
from hasse_jets.jets import hs_jet_fiber, hs_jet_membership, jet_fiber, jets_determine, prolonged_jet_space
from hasse_jets.prolong import AffineVariety, Prolongation, dominance_prolongation
from hasse_jets.subscheme import compile_equation, full_tower, make_hasse, separability

sys.path.insert(0, str(Path(__file__).parent))
from test_exactalg import _gb_dim, _macaulay_dim, _random_homogeneous  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"
RESULTS: dict = {}

F5t = RationalFunctionField(PrimeField(5), ["t"])
Qt = RationalFunctionField(QQ, ["t"])


def record(n, ok, note=""):
    RESULTS[n] = (bool(ok), note)
    return ok


def summary_lines():
    out = []
    for n in range(1, 11):
        ok, note = RESULTS.get(n, (None, "not run"))
        status = "PASS" if ok else ("FAIL" if ok is False else "SKIP")
        out.append(f"criterion {n}: {status}" + (f" - {note}" if note else ""))
    return out


# ---------------------------------------------------------------- 1

def test_criterion_1_p_identities():
    v = check_p_identities(8)
    record(1, v, "sum and product expansions of P_l, indices <= 8")
    assert v


# ---------------------------------------------------------------- 2

def test_criterion_2_builtin_iterativity():
    systems = [
        builtin("Trivial", 3),
        builtin("HSD", 4, e=1),
        builtin("HSD", 3, e=2),
        builtin("End", 3, e=1),
        builtin("DiffDiff", 3),
        builtin("HigherD", 3, e=1),
    ]
    verdicts = [check_iterativity(s) for s in systems]
    s = builtin("HSD", 3)
    M = [list(r) for r in s.delta(1, 1).matrix]
    M[3][2] = s.A.one
    broken = check_iterativity(s.with_delta(1, 1, M))
    ok = all(verdicts) and not broken
    record(2, ok, f"6 built-ins ok; corrupted Delta(1,1) witness: {broken.kind}")
    assert ok


# ---------------------------------------------------------------- 3

def test_criterion_3_iterative_hs_derivation():
    t = F5t.gen("t")
    hs = HSField(F5t, builtin("HSD", 4), DividedPowers("t"))
    dring = verify_dring(hs, cap=4)
    iterative = verify_iterative(hs, cap=4)
    # binomial iteration rule D_1 D_1 = 2 D_2 on the default samples
    samples = [t, t * t, 1 / t, t**7 + 3 * t, F5t.one]
    rule = all(hs.E(hs.E(x, 1)[1], 1)[1] == 2 * hs.E(x, 2)[2] for x in samples)
    powers = all(hs.E(t**m, 4)[n] == F5t(__import__("math").comb(m, n)) * t ** (m - n) for m in range(4, 9) for n in range(5))
    s = Qt.gen("t")
    pair = HSField(Qt, builtin("End", 2, e=2), Endomorphisms([{"t": s + 1}, {"t": 2 * s}]))
    w = verify_iterative(pair)
    witness = (not w) and (w.detail.get("lhs"), w.detail.get("rhs")) == ("2*t + 2", "2*t + 1")
    ok = dring and iterative and rule and powers and witness
    record(3, ok, f"F_5(t) divided powers pass; End pair witness {w.detail.get('lhs')} != {w.detail.get('rhs')}")
    assert ok


# ---------------------------------------------------------------- 4

CUSP = AffineVariety.from_strings(QQ, ["x", "y"], ["y^2 - x^3"])
HS0 = HSField(QQ, builtin("HSD", 3), ZeroOperators())


def _criterion_4_parts():
    P = Prolongation(CUSP, HS0)
    I = P.ideal(1)
    R = P.ring(1)
    ref = Ideal(R, [R.parse("y^2 - x^3"), R.parse("2*y*x1_b - 3*x^2*x1_a")])
    ideal_ok = I.contains_all(ref.gens) and ref.contains_all(I.gens)
    dom = dominance_prolongation(CUSP, HS0, 2, 1)
    return ideal_ok, dom


def test_criterion_4_arc_space_ideal():
    ideal_ok, dom = _criterion_4_parts()
    note = "tau_1 ideal matches (y^2-x^3, 2yb-3x^2a)"
    if not dom:
        note += f"; pi-hat(2,1) {dom.kind} by elimination, extra generator {dom.detail.get('generator')}"
    record(4, ideal_ok and bool(dom), note)
    assert ideal_ok


@pytest.mark.xfail(strict=True, reason="over the cusp point the second arc coordinate satisfies b^2 = 0, so the image misses (0,0,0,1)")
def test_criterion_4_pi_hat_dominance():
    _, dom = _criterion_4_parts()
    assert dom


def test_criterion_4_smooth_curve_is_dominant():
    par = AffineVariety.from_strings(QQ, ["x", "y"], ["y - x^2"])
    assert dominance_prolongation(par, HS0, 2, 1)


# ---------------------------------------------------------------- 5

def test_criterion_5_section_and_iteration_laws():
    rng = random.Random(5)
    t = Qt.gen("t")
    hs = HSField(Qt, builtin("HSD", 3), DividedPowers("t"))
    P = Prolongation(AffineVariety.from_strings(Qt, ["x", "y"], []), hs)
    ok = True
    for _ in range(20):
        p = []
        for _ in range(2):
            num = sum((Qt(rng.randint(-5, 5)) * t**i for i in range(3)), Qt.zero)
            den = Qt(rng.randint(1, 4)) * t + Qt(rng.choice([1, 2, 3]))
            p.append(num / den)
        for m in range(4):
            ok &= P.pi_point(P.nabla(p, m), m, 0) == tuple(p)
            for n in range(4 - m):
                ok &= P.delta_point(P.nabla(p, m + n), m, n) == P.inner(m).nabla(P.nabla(p, m), n, check=False)
    P1 = Prolongation(AffineVariety.from_strings(QQ, ["x"], []), HSField(QQ, builtin("HSD", 2), ZeroOperators()))
    images = [g.render() for g in P1.delta_images(1, 1)]
    matrix = images == ["x", "x1_a", "x1_a", "2*x2_a"]
    ok = ok and matrix
    record(5, ok, f"20 points, m+n <= 3; Delta-hat(1,1)(x,a,b) = ({images[0]},{images[1]}),({images[2]},{images[3]})")
    assert ok


# ---------------------------------------------------------------- 6

def test_criterion_6_non_dominance_example():
    hs = HSField(F5t, builtin("HSD", 4), DividedPowers("t"))
    P = Prolongation(AffineVariety.from_strings(F5t, ["x"], []), hs)
    level, eq = compile_equation(P, "D1(x)^5 = x")
    Z = make_hasse(P, {level: [eq]}, cap=1)
    levels_ok = Z.level_gens(0) == [] and Z.level_gens(1) == ["x1_a^5 + 4*x"]
    sep = separability(Z)
    sep_ok = (not sep) and sep.kind == "inseparable" and sep.detail["witness"] == "level 1"
    F = hs_jet_fiber(Z, [1], 1, 1, lifts={1: (1, 1)})
    fiber_ok = F._proj_dim[1] < F.dims()[0] and not F.dominant
    ok = levels_ok and sep_ok and fiber_ok
    record(6, ok, f"Z_1 = V(x1_a^5 - x); inseparable at level 1; jet levels dims {F.dims()}, level 1 projects to dim {F._proj_dim[1]}")
    assert ok


# ---------------------------------------------------------------- 7

def test_criterion_7_smooth_case_identity():
    t = Qt.gen("t")
    hs = HSField(Qt, builtin("HSD", 3), DividedPowers("t"))
    X = AffineVariety.from_strings(Qt, ["x", "y"], ["y - x^2"])
    Z = full_tower(Prolongation(X, hs), cap=2)
    ok = True
    dims = []
    for m in (1, 2):
        F = hs_jet_fiber(Z, [t, t * t], m, 2)
        for n in range(3):
            dim = F.ambient.size * hs.sys.rank(n)
            ok &= same_span(prolonged_jet_space(hs, F.ambient, n), F.levels[n], Qt, dim)
            ok &= len(F.levels[n]) == hs.sys.rank(n) * F.ambient.dim
        dims.append(F.dims())
    record(7, ok, f"V(y-x^2) at (t,t^2): level dims {dims}")
    assert ok


# ---------------------------------------------------------------- 8

def test_criterion_8_d_module_criterion():
    t = Qt.gen("t")
    hs = HSField(Qt, builtin("HSD", 3), DividedPowers("t"))
    P = Prolongation(AffineVariety.from_strings(Qt, ["x"], []), hs)
    level, eq = compile_equation(P, "D1(x) = 0")
    const = make_hasse(P, {level: [eq]}, cap=2)
    full = full_tower(P, cap=2)
    cases = [Qt(1), Qt(-3), Qt(2) / 9, t, t * t - 1, 1 / (t + 2), t + 1]
    accepted = [hs_jet_membership([v], const, [1], 1, 2).ok for v in cases]
    expected = [not hs.E(v, 1)[1] for v in cases]
    d = jets_determine(full, const, [1], 2, 2)
    det_ok = (not d) and (d.detail["m"], d.detail["r"]) == (1, 1)
    ok = accepted == expected and det_ok
    record(8, ok, f"accepted {sum(accepted)}/{len(cases)} (exactly the constants); distinguished at (m,r) = ({d.detail.get('m')},{d.detail.get('r')})")
    assert ok


# ---------------------------------------------------------------- 9

def test_criterion_9_kernel_oracles():
    agree = 0
    for seed in range(50):
        rng = random.Random(seed)
        nvars = rng.randint(1, 3)
        field = QQ if seed % 2 == 0 else PrimeField(7)
        ring = PolyRing(field, ["x", "y", "z"][:nvars])
        gens = [g for g in (_random_homogeneous(rng, ring, rng.randint(1, 4)) for _ in range(rng.randint(1, 3))) if g] or [ring.var(0)]
        I = Ideal(ring, gens)
        basis = I.groebner()
        same = True
        for deg in range(1, 6):
            dim_la, rows, cols = _macaulay_dim(ring, gens, deg)
            same &= _gb_dim(ring, basis, deg) == dim_la
            f = _random_homogeneous(rng, ring, deg)
            target = [field.zero] * len(cols)
            for e, c in f.terms.items():
                target[cols[e]] = c
            from hasse_jets.exactalg import rank

            in_span = bool(rows) and rank(rows + [target], field, len(cols)) == rank(rows, field, len(cols))
            same &= I.contains(f) == (in_span or not f)
        agree += same
    par = AffineVariety.from_strings(QQ, ["x", "y"], ["y - x^2"])
    cusp = AffineVariety.from_strings(QQ, ["x", "y"], ["y^2 - x^3"])
    dims = [jet_fiber(cusp, (1, 1), 1).dim, jet_fiber(cusp, (0, 0), 1).dim, jet_fiber(par, (0, 0), 2).dim]
    ok = agree == 50 and dims == [1, 2, 2]
    record(9, ok, f"Groebner vs Macaulay linear algebra agree on {agree}/50 ideals; jet dims {dims}")
    assert ok


# ---------------------------------------------------------------- 10

def test_criterion_10_cli_determinism():
    script = str(GOLDEN / "nondom.hs")
    outs = []
    for threads in ("1", "1", "4"):
        res = subprocess.run(
            [sys.executable, "-m", "hasse_jets", script, "--json", "--threads", threads],
            capture_output=True,
        )
        outs.append(res.stdout)
    golden = (GOLDEN / "nondom.json").read_bytes()
    ok = outs[0] == outs[1] == outs[2] == golden
    record(10, ok, "two single-threaded runs and one 4-thread run match the golden report byte for byte")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
