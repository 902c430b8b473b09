"""The compiled kernels and the pure-Python fallback agree exactly."""
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hasse_jets import _kernels_py, kernels

compiled = pytest.importorskip("hasse_jets._kernels", reason="compiled kernels not built")

P = 32003
matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-P, P), min_size=n, max_size=n), min_size=1, max_size=6)
)
polys = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(1, P - 1), max_size=8)


@given(matrices, st.sampled_from([2, 5, 7, P]))
def test_rref_agrees(rows, p):
    n = len(rows[0])
    assert compiled.rref_mod_p([list(r) for r in rows], n, p) == _kernels_py.rref_mod_p([list(r) for r in rows], n, p)


@given(polys, polys, st.sampled_from([2, 5, P]))
def test_poly_mul_agrees(a, b, p):
    a = {e: c % p for e, c in a.items() if c % p}
    b = {e: c % p for e, c in b.items() if c % p}
    assert compiled.poly_mul_mod_p(a, b, p) == _kernels_py.poly_mul_mod_p(a, b, p)


def test_backend_selected_at_import():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_fallback_can_be_forced():
    out = subprocess.run(
        [sys.executable, "-c", "import hasse_jets.kernels as k; print(k.BACKEND)"],
        capture_output=True,
        text=True,
        env={"HASSE_JETS_PURE": "1", "PATH": ""},
        check=True,
    )
    assert out.stdout.strip() == "python"
