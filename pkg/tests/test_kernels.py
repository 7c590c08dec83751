import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from realrank import _kernels_py as P
from realrank import kernels

C = pytest.importorskip("realrank._kernels")

ints = st.integers(-10 ** 6, 10 ** 6)
polys = st.lists(ints, min_size=1, max_size=9).filter(lambda p: any(p) and p[-1] != 0)


def _same(name, *args):
    a = getattr(P, name)(*[list(x) if isinstance(x, list) else x for x in args])
    b = getattr(C, name)(*[list(x) if isinstance(x, list) else x for x in args])
    assert a == b, name
    return a


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_switch():
    code = "import realrank.kernels as k; print(k.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={"REALRANK_PURE_PYTHON": "1", "PATH": ""}, check=True)
    assert out.stdout.strip() == "python"


@settings(max_examples=200, deadline=None)
@given(polys, polys)
def test_polynomial_kernels_agree(p, q):
    for name in ("content", "primitive", "derivative", "sturm_chain", "squarefree_part", "count_real_roots"):
        _same(name, p)
    _same("mul", p, q)
    _same("poly_gcd", p, q)
    if len(p) >= len(q):
        _same("prem_pos", p, q)
    prod = P.mul(list(p), list(q))
    assert _same("exact_div", prod, q) == list(p)


@settings(max_examples=100, deadline=None)
@given(polys, ints, st.integers(1, 1000))
def test_evaluation_kernels_agree(p, num, den):
    _same("eval_hom", p, num, den)
    chain = P.sturm_chain(list(p))
    _same("sign_variations", chain, num, den)
    _same("sign_variations_inf", chain, True)
    _same("sign_variations_inf", chain, False)


def test_bareiss_agrees():
    rng = random.Random(0)
    for n in range(1, 7):
        for _ in range(20):
            m = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(n)]
            assert P.bareiss_det([r[:] for r in m]) == C.bareiss_det([r[:] for r in m])


def test_strip():
    assert P.strip([1, 2, 0, 0]) == C.strip([1, 2, 0, 0]) == [1, 2]
