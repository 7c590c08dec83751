import math
import random
from fractions import Fraction

import pytest

from realrank.apolarity import (
    IntervalDecomposition,
    apolar_component,
    apolar_generators,
    catalecticant,
    complex_rank,
    contract,
    from_weighted,
    recover_decomposition,
    to_weighted,
)
from realrank.constructions import veronese_power
from realrank.errors import DegreeError, NotApolarError, ZeroPolynomialError
from realrank.poly_core import BinaryForm, binary_resultant, form_is_squarefree

F = Fraction


def form(*coeffs):
    return BinaryForm(tuple(F(c) for c in coeffs))


def combine(terms, d):
    out = [F(0)] * (d + 1)
    for c, ell in terms:
        for i, a in enumerate(veronese_power(ell, d).coeffs):
            out[i] += c * a
    return BinaryForm(tuple(out))


def annihilator(ell):
    # dual linear form killing (a x + b y)^d
    a, b = ell
    return form(b, -a)


def random_form(rng, d, lo=-20, hi=20):
    while True:
        f = BinaryForm(tuple(F(rng.randint(lo, hi)) for _ in range(d + 1)))
        if not f.is_zero():
            return f


# weighted coordinates


@pytest.mark.parametrize("coeffs, a", [
    ((1, 0, 0, 0), (1, 0, 0, 0)),
    ((1, 3, 3, 1), (1, 1, 1, 1)),
    ((0, 3, 0, 0), (0, 1, 0, 0)),
])
def test_to_weighted(coeffs, a):
    w = to_weighted(form(*coeffs))
    assert tuple(w.a) == tuple(F(v) for v in a)
    assert from_weighted(w) == form(*coeffs)


def test_weighted_round_trip_random():
    rng = random.Random(1)
    for _ in range(100):
        f = random_form(rng, rng.randint(1, 9))
        assert from_weighted(to_weighted(f)) == f


# catalecticant


def test_catalecticant_of_cube():
    cat = catalecticant(form(1, 0, 0, 0), 1)
    assert cat.entries == ((1, 0), (0, 0), (0, 0))
    assert apolar_component(form(1, 0, 0, 0), 1) == [form(0, 1)]


def test_catalecticant_kernel_of_fermat_cubic_contains_uv():
    basis = apolar_component(form(1, 0, 0, 1), 2)
    assert basis == [form(0, 1, 0)]


def test_catalecticant_is_hankel():
    rng = random.Random(2)
    for _ in range(20):
        d = rng.randint(2, 8)
        f = random_form(rng, d)
        k = rng.randint(0, d)
        e = catalecticant(f, k).entries
        assert len(e) == d - k + 1 and len(e[0]) == k + 1
        for i in range(len(e)):
            for j in range(len(e[0])):
                assert e[i][j] == to_weighted(f).a[i + j]


def test_generic_middle_catalecticant_nonsingular():
    rng = random.Random(4)
    for d in (2, 4, 6, 8):
        cat = catalecticant(random_form(rng, d), d // 2)
        assert cat.shape[0] == cat.shape[1] and cat.rank() == d // 2 + 1


def test_catalecticant_degree_out_of_range():
    with pytest.raises(DegreeError):
        catalecticant(form(1, 2, 3), 3)


# apolar components


def test_power_has_one_dimensional_linear_component():
    for d in range(1, 7):
        assert len(apolar_component(veronese_power((2, 5), d), 1)) == 1


def test_component_dimension_matches_catalecticant_rank():
    rng = random.Random(6)
    for _ in range(60):
        d = rng.randint(1, 8)
        f = random_form(rng, d, -3, 3)
        for k in range(d + 1):
            basis = apolar_component(f, k)
            assert len(basis) == max(0, k + 1 - catalecticant(f, k).rank())
            for g in basis:
                assert contract(g, f).is_zero()


def test_y_power_annihilated_by_dual_x():
    h = form(0, 0, 0, 0, 1)
    assert apolar_component(h, 1) == [form(1, 0)]


# generators


def test_generators_of_power():
    for d in range(1, 7):
        r1, r2 = apolar_generators(veronese_power((1, 0), d))
        assert (r1.degree, r2.degree) == (1, d + 1)


def test_generators_generic_even_degree():
    rng = random.Random(8)
    for d in (2, 4, 6, 8):
        r1, r2 = apolar_generators(random_form(rng, d))
        assert r1.degree == r2.degree == d // 2 + 1


def test_generators_degree_sum_and_no_common_root():
    rng = random.Random(10)
    for _ in range(500):
        d = rng.randint(1, 8)
        f = random_form(rng, d, -4, 4)
        r1, r2 = apolar_generators(f)
        assert r1.degree <= r2.degree
        assert r1.degree + r2.degree == d + 2
        assert binary_resultant(r1, r2) != 0


@pytest.mark.parametrize("d", [4, 5])
def test_generators_lemma_example_third_case(d):
    # f = y^(d-1)(a x + b y) + c l^d with f-perp containing no quadric
    a, b, c, ell = F(2), F(-3), F(5), (F(1), F(2))
    base = [F(0)] * (d + 1)
    base[d - 1] += a
    base[d] += b
    f = BinaryForm(tuple(x + c * y for x, y in zip(base, veronese_power(ell, d).coeffs)))
    r1, r2 = apolar_generators(f)
    assert r1.degree == 3 and r2.degree == d - 1
    expected = form(1, 0, 0) * annihilator(ell)
    assert r1.is_proportional(expected)


def test_generators_zero_form():
    with pytest.raises(ZeroPolynomialError):
        apolar_generators(BinaryForm.zero(3))


# complex rank


def test_complex_rank_examples():
    for d in range(1, 8):
        assert complex_rank(veronese_power((3, -1), d)).rank == 1
    cr = complex_rank(form(1, 0, 0, 1))
    assert cr.rank == 2 and cr.witness.is_proportional(form(0, 1, 0))
    x2y = form(0, 1, 0, 0)
    assert complex_rank(x2y).rank == 3
    assert not any(form_is_squarefree(g) for g in apolar_component(x2y, 2))


def test_complex_rank_generic_and_bounded():
    rng = random.Random(12)
    for d in range(3, 9):
        hits = 0
        for _ in range(100):
            f = random_form(rng, d, -100, 100)
            r = complex_rank(f).rank
            assert 1 <= r <= d
            hits += r == math.ceil((d + 1) / 2)
        assert hits >= 99


def test_complex_rank_nonreduced_pairing():
    # x^(d-1) y: minimal kernel element u^2 is a square, rank d
    for d in range(3, 8):
        f = BinaryForm.monomial(d, 1)
        assert complex_rank(f).rank == d


# decomposition recovery


def test_recover_fermat_cubic():
    dec = recover_decomposition(form(1, 0, 0, 1), form(0, 1, 0))
    assert dec.verify(form(1, 0, 0, 1))
    assert sorted(dec.terms) == [(1, (0, 1)), (1, (1, 0))]


def test_recover_two_real_lines():
    f = combine([(1, (1, 1)), (1, (1, -1))], 3)
    dec = recover_decomposition(f, form(1, 0, -1))
    assert dec.verify(f)
    assert [c for c, _ in dec.terms] == [1, 1]


def test_recover_planted_three_terms():
    planted = [(F(2), (1, 0)), (F(3), (1, 2)), (F(-1), (1, -1))]
    f = combine(planted, 3)
    q = annihilator((1, 0)) * annihilator((1, 2)) * annihilator((1, -1))
    dec = recover_decomposition(f, q)
    assert dec.reconstruct() == f
    got = {}
    for c, (u, v) in dec.terms:
        # normalise to u = 1 so the coefficient is comparable
        got[v / u] = c * u ** 3
    assert got == {F(0): 2, F(2): 3, F(-1): -1}


def test_plant_and_recover_round_trip():
    rng = random.Random(14)
    for _ in range(200):
        d = rng.randint(2, 7)
        n = rng.randint(1, d)
        slopes = rng.sample(range(-12, 13), n)
        planted = [(F(rng.choice([-3, -2, -1, 1, 2, 3])), (1, s)) for s in slopes]
        f = combine(planted, d)
        if f.is_zero():
            continue
        q = BinaryForm((F(1),))
        for _, ell in planted:
            q = q * annihilator(ell)
        dec = recover_decomposition(f, q)
        assert dec.reconstruct() == f


def test_recover_irrational_roots_certified_by_intervals():
    # 12 x^2 y + 2 y^3 = (sqrt2 x + y)^3 + (-sqrt2 x + y)^3, killed by u^2 - 2 v^2
    f = form(0, 12, 0, 2)
    dec = recover_decomposition(f, form(1, 0, -2))
    assert isinstance(dec, IntervalDecomposition)
    assert dec.residual_width <= F(1, 10 ** 40)
    assert all(c.contains(1) for c in dec.coefficients)
    for c, (t, one) in dec.approximate_terms():
        assert abs(abs(t) - math.sqrt(2)) < 1e-12 and one == 1.0


def test_recover_rejects_bad_certificates():
    f = form(1, 0, 0, 1)
    with pytest.raises(NotApolarError):
        recover_decomposition(f, form(1, 0, 0))
    with pytest.raises(NotApolarError):
        recover_decomposition(BinaryForm.monomial(3, 0), form(0, 0, 1))  # v^2 is a square
    with pytest.raises(NotApolarError):
        recover_decomposition(form(1, 0, 3, 0), form(1, 0, 1))  # u^2 + v^2 has no real roots
