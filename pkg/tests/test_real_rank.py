import random
from fractions import Fraction

import pytest

from realrank.apolarity import complex_rank
from realrank.constructions import veronese_power
from realrank.errors import ZeroPolynomialError
from realrank.experiments import random_hyperbolic, random_non_hyperbolic
from realrank.poly_core import BinaryForm, derivative
from realrank.real_rank import (
    all_directional_derivatives_hyperbolic,
    check_lemma_apolar_shape,
    interlaces,
    is_hyperbolic,
    pencil_hyperbolic,
    pencil_hyperbolic_sampled,
    pencil_non_hyperbolic_member,
    real_rank,
)

F = Fraction


def form(*coeffs):
    return BinaryForm(tuple(F(c) for c in coeffs))


def roots_form(*slopes):
    # product of (x - s y)
    return BinaryForm.from_linear_factors([(1, -s) for s in slopes])


def times_y(f):
    return BinaryForm((F(0),) + tuple(f.coeffs))


def member(f, g, a, b):
    return BinaryForm(tuple(a * u + b * v for u, v in zip(f.coeffs, g.coeffs)))


# hyperbolicity


def test_is_hyperbolic_examples():
    assert is_hyperbolic(form(0, 1, -1, 0, 0))  # x^2 y (x - y)
    assert not is_hyperbolic(form(1, 0, 1))
    res = is_hyperbolic(form(1, -3, 0, 1))  # x^3 - 3 x y^2 + y^3
    assert res and res.isolation.distinct_count == 3


def test_is_hyperbolic_counts_root_at_infinity():
    assert is_hyperbolic(form(0, 0, 1))  # y^2 has the double root (1:0)
    assert not is_hyperbolic(form(0, 1, 0, 1))  # y (x^2 + y^2)


def test_is_hyperbolic_zero_form():
    with pytest.raises(ZeroPolynomialError):
        is_hyperbolic(BinaryForm.zero(3))


# interlacing


def test_interlacing_alternating_on_circle():
    rep = interlaces(form(1, 0, -1), form(0, 1, 0))
    assert rep.interlaces
    assert rep.circular_order == ("f", "g", "f", "g")


def test_interlacing_rejects_nested_roots():
    assert not interlaces(roots_form(1, 2), roots_form(3, 4)).interlaces


def test_interlacing_rolle_pair():
    f = roots_form(0, 1, 2, 3)
    g = times_y(derivative(f, "x"))
    assert interlaces(f, g).interlaces


def test_interlacing_divides_out_common_factor():
    f = roots_form(0, 1, 5)
    g = roots_form(0, 2, 7)
    rep = interlaces(f, g)
    assert rep.common_factor.is_proportional(roots_form(0))
    assert rep.interlaces


# pencils


def test_pencil_of_interlacing_quadrics_is_hyperbolic():
    assert pencil_hyperbolic(form(1, 0, -1), form(0, 1, 0))


def test_pencil_of_nested_quadrics_has_witness():
    f, g = roots_form(1, 2), roots_form(3, 4)
    assert not pencil_hyperbolic(f, g)
    a, b = pencil_non_hyperbolic_member(f, g)
    assert not is_hyperbolic(member(f, g, a, b))
    ok, witness = pencil_hyperbolic_sampled(f, g, samples=100, seed=0)
    assert not ok and not is_hyperbolic(member(f, g, *witness))


def test_pencil_identity_case():
    f = roots_form(1, 2)
    assert pencil_hyperbolic(f, f)


def test_pencil_matches_interlacing_random():
    rng = random.Random(3)
    for _ in range(60):
        d = rng.randint(2, 5)
        f = roots_form(*rng.sample(range(-9, 10), d))
        g = roots_form(*rng.sample(range(-9, 10), d))
        assert pencil_hyperbolic(f, g) == interlaces(f, g).interlaces


# directional derivatives


def test_directional_derivatives_of_hyperbolic_form():
    f = form(0, 1, -1, 0, 0)
    assert all_directional_derivatives_hyperbolic(f) and is_hyperbolic(f)


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_directional_derivatives_of_circle_times_power(d):
    coeffs = [F(0)] * (d + 1)
    coeffs[0], coeffs[2] = F(1), F(1)  # x^(d-2) (x^2 + y^2)
    f = BinaryForm(tuple(coeffs))
    assert not all_directional_derivatives_hyperbolic(f)
    dx = derivative(f, "x")
    expect = [F(0)] * d
    expect[0], expect[2] = F(d), F(d - 2)
    assert dx == BinaryForm(tuple(expect))


def test_directional_derivatives_of_fermat_cubic():
    f = form(1, 0, 0, 1)
    assert is_hyperbolic(derivative(f, "x")) and is_hyperbolic(derivative(f, "y"))
    assert not all_directional_derivatives_hyperbolic(f)


def test_directional_derivatives_agree_with_hyperbolicity():
    rng = random.Random(5)
    for _ in range(40):
        d = rng.randint(3, 6)
        f = random_hyperbolic(rng, d) if rng.random() < 0.5 else random_non_hyperbolic(rng, d)
        assert all_directional_derivatives_hyperbolic(f) == bool(is_hyperbolic(f))


# real rank


def test_real_rank_of_powers():
    for d in range(1, 9):
        cert = real_rank(veronese_power((2, -3), d), seed=0)
        assert cert.rank == 1


@pytest.mark.parametrize("d", [3, 4, 5, 6, 7])
def test_real_rank_of_hyperbolic_form(d):
    f = roots_form(*range(d))
    cert = real_rank(f, seed=0)
    assert cert.rank == d and cert.kind == "hyperbolicity"


@pytest.mark.parametrize("d", [3, 4, 5])
def test_real_rank_hyperbolic_by_exhaustion(d):
    f = roots_form(*range(d))
    cert = real_rank(f, use_hyperbolic_shortcut=False, seed=0)
    assert cert.rank == d and cert.lower_bound is not None


def test_real_rank_fermat_cubic():
    cert = real_rank(form(1, 0, 0, 1), seed=0)
    assert cert.rank == 2
    assert cert.witness.verify(form(1, 0, 0, 1))


def test_real_rank_non_hyperbolic_is_below_degree():
    rng = random.Random(7)
    for _ in range(30):
        d = rng.randint(3, 5)
        f = random_non_hyperbolic(rng, d)
        cert = real_rank(f, seed=0)
        assert complex_rank(f).rank <= cert.rank < d


def test_real_rank_certificates_reconstruct():
    rng = random.Random(8)
    for _ in range(30):
        d = rng.randint(2, 5)
        f = BinaryForm(tuple(F(rng.randint(-9, 9)) for _ in range(d + 1)))
        if f.is_zero():
            continue
        cert = real_rank(f, seed=0)
        if cert.kind == "decomposition":
            assert cert.witness.reconstruct() == f
            assert cert.witness.length == cert.rank


def test_real_rank_sextic_needs_quadratic_cofactor():
    f = BinaryForm(tuple(F(c) for c in (3936, 7128, -13284, -47928, -51672, -24720, -4500)))
    assert not is_hyperbolic(f)
    assert real_rank(f, seed=0).rank == 5


def test_real_rank_deterministic_for_seed():
    f = form(3, -1, 4, 1, -5, 9)
    a, b = real_rank(f, seed=4), real_rank(f, seed=4)
    assert a.rank == b.rank and a.witness == b.witness


def test_real_rank_zero_form():
    with pytest.raises(ZeroPolynomialError):
        real_rank(BinaryForm.zero(2), seed=0)


# shapes from the apolar lemma


def test_lemma_shape_monomial():
    shape = check_lemma_apolar_shape(form(0, 0, 0, 0, 1))
    assert shape.kind == "monomial"
    assert real_rank(form(0, 0, 0, 0, 1), seed=0).rank == 1


def test_lemma_shape_binomial():
    h = form(1, 4, 6, 4, 2)  # y^4 + (x + y)^4
    shape = check_lemma_apolar_shape(h)
    assert shape.kind == "binomial"
    assert shape.ell[0] == shape.ell[1]


def test_lemma_shape_generic_is_none():
    rng = random.Random(9)
    for _ in range(10):
        h = BinaryForm(tuple(F(rng.randint(-20, 20)) for _ in range(5)))
        assert check_lemma_apolar_shape(h).kind == "none"
