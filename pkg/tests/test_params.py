from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cherednik_core.params import (
    DeformParam,
    RegimeError,
    StabParam,
    alcove_representatives,
    b_vector,
    classify_lambda,
    cyclic_sum,
    d_vector,
    euler_shift_identity,
    format_rational,
    g_exponents,
    in_alcove_set,
    integer_regular_lambda,
    kappa_to_lambda,
    lambda_to_kappa,
    pairs,
    parse_rational,
    random_lambda,
    regime_lambda,
    rep_order,
    require_regime,
    theta_order,
)


def _alcoves() -> list[StabParam]:
    return [theta for size in (2, 3) for theta in alcove_representatives(size)]


def test_cyclic_sum_wraps_around() -> None:
    values = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))

    assert cyclic_sum(values, 2, 1) == Fraction(2, 3)
    assert cyclic_sum(values, 0, 2) == Fraction(5, 6)
    assert cyclic_sum(values, 1, 1) == 0


def test_cyclic_sum_rejects_bad_index() -> None:
    with pytest.raises(ValueError):
        cyclic_sum((1, -1), 0, 2)


def test_rationals_format_canonically() -> None:
    assert parse_rational("3/4") == Fraction(3, 4)
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(4, 2)) == "2"


def test_deform_param_validation() -> None:
    with pytest.raises(ValueError):
        DeformParam.of("1/2", "1/3")
    with pytest.raises(ValueError):
        DeformParam.of(1)
    with pytest.raises(ValueError):
        StabParam.of(1, 1)

    lam = DeformParam.of("3/4", "1/4")
    assert lam.bar == (Fraction(-1, 4), Fraction(1, 4))
    assert lam.to_strings() == ["3/4", "1/4"]


def test_classify_lambda_generic() -> None:
    result = classify_lambda(DeformParam.of("1/2", "1/3", "1/6"))

    assert result.in_rreg
    assert result.in_tilde_rreg


def test_rep_order() -> None:
    assert not any(any(row) for row in rep_order(DeformParam.of("3/4", "1/4")))

    relation = rep_order(DeformParam.of(-1, 2))
    assert relation[0][1]
    assert not relation[1][0]


def test_theta_order_example() -> None:
    order = theta_order(StabParam.of(-2, 1, 1))

    assert order.eta == (1, 2, 0)
    assert order.describe() == "0>2>1"
    assert order[1] == 1
    assert order.position(0) == 3


def test_theta_order_rejects_non_regular() -> None:
    with pytest.raises(ValueError):
        theta_order(StabParam.of(1, -1, 0))


def test_b_and_d_vectors() -> None:
    theta = StabParam.of(-2, 1, 1)
    order = theta_order(theta)

    assert b_vector(theta.values, order) == (1, 1)
    assert d_vector(theta) == (-3, 3, 0)
    assert d_vector(StabParam.of(-1, 1)) == (-1, 1)


def test_b_vector_rejects_negative_entries() -> None:
    order = theta_order(StabParam.of(-1, 1))

    with pytest.raises(ValueError):
        b_vector((1, -1), order)


@pytest.mark.parametrize("size", [2, 3, 4])
def test_d_vector_identities(size: int) -> None:
    for theta in alcove_representatives(size):
        d = d_vector(theta)
        order = theta_order(theta)
        b = b_vector(theta.values, order)

        assert sum(d) == 0
        for i in range(size):
            assert d[(i + 1) % size] - d[i] == -size * theta.values[i]
        for k in range(1, size):
            assert d[order[k]] - d[order[k + 1]] == size * b[k - 1]


@pytest.mark.parametrize("size", [2, 3, 4])
def test_alcove_representatives_cover_every_order(size: int) -> None:
    thetas = alcove_representatives(size)
    orders = {theta_order(theta).eta for theta in thetas}

    assert len(orders) == len(thetas)
    assert len(thetas) == {2: 2, 3: 6, 4: 24}[size]


def test_euler_constants_shift_by_minus_d() -> None:
    rng = random.Random(11)
    for size in (2, 3):
        for theta in alcove_representatives(size):
            assert euler_shift_identity(random_lambda(size, rng), theta)


def test_kappa_round_trip() -> None:
    rng = random.Random(5)
    for _ in range(10):
        lam = random_lambda(3, rng)
        kappa = lambda_to_kappa(lam)

        assert kappa[0] == 0
        assert kappa_to_lambda(kappa) == lam


def test_random_lambda_is_seeded() -> None:
    first = random_lambda(3, random.Random(42))
    second = random_lambda(3, random.Random(42))

    assert first == second
    assert sum(first.values) == 1


def test_alcove_membership_and_regime() -> None:
    lam = DeformParam.of(-1, 2)

    assert in_alcove_set(lam, StabParam.of(-1, 1))
    assert not in_alcove_set(lam, StabParam.of(1, -1))
    with pytest.raises(RegimeError):
        require_regime(lam, StabParam.of(1, -1))


def test_g_exponents_rank_two() -> None:
    order = theta_order(StabParam.of(-1, 1))

    assert g_exponents(order, (1,), 1, 0) == ((1, 0), (0, 0))
    assert g_exponents(order, (1,), 2, 0) == ((0, 0), (0, 1))
    assert g_exponents(order, (1,), 2, 1) == ((0, 0), (1, 2))
    with pytest.raises(ValueError):
        g_exponents(order, (1,), 3, 0)


@pytest.mark.parametrize("theta", _alcoves())
def test_sampled_lambdas_respect_the_regime(theta: StabParam) -> None:
    rng = random.Random(17)
    generic = regime_lambda(theta, rng)
    integral = integer_regular_lambda(theta, rng)

    assert classify_lambda(generic).in_tilde_rreg
    assert in_alcove_set(generic, theta)
    assert classify_lambda(integral).in_rreg
    assert any(any(row) for row in rep_order(integral))
    require_regime(integral, theta)


def test_integer_regular_lambda_rank_two() -> None:
    rng = random.Random(1)

    assert integer_regular_lambda(StabParam.of(-1, 1), rng) == DeformParam.of(0, 1)
    assert integer_regular_lambda(StabParam.of(1, -1), rng) == DeformParam.of(2, -1)


@pytest.mark.parametrize("theta", _alcoves())
def test_rep_order_refines_theta_order(theta: StabParam) -> None:
    rng = random.Random(23)
    order = theta_order(theta)

    for lam in (regime_lambda(theta, rng), integer_regular_lambda(theta, rng)):
        relation = rep_order(lam)
        for i, j in pairs(theta.rank):
            if relation[i][j]:
                assert order.greater(i, j), (lam.to_strings(), i, j)


@pytest.mark.parametrize("theta", _alcoves())
def test_shift_keeps_alcove_set_and_rep_order(theta: StabParam) -> None:
    rng = random.Random(29)
    others = alcove_representatives(theta.rank)

    for lam in (regime_lambda(theta, rng), integer_regular_lambda(theta, rng)):
        allowed = [in_alcove_set(lam, other) for other in others]
        for m in range(4):
            shifted = lam.shifted(theta, m)
            assert rep_order(shifted) == rep_order(lam)
            assert [in_alcove_set(shifted, other) for other in others] == allowed
