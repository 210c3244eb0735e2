from __future__ import annotations

import random
from collections import defaultdict
from fractions import Fraction

import pytest

from cherednik_core.weyl import (
    CommMonomial,
    WeylElement,
    base_shift,
    brute_force_semi_invariants,
    canonical_form_rank,
    comm_multiply,
    gl_weight,
    quotient_basis_mod_cycle,
    semi_invariant_basis,
    weyl_multiply,
    weyl_symbol,
    within,
)


def _random_element(rng: random.Random, rank: int, terms: int = 2) -> WeylElement:
    result = WeylElement.zero(rank)
    for _ in range(terms):
        a = [rng.randint(0, 2) for _ in range(rank)]
        c = [rng.randint(0, 2) for _ in range(rank)]
        result = result + WeylElement.monomial(a, c, rng.randint(1, 3))
    return result


def test_canonical_commutator() -> None:
    d0 = WeylElement.d(2, 0)
    t0 = WeylElement.t(2, 0)
    t1 = WeylElement.t(2, 1)

    assert d0 * t0 - t0 * d0 == WeylElement.one(2)
    assert d0 * t1 == t1 * d0


def test_reordering_of_powers() -> None:
    product = WeylElement.d(2, 0, 2) * WeylElement.t(2, 0, 2)
    expected = (
        WeylElement.monomial((2, 0), (2, 0))
        + WeylElement.monomial((1, 0), (1, 0), 4)
        + WeylElement.monomial((0, 0), (0, 0), 2)
    )

    assert product == expected


def test_rank_mismatch_is_rejected() -> None:
    with pytest.raises(ValueError):
        weyl_multiply(WeylElement.one(2), WeylElement.one(3))


def test_associativity_on_random_triples() -> None:
    rng = random.Random(2024)
    for _ in range(200):
        rank = rng.choice([2, 3])
        x, y, z = (_random_element(rng, rank) for _ in range(3))

        assert (x * y) * z == x * (y * z)


def test_symbol_is_multiplicative() -> None:
    rng = random.Random(7)
    for _ in range(100):
        x = _random_element(rng, 2)
        y = _random_element(rng, 2)
        expected: defaultdict[CommMonomial, Fraction] = defaultdict(Fraction)
        for left, p in weyl_symbol(x).items():
            for right, q in weyl_symbol(y).items():
                expected[comm_multiply(left, right)] += p * q

        assert weyl_symbol(x * y) == {key: value for key, value in expected.items() if value}


def test_zero_has_no_order() -> None:
    with pytest.raises(ValueError):
        WeylElement.zero(2).order()


def test_canonical_monomial_absorbs_pairs() -> None:
    monomial = CommMonomial.canonical(0, (1, 2), (1, 0))

    assert monomial == CommMonomial(1, (0, 2), (0, 0))
    assert monomial.bidegree == (3, 1)
    assert monomial.degree == 2
    with pytest.raises(ValueError):
        CommMonomial(0, (1, 0), (1, 0))


def test_gl_weight_of_generators() -> None:
    assert gl_weight(WeylElement.t(2, 0)) == (-1, 1)
    assert gl_weight(WeylElement.d(2, 0)) == (1, -1)
    assert base_shift((-2, 1, 1)) == (0, -2, -1)
    with pytest.raises(ValueError):
        base_shift((1, 1))


def test_invariants_under_small_cap() -> None:
    basis = semi_invariant_basis((0, 0), (2, 2))

    assert set(basis.members) == {
        CommMonomial(0, (0, 0), (0, 0)),
        CommMonomial(1, (0, 0), (0, 0)),
        CommMonomial(2, (0, 0), (0, 0)),
        CommMonomial(0, (1, 1), (0, 0)),
        CommMonomial(0, (0, 0), (1, 1)),
    }


@pytest.mark.parametrize(
    ("weight", "bound"),
    [((0, 0), (4, 4)), ((-1, 1), (4, 3)), ((-2, 1, 1), (4, 4)), ((1, 0, -1), (3, 4))],
)
def test_semi_invariants_match_brute_force(
    weight: tuple[int, ...],
    bound: tuple[int, int],
) -> None:
    basis = semi_invariant_basis(weight, bound)

    assert set(basis.members) == brute_force_semi_invariants(weight, bound)
    assert all(gl_weight(member) == weight for member in basis.members)


def test_quotient_by_cycle() -> None:
    basis = semi_invariant_basis((0, 0), (4, 4))
    survivors = quotient_basis_mod_cycle(basis.members, (4, 4))
    small = {member for member in survivors if within(member.bidegree, (2, 2))}

    assert small == {
        CommMonomial(0, (0, 0), (0, 0)),
        CommMonomial(1, (0, 0), (0, 0)),
        CommMonomial(0, (0, 0), (1, 1)),
    }
    assert all(min(member.shift) <= 0 for member in survivors)


def test_canonical_forms_are_independent() -> None:
    members = semi_invariant_basis((0, 0, 0), (5, 5)).members

    assert canonical_form_rank(members, random.Random(3)) == len(members)


def test_derivative_on_the_right_is_kept() -> None:
    d0 = WeylElement.d(2, 0)
    t0 = WeylElement.t(2, 0)

    assert t0 * d0 == WeylElement.theta(2, 0)
    assert d0 * WeylElement.t(2, 0, 2) * d0 == (
        WeylElement.monomial((2, 0), (2, 0)) + WeylElement.monomial((1, 0), (1, 0), 2)
    )
    expected = WeylElement.monomial((0, 1, 0), (0, 0, 2))
    assert WeylElement.t(3, 1) * WeylElement.d(3, 2, 2) == expected


def test_gl_weight_is_additive() -> None:
    rng = random.Random(13)
    for _ in range(100):
        rank = rng.choice([2, 3])
        x = _random_element(rng, rank, terms=1)
        y = _random_element(rng, rank, terms=1)
        expected = tuple(p + q for p, q in zip(gl_weight(x), gl_weight(y)))

        for key in (x * y).terms:
            assert gl_weight(key) == expected
        (left, _), (right, _) = x.single_term(), y.single_term()
        product = comm_multiply(CommMonomial.canonical(0, *left), CommMonomial.canonical(0, *right))
        assert gl_weight(product) == expected
