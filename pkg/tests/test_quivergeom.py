from __future__ import annotations

import random

import pytest

from cherednik_core.params import (
    DeformParam,
    RegimeError,
    StabParam,
    alcove_representatives,
    b_vector,
    d_vector,
    regime_lambda,
    theta_order,
)
from cherednik_core.quivergeom import (
    Divisor,
    PicardLattice,
    RchRecord,
    SlotState,
    Value,
    abl_character,
    ch_standard_eta,
    char_cycle,
    char_cycle_combinatorial,
    chart,
    cotangent_weights,
    curve_limit,
    f_monomial,
    fixed_point,
    fixed_point_eta,
    g_basis,
    g_generated,
    geom_order,
    gr_main_check,
    lemma2_exponents,
    o1_fiber_degree,
    o_prime_generator,
    polytope_sections,
    rch_simple,
    taut_fiber_qt,
)
from cherednik_core.weyl import CommMonomial, gl_weight, semi_invariant_basis

RANK_TWO = StabParam.of(-1, 1)
RANK_THREE = StabParam.of(-2, 1, 1)

ZERO, B_ONLY, A_ONLY = SlotState.ZERO, SlotState.B_ONLY, SlotState.A_ONLY


def _alcoves() -> list[StabParam]:
    return [theta for size in (2, 3, 4) for theta in alcove_representatives(size)]


def _small_alcoves() -> list[StabParam]:
    return [theta for size in (2, 3) for theta in alcove_representatives(size)]


def test_fixed_point_patterns() -> None:
    assert fixed_point(RANK_THREE, 1).slots == (A_ONLY, ZERO, A_ONLY)
    assert fixed_point(RANK_THREE, 0).slots == (ZERO, B_ONLY, B_ONLY)
    assert fixed_point(RANK_THREE, 2).slots == (A_ONLY, B_ONLY, ZERO)
    assert fixed_point(RANK_TWO, 1).slots == (A_ONLY, ZERO)
    assert fixed_point(RANK_TWO, 1).to_payload() == {"vertex": 1, "slots": ["x0", "00"]}


def test_fixed_point_rejects_non_regular_theta() -> None:
    with pytest.raises(ValueError):
        fixed_point(StabParam.of(0, 0), 0)


@pytest.mark.parametrize("theta", _alcoves())
def test_eta_form_agrees_with_vertex_form(theta: StabParam) -> None:
    order = theta_order(theta)

    for position in range(1, theta.rank + 1):
        assert fixed_point_eta(theta, position) == fixed_point(theta, order[position])


def test_curve_limits_form_a_chain() -> None:
    assert curve_limit(RANK_THREE, 0) == 2
    assert curve_limit(RANK_THREE, 2) == 1
    assert curve_limit(RANK_THREE, 1) is None

    geometric = geom_order(RANK_THREE)
    assert geometric.order.describe() == "0>2>1"
    assert geometric.incidences == ((0, 2), (2, 1))
    assert geom_order(RANK_TWO).incidences == ((0, 1),)


@pytest.mark.parametrize("theta", _alcoves())
def test_geometric_order_matches_theta_order(theta: StabParam) -> None:
    assert geom_order(theta).order.eta == theta_order(theta).eta


def test_chart_rank_two() -> None:
    record = chart(RANK_TWO, 1)

    first, second = record.generators
    assert (first.t, first.xi) == ((1, 0), (0, -1))
    assert (second.t, second.xi) == ((0, 0), (1, 1))
    assert record.images == ((1, -1), (0, 2))
    assert record.vertex == 0
    assert first.evaluate(fixed_point(RANK_TWO, 0)) is Value.ZERO
    assert first.evaluate(fixed_point(RANK_TWO, 1)) is Value.POLE


def test_chart_index_range() -> None:
    with pytest.raises(ValueError):
        chart(RANK_TWO, 0)
    with pytest.raises(ValueError):
        chart(RANK_TWO, 3)


@pytest.mark.parametrize("theta", _alcoves())
def test_charts_cover_fixed_points_once(theta: StabParam) -> None:
    records = [chart(theta, j) for j in range(1, theta.rank + 1)]

    for record in records:
        assert record.product_is_xy
        assert record.images == record.expected
    for vertex in range(theta.rank):
        owners = [record for record in records if record.contains(fixed_point(theta, vertex))]
        assert [record.vertex for record in owners] == [vertex]


def test_f_monomial_rank_two() -> None:
    order = theta_order(RANK_TWO)

    assert f_monomial(RANK_TWO.values, order, 1) == CommMonomial.canonical(0, (1, 0), (0, 0))
    assert f_monomial(RANK_TWO.values, order, 2) == CommMonomial.canonical(0, (0, 0), (0, 1))


@pytest.mark.parametrize("times", [1, 2])
def test_f_monomial_weight_and_membership(times: int) -> None:
    theta_prime = RANK_THREE.scaled(times).values
    order = theta_order(RANK_THREE)
    members = set(semi_invariant_basis(theta_prime, (8, 8)).members)

    for j in range(1, 4):
        monomial = f_monomial(theta_prime, order, j)
        assert gl_weight(monomial) == theta_prime
        assert monomial in members


def test_o1_fiber_degrees_follow_d_vector() -> None:
    assert o1_fiber_degree(RANK_TWO, 1) == 1
    assert o1_fiber_degree(RANK_TWO, 2) == -1

    order = theta_order(RANK_THREE)
    d = d_vector(RANK_THREE)
    b = b_vector(RANK_THREE.values, order)
    assert [o1_fiber_degree(RANK_THREE, i) for i in (1, 2, 3)] == [3, 0, -3]
    for i in (1, 2):
        assert d[order[i]] - d[order[i + 1]] == 3 * b[i - 1]


def test_g_basis_rank_two() -> None:
    order = theta_order(RANK_TWO)
    entries = g_basis(RANK_TWO.values, order, (3, 3))

    assert [(entry.k, entry.n) for entry in entries] == [(1, 0), (2, 0), (2, 1)]
    assert entries[0].monomial == CommMonomial.canonical(0, (1, 0), (0, 0))
    assert entries[2].monomial == CommMonomial.canonical(0, (0, 0), (1, 2))
    for entry in entries:
        assert entry.lemma_exponents == lemma2_exponents((1,), entry.k, entry.n)


def test_g_basis_generates_weight_component() -> None:
    order = theta_order(RANK_TWO)
    generated = g_generated(RANK_TWO.values, order, (3, 3))

    assert generated == set(semi_invariant_basis(RANK_TWO.values, (3, 3)).members)


def test_polytope_of_trivial_divisor() -> None:
    sections = polytope_sections((0,), (2, 2))

    assert set(sections.monomials) == {(0, 0), (0, 2), (1, 1), (2, 0), (2, 2)}
    assert sections.twisted == sections.monomials


def test_polytope_rejects_negative_b() -> None:
    with pytest.raises(ValueError):
        polytope_sections((1, -1), (3, 3))


def test_o_prime_generator_matches_f_monomial() -> None:
    order = theta_order(RANK_TWO)

    for j in (1, 2):
        monomial = f_monomial(RANK_TWO.values, order, 3 - j)
        assert o_prime_generator((1,), j) == (sum(monomial.a), sum(monomial.c))


def test_picard_decomposition_rank_two() -> None:
    lattice = PicardLattice(2)

    assert lattice.prime(0) == Divisor((1,))
    assert lattice.prime(1) == Divisor((-2,))
    assert lattice.prime(2) == Divisor((1,))
    assert lattice.from_b((1,)) == Divisor((1,))
    assert lattice.prime(0) + lattice.prime(2) == Divisor((2,))
    with pytest.raises(ValueError):
        PicardLattice(1)


def test_tautological_fiber() -> None:
    at_one = taut_fiber_qt(RANK_TWO, 1).specialize_t_inverse()
    at_zero = taut_fiber_qt(RANK_TWO, 0).specialize_t_inverse()

    assert at_one.coeffs == {(0,): 1, (1,): 1}
    assert at_zero.coeffs == {(0,): 1, (-1,): 1}


def test_cotangent_weights() -> None:
    assert cotangent_weights(2, 1) == ((1, -1), (0, 2))
    for position in (1, 2, 3):
        first, second = cotangent_weights(3, position)
        assert (first[0] + second[0], first[1] + second[1]) == (1, 1)


def test_abl_character_rank_two() -> None:
    result = abl_character(RANK_TWO, 1, window=15)

    assert result.ok
    assert result.data["equal"] is True
    coeffs = result.data["closed_form"]["coeffs"]
    assert (coeffs["2"], coeffs["1"], coeffs["0"], coeffs["-1"]) == (1, 1, 1, 2)


def test_abl_character_without_twist() -> None:
    result = abl_character(RANK_TWO, 0, window=10)

    assert result.ok
    coeffs = result.data["enumerated"]["coeffs"]
    assert (coeffs["1"], coeffs["0"], coeffs["-1"]) == (1, 2, 2)


def test_abl_character_rejects_empty_window() -> None:
    with pytest.raises(ValueError):
        abl_character(RANK_TWO, 1, window=0)


def test_gr_products_span_semi_invariants() -> None:
    result = gr_main_check(DeformParam.of("3/4", "1/4"), RANK_TWO, 1, cap=(4, 4))

    assert result.ok, [claim.claim for claim in result.failed()]
    assert set(result.data["dims"]) == {"0", "1"}


def test_char_cycles_rank_three() -> None:
    assert char_cycle(RANK_THREE, 0) == [0, 1, 2]
    assert char_cycle(RANK_THREE, 2) == [1, 2]
    assert char_cycle(RANK_THREE, 1) == [1]
    assert ch_standard_eta(RANK_THREE, 1) == [1]


@pytest.mark.parametrize("theta", _alcoves())
def test_char_cycle_geometric_equals_combinatorial(theta: StabParam) -> None:
    order = theta_order(theta)
    total = 0
    for vertex in range(theta.rank):
        cycle = char_cycle(theta, vertex)
        assert cycle == char_cycle_combinatorial(theta, vertex)
        assert cycle == ch_standard_eta(theta, order.position(vertex))
        total += len(cycle)

    assert total == theta.rank * (theta.rank + 1) // 2


def test_rch_of_simple_modules() -> None:
    lam = DeformParam.of(-1, 2)

    assert rch_simple(lam, RANK_TWO, 2) == RchRecord((0,), 1)
    assert rch_simple(lam, RANK_TWO, 1) == RchRecord((1,), None)


def test_rch_rejects_singular_lambda() -> None:
    with pytest.raises(RegimeError):
        rch_simple(DeformParam.of(1, 0), RANK_TWO, 1)


@pytest.mark.parametrize("theta", _small_alcoves())
@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_abl_character_over_alcoves(theta: StabParam, m: int) -> None:
    result = abl_character(theta, m, window=15)

    assert result.ok, [claim.claim for claim in result.failed()]
    assert result.data["equal"] is True


@pytest.mark.parametrize("theta", _small_alcoves())
@pytest.mark.parametrize("m", [0, 1, 2])
def test_gr_products_over_alcoves(theta: StabParam, m: int) -> None:
    lam = regime_lambda(theta, random.Random(5))

    result = gr_main_check(lam, theta, m, cap=(6, 6))

    assert result.ok, [claim.claim for claim in result.failed()]


@pytest.mark.parametrize("theta", alcove_representatives(3))
def test_polytope_matches_semi_invariants_per_bidegree(theta: StabParam) -> None:
    cap = (6, 6)
    order = theta_order(theta)
    b = b_vector(theta.values, order)
    counts = semi_invariant_basis(theta.values, cap).counts()

    assert set(counts.values()) == {1}
    assert set(polytope_sections(b, cap).twisted) == set(counts)
    for entry in g_basis(theta.values, order, cap):
        assert entry.monomial.bidegree in counts
        assert entry.lemma_exponents == lemma2_exponents(b, entry.k, entry.n)
