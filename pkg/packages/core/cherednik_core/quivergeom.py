"""Геометрия циклического колчанного многообразия X_θ: неподвижные точки, кривые и карты.

Здесь же сечения расслоений, характеры когомологий и проверки на уровне gr.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from sympy import Matrix
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .cherednik import BElement, InducedElement, column_element, theta_map
from .params import (
    DeformParam,
    EtaSequence,
    StabParam,
    add_vectors,
    b_vector,
    cyclic_sum,
    d_vector,
    g_exponents,
    require_regime,
    require_regular,
    rep_order,
    tau,
    theta_order,
)
from .schemas import ClaimRecord, VerificationResult
from .series import TruncatedSeries, Window, geometric_tail
from .weyl import (
    Bidegree,
    CommMonomial,
    base_shift,
    comm_multiply,
    quotient_basis_mod_cycle,
    semi_invariant_basis,
    within,
)

logger = logging.getLogger(__name__)


class SlotState(str, Enum):
    ZERO = "00"
    B_ONLY = "0x"
    A_ONLY = "x0"
    FREE_A = "*0"

    @property
    def a_nonzero(self) -> bool:
        return self in (SlotState.A_ONLY, SlotState.FREE_A)

    @property
    def b_nonzero(self) -> bool:
        return self is SlotState.B_ONLY


@dataclass(frozen=True, slots=True)
class SlotPattern:
    vertex: int
    slots: tuple[SlotState, ...]

    def to_payload(self) -> dict[str, object]:
        return {"vertex": self.vertex, "slots": [state.value for state in self.slots]}


FixedPointPattern = SlotPattern
CurvePattern = SlotPattern


def _pattern(theta: StabParam, vertex: int, own: SlotState) -> SlotPattern:
    require_regular(theta)
    slots = []
    for j in range(theta.rank):
        if j == vertex:
            slots.append(own)
        elif cyclic_sum(theta.values, vertex, j) < 0:
            slots.append(SlotState.B_ONLY)
        else:
            slots.append(SlotState.A_ONLY)
    return SlotPattern(vertex, tuple(slots))


def fixed_point(theta: StabParam, vertex: int) -> FixedPointPattern:
    return _pattern(theta, vertex, SlotState.ZERO)


def curve_pattern(theta: StabParam, vertex: int) -> CurvePattern:
    return _pattern(theta, vertex, SlotState.FREE_A)


def fixed_point_eta(theta: StabParam, position: int) -> FixedPointPattern:
    """Вид через η: a_{η_j} = 0, b_{η_j} ≠ 0 при j < i и наоборот при j > i."""
    order = theta_order(theta)
    slots = [SlotState.ZERO] * theta.rank
    for j in range(1, theta.rank + 1):
        if j < position:
            slots[order[j]] = SlotState.B_ONLY
        elif j > position:
            slots[order[j]] = SlotState.A_ONLY
    return SlotPattern(order[position], tuple(slots))


def curve_limit(theta: StabParam, vertex: int) -> int | None:
    """Неподвижная точка на бесконечном конце U_i или None для некомпактной кривой.

    При a_i → ∞ калибровка на дуге [i, r) оставляет a_i конечным и отправляет b_r в ноль,
    поэтому предел совпадает с p_r для той вершины r, чей шаблон получается такой заменой.
    """
    curve = curve_pattern(theta, vertex)
    matches = []
    for r, state in enumerate(curve.slots):
        if state is not SlotState.B_ONLY:
            continue
        slots = list(curve.slots)
        slots[vertex] = SlotState.A_ONLY
        slots[r] = SlotState.ZERO
        if tuple(slots) == fixed_point(theta, r).slots:
            matches.append(r)
    if len(matches) > 1:
        raise RuntimeError(f"Curve U_{vertex} has ambiguous limits {matches}")
    return matches[0] if matches else None


@dataclass(frozen=True, slots=True)
class GeomOrder:
    order: EtaSequence
    incidences: tuple[tuple[int, int], ...]


def geom_order(theta: StabParam) -> GeomOrder:
    size = theta.rank
    incidences = []
    for vertex in range(size):
        limit = curve_limit(theta, vertex)
        if limit is not None:
            incidences.append((vertex, limit))
    relation = [[False] * size for _ in range(size)]
    for i, j in incidences:
        relation[i][j] = True
    # транзитивное замыкание цепочки пересечений
    for k in range(size):
        for i in range(size):
            for j in range(size):
                if relation[i][k] and relation[k][j]:
                    relation[i][j] = True
    for i in range(size):
        for j in range(size):
            if i != j and relation[i][j] == relation[j][i]:
                raise RuntimeError(f"Curve incidences do not order vertices {i} and {j}")
    logger.debug("Curve incidences collected", extra={"incidences": incidences})
    below = {vertex: sum(relation[vertex]) for vertex in range(size)}
    eta = tuple(sorted(range(size), key=below.__getitem__))
    frozen = tuple(tuple(row) for row in relation)
    return GeomOrder(EtaSequence(eta=eta, relation=frozen), tuple(sorted(incidences)))


class Value(str, Enum):
    ZERO = "zero"
    UNIT = "unit"
    POLE = "pole"


@dataclass(frozen=True, slots=True)
class LaurentMonomial:
    t: tuple[int, ...]
    xi: tuple[int, ...]

    @classmethod
    def ratio(
        cls,
        size: int,
        t_up: Sequence[int] = (),
        xi_up: Sequence[int] = (),
        t_down: Sequence[int] = (),
        xi_down: Sequence[int] = (),
    ) -> LaurentMonomial:
        t = [0] * size
        xi = [0] * size
        for index in t_up:
            t[index] += 1
        for index in xi_up:
            xi[index] += 1
        for index in t_down:
            t[index] -= 1
        for index in xi_down:
            xi[index] -= 1
        return cls(tuple(t), tuple(xi))

    def image(self) -> tuple[int, int]:
        """Образ при t_j ↦ x, ξ_j ↦ y."""
        return sum(self.t), sum(self.xi)

    def evaluate(self, pattern: SlotPattern) -> Value:
        vanishes = False
        for state, t_exp, xi_exp in zip(pattern.slots, self.t, self.xi):
            for exponent, nonzero in ((t_exp, state.a_nonzero), (xi_exp, state.b_nonzero)):
                if nonzero or exponent == 0:
                    continue
                if exponent < 0:
                    return Value.POLE
                vanishes = True
        return Value.ZERO if vanishes else Value.UNIT

    def to_comm(self) -> CommMonomial:
        if min(self.t) < 0 or min(self.xi) < 0:
            raise ValueError("Laurent monomial has negative exponents")
        return CommMonomial.canonical(0, self.t, self.xi)

    def to_payload(self) -> dict[str, list[int]]:
        return {"t": list(self.t), "xi": list(self.xi)}


@dataclass(frozen=True, slots=True)
class ChartRecord:
    index: int
    generators: tuple[LaurentMonomial, LaurentMonomial]
    images: tuple[tuple[int, int], tuple[int, int]]
    expected: tuple[tuple[int, int], tuple[int, int]]
    vertex: int

    @property
    def product_is_xy(self) -> bool:
        (x1, y1), (x2, y2) = self.images
        return (x1 + x2, y1 + y2) == (1, 1)

    def contains(self, pattern: SlotPattern) -> bool:
        return all(gen.evaluate(pattern) is Value.ZERO for gen in self.generators)

    def to_payload(self) -> dict[str, object]:
        return {
            "index": self.index,
            "generators": [gen.to_payload() for gen in self.generators],
            "images": [list(image) for image in self.images],
            "fixed_point": self.vertex,
        }


def chart(theta: StabParam, j: int) -> ChartRecord:
    size = theta.rank
    if not 1 <= j <= size:
        raise ValueError(f"Chart index must lie in 1..{size}, got {j}")
    eta = theta_order(theta)
    first = LaurentMonomial.ratio(
        size,
        t_up=[eta[p] for p in range(size - j + 1, size + 1)],
        xi_down=[eta[p] for p in range(1, size - j + 1)],
    )
    second = LaurentMonomial.ratio(
        size,
        xi_up=[eta[p] for p in range(1, size - j + 2)],
        t_down=[eta[p] for p in range(size - j + 2, size + 1)],
    )
    expected = ((j, j - size), (1 - j, size + 1 - j))
    images = (first.image(), second.image())
    return ChartRecord(j, (first, second), images, expected, eta[size - j + 1])


def f_monomial(theta_prime: Sequence[int], eta: EtaSequence, j: int) -> CommMonomial:
    b = b_vector(theta_prime, eta)
    a, c = g_exponents(eta, b, j, 0)
    return CommMonomial.canonical(0, a, c)


@dataclass(frozen=True, slots=True)
class GBasisEntry:
    k: int
    n: int
    monomial: CommMonomial

    @property
    def lemma_exponents(self) -> tuple[int, int]:
        return (sum(self.monomial.a), sum(self.monomial.c))


def g_basis(theta_prime: Sequence[int], eta: EtaSequence, bound: Bidegree) -> list[GBasisEntry]:
    b = b_vector(theta_prime, eta)
    size = eta.rank
    result = []
    for k in range(1, size + 1):
        n = 0
        while k == size or n < b[k - 1]:
            a, c = g_exponents(eta, b, k, n)
            monomial = CommMonomial.canonical(0, a, c)
            if k == size and not within(monomial.bidegree, bound):
                break
            if within(monomial.bidegree, bound):
                result.append(GBasisEntry(k, n, monomial))
            n += 1
    return result


def lemma2_exponents(b: Sequence[int], k: int, n: int) -> tuple[int, int]:
    """Образ g_k(n): x^{Σ_{j>k}(l−j)b_j + (l−k)(b_k−n)} y^{Σ_{j<k} j b_j + kn}."""
    size = len(b) + 1
    x = sum((size - j) * b[j - 1] for j in range(k + 1, size))
    if k < size:
        x += (size - k) * (b[k - 1] - n)
    y = sum(j * b[j - 1] for j in range(1, k)) + k * n
    return x, y


def g_generated(theta_prime: Sequence[int], eta: EtaSequence, bound: Bidegree) -> set[CommMonomial]:
    """Замыкание g-базиса относительно умножения на t_0⋯t_{l−1} и u внутри ограничения."""
    size = eta.rank
    cycle = CommMonomial(0, (1,) * size, (0,) * size)
    u = CommMonomial(1, (0,) * size, (0,) * size)
    result: set[CommMonomial] = set()
    frontier = [entry.monomial for entry in g_basis(theta_prime, eta, bound)]
    while frontier:
        monomial = frontier.pop()
        if monomial in result or not within(monomial.bidegree, bound):
            continue
        result.add(monomial)
        frontier.extend((comm_multiply(cycle, monomial), comm_multiply(u, monomial)))
    return result


def polytope_weights(b: Sequence[int]) -> tuple[int, ...]:
    """a_i = Σ_{k=l−i+1}^{l−1} (k − (l − i))·b_k для лучей v_i = (1, i), i = 0..l."""
    size = len(b) + 1
    return tuple(
        sum((k - (size - i)) * b[k - 1] for k in range(size - i + 1, size))
        for i in range(size + 1)
    )


@dataclass(frozen=True, slots=True)
class PolytopeSections:
    points: tuple[tuple[int, int], ...]
    monomials: tuple[tuple[int, int], ...]
    twisted: tuple[tuple[int, int], ...]


def polytope_sections(b: Sequence[int], bound: Bidegree) -> PolytopeSections:
    if any(value < 0 for value in b):
        raise ValueError(f"b-vector {list(b)} must be nonnegative")
    size = len(b) + 1
    weights = polytope_weights(b)
    twist = sum(k * b[k - 1] for k in range(1, size))
    points = []
    for m1 in range(bound[0] + 1):
        # y-показатель m1 + l·m2 + twist ограничен сверху, снизу — неравенством для v_l
        low = -((weights[size] + m1) // size)
        high = (bound[1] - m1 - twist) // size
        for m2 in range(low - 1, high + 1):
            if all(m1 + i * m2 >= -weights[i] for i in range(size + 1)):
                if m1 + size * m2 + twist >= 0:
                    points.append((m1, m2))
    monomials = tuple((m1, m1 + size * m2) for m1, m2 in points)
    twisted = tuple((x, y + twist) for x, y in monomials)
    return PolytopeSections(tuple(points), monomials, twisted)


def o_prime_generator(b: Sequence[int], j: int) -> tuple[int, int]:
    size = len(b) + 1
    x = sum((size - k) * b[k - 1] for k in range(size - j + 1, size))
    y = sum(k * b[k - 1] for k in range(1, size - j + 1))
    return x, y


@dataclass(frozen=True, slots=True)
class Divisor:
    coords: tuple[int, ...]

    def __add__(self, other: Divisor) -> Divisor:
        return Divisor(add_vectors(self.coords, other.coords))

    def scale(self, factor: int) -> Divisor:
        return Divisor(tuple(factor * value for value in self.coords))


class PicardLattice:
    """Решётка Pic с базисом D(1), …, D(l−1); D_0, …, D_l выражаются через соотношения."""

    def __init__(self, size: int) -> None:
        if size < 2:
            raise ValueError(f"Rank must be at least 2, got {size}")
        self.size = size
        columns = [self.basis_vector(i) for i in range(1, size)]
        columns.append([1] * (size + 1))
        columns.append(list(range(size + 1)))
        self._system = Matrix(size + 1, size + 1, lambda r, c: columns[c][r])

    def basis_vector(self, i: int) -> list[int]:
        """D(i) = Σ_{j<i} (i − j) D_{l−j} в координатах D_0, …, D_l."""
        vector = [0] * (self.size + 1)
        for j in range(i):
            vector[self.size - j] += i - j
        return vector

    def decompose(self, primes: Sequence[int]) -> Divisor:
        if len(primes) != self.size + 1:
            raise ValueError("Expected coefficients on D_0, …, D_l")
        solution = self._system.LUsolve(Matrix(list(primes)))
        coords = [Fraction(int(value.p), int(value.q)) for value in solution[: self.size - 1]]
        if any(value.denominator != 1 for value in coords):
            raise RuntimeError(f"Divisor {list(primes)} has non-integral coordinates")
        return Divisor(tuple(int(value) for value in coords))

    def prime(self, k: int) -> Divisor:
        return self.decompose([1 if j == k else 0 for j in range(self.size + 1)])

    def from_b(self, b: Sequence[int]) -> Divisor:
        total = [0] * (self.size + 1)
        for i, value in enumerate(b, start=1):
            for index, coeff in enumerate(self.basis_vector(i)):
                total[index] += value * coeff
        return self.decompose(total)


def o1_fiber_degree(theta: StabParam, position: int) -> int:
    eta = theta_order(theta)
    degree = d_vector(theta)[eta[position]]
    recomputed = f_monomial(theta.values, eta, position).degree
    if degree != recomputed:
        raise RuntimeError(f"O(1) fiber degree {degree} differs from f-degree {recomputed}")
    return degree


def taut_fiber_qt(theta: StabParam, vertex: int) -> TruncatedSeries:
    pattern = fixed_point(theta, vertex)
    size = theta.rank

    def nu(j: int) -> tuple[int, int]:
        return (-1, 0) if pattern.slots[j].a_nonzero else (0, 1)

    def nu_prime(j: int) -> tuple[int, int]:
        return (1, 0) if pattern.slots[j].a_nonzero else (0, -1)

    terms = []
    for k in range(size):
        if vertex == 0 or k <= vertex - 1:
            factors = [nu(j) for j in range(1, k + 1)]
        else:
            factors = [nu_prime(j % size) for j in range(k + 1, size + 1)]
        terms.append((sum(f[0] for f in factors), sum(f[1] for f in factors)))
    return TruncatedSeries.in_qt(terms)


def cotangent_weights(size: int, position: int) -> tuple[tuple[int, int], tuple[int, int]]:
    return ((size - position, -position), (-size + position + 1, position + 1))


def _closed_tops(theta: StabParam, m: int) -> dict[int, int]:
    size = theta.rank
    d = d_vector(theta.scaled(m)) if m else (0,) * size
    tops: dict[int, int] = defaultdict(int)
    for vertex in range(size):
        tops[d[vertex] + (-vertex) % size] += 1
    return tops


def abl_two_variable(theta: StabParam, m: int, window: Window) -> TruncatedSeries:
    size = theta.rank
    eta = theta_order(theta)
    total = TruncatedSeries.in_q({}, window)
    cycle = TruncatedSeries.in_q({0: 1, size: -1})
    for position in range(1, size + 1):
        vertex = eta[position]
        fiber = taut_fiber_qt(theta, vertex)
        o1 = f_monomial(theta.values, eta, position)
        twist = TruncatedSeries.in_qt([(sum(o1.a), sum(o1.c))]).power(m)
        numerator = (fiber * twist).specialize_t_inverse() * cycle
        exponents = sorted(q - t for q, t in cotangent_weights(size, position))
        if exponents != [-size, size]:
            raise RuntimeError(f"Unexpected cotangent specialization {exponents}")
        reduced = numerator.divide_exact(TruncatedSeries.in_q({0: 1, size: -1}))
        total = total + reduced.times_geometric_down(window, step=size)
    return total


def _window_for(tops: dict[int, int], window: int) -> Window:
    hi = max(tops)
    return (hi - window + 1, hi)


def _cap_for(weight: Sequence[int], lo: int, hi: int) -> Bidegree:
    base = base_shift(weight)
    size = len(weight)
    cap_a, cap_b = size, size
    for k in range((lo - sum(base)) // size - 1, (hi - sum(base)) // size + 2):
        shift = [value + k for value in base]
        a = sum(max(value, 0) for value in shift)
        c = sum(max(-value, 0) for value in shift)
        cap_a, cap_b = max(cap_a, a + size), max(cap_b, c + size)
    return cap_a, cap_b


def abl_character(theta: StabParam, m: int, window: int = 15) -> VerificationResult:
    require_regular(theta)
    if window < 1:
        raise ValueError("Window must be positive")
    size = theta.rank
    tops = _closed_tops(theta, m)
    lo, hi = _window_for(tops, window)
    closed = geometric_tail(tops, (lo, hi))

    counts: dict[int, int] = defaultdict(int)
    for column in range(size):
        weight = add_vectors(theta.scaled(m).values, tau(size, column))
        cap = _cap_for(weight, lo, hi)
        basis = semi_invariant_basis(weight, cap)
        for monomial in quotient_basis_mod_cycle(basis.members, cap):
            if lo <= monomial.degree <= hi:
                counts[monomial.degree] += 1
    enumerated = TruncatedSeries.in_q(counts, (lo, hi))
    logger.info("ABL character enumerated", extra={"m": m, "window": [lo, hi]})

    if m >= 1:
        second = abl_two_variable(theta, m, (lo, hi))
        second_label = "localization sum matches the closed form"
    else:
        direct = {(-vertex) % size: 1 for vertex in range(size)}
        second = geometric_tail(direct, (lo, hi))
        second_label = "direct column basis matches the closed form"

    claims = [
        ClaimRecord.check(
            "enumerated character matches the closed form",
            enumerated.agrees_with(closed),
            {"degree": enumerated.first_difference(closed)},
        ),
        ClaimRecord.check(
            second_label,
            second.agrees_with(closed),
            {"degree": second.first_difference(closed)},
        ),
    ]
    data = {
        "closed_form": closed.to_payload(),
        "enumerated": enumerated.to_payload(),
        "equal": enumerated.agrees_with(closed),
    }
    return VerificationResult(claims=claims, data=data)


def _leading_degrees(rows: list[list[Fraction]], width: int) -> set[int]:
    """Степени, достигаемые в линейной оболочке многочленов (коэффициенты по убыванию)."""
    if not rows:
        return set()
    matrix = DomainMatrix(
        [[QQ(value.numerator, value.denominator) for value in row] for row in rows],
        (len(rows), width),
        QQ,
    )
    _, pivots = matrix.rref()
    return {width - 1 - pivot for pivot in pivots}


def _max_s(monomial: CommMonomial, bound: Bidegree) -> int:
    return min(bound[0] - sum(monomial.a), bound[1] - sum(monomial.c))


def gr_main_check(
    lam: DeformParam,
    theta: StabParam,
    m: int,
    cap: Bidegree = (6, 6),
) -> VerificationResult:
    require_regime(lam, theta, tilde=True)
    size = lam.rank
    margin = (cap[0] + 2 * size, cap[1] + 2 * size)
    left_weight = theta.scaled(m).values
    left = {
        member.shift: _max_s(member, margin)
        for member in semi_invariant_basis(left_weight, margin).members
        if member.s == 0
    }
    checks = []
    dims: dict[str, dict[str, list[int]]] = {}
    for column in range(size):
        right = {
            member.shift: _max_s(member, margin)
            for member in semi_invariant_basis(tau(size, column), margin).members
            if member.s == 0
        }
        target_weight = add_vectors(left_weight, tau(size, column))
        target = semi_invariant_basis(target_weight, cap)
        engine_counts: dict[Bidegree, int] = defaultdict(int)
        for member in target.members:
            if member.s:
                continue
            shift = member.shift
            rows: list[list[Fraction]] = []
            products = []
            for left_shift, left_budget in left.items():
                right_shift = tuple(p - q for p, q in zip(shift, left_shift))
                if right_shift not in right:
                    continue
                b = BElement(
                    tuple(left_weight),
                    InducedElement.monomial(lam.bar, left_shift),
                )
                w = column_element(lam, column, right_shift)
                poly = theta_map(b, w).element.component(shift)
                if not poly.is_zero:
                    products.append((poly, left_budget + right[right_shift]))
            width = max((poly.degree() + budget + 1 for poly, budget in products), default=0)
            for poly, budget in products:
                coeffs = [Fraction(int(v.p), int(v.q)) for v in poly.all_coeffs()]
                for j in range(budget + 1):
                    row = [Fraction(0)] * (width - len(coeffs) - j) + coeffs + [Fraction(0)] * j
                    rows.append(row)
            attained = _leading_degrees(rows, width)
            limit = _max_s(member, cap)
            for s in range(limit + 1):
                if s in attained:
                    engine_counts[(member.bidegree[0] + s, member.bidegree[1] + s)] += 1
        expected = target.counts()
        for bidegree in sorted(expected):
            checks.append(
                (
                    engine_counts.get(bidegree, 0) == expected[bidegree],
                    {"column": column, "bidegree": list(bidegree)},
                ),
            )
        dims[str(column)] = {
            ",".join(map(str, key)): [engine_counts.get(key, 0), value]
            for key, value in sorted(expected.items())
        }
    logger.info("gr comparison finished", extra={"m": m, "bidegrees": len(checks)})
    claims = [ClaimRecord.from_checks("gr of the product span equals the semi-invariants", checks)]
    return VerificationResult(claims=claims, data={"dims": dims})


def char_cycle(theta: StabParam, vertex: int) -> list[int]:
    """Кривые U_j, в общей точке которых столбец i переживает фактор по Ā*: b_i = 0."""
    return sorted(
        j
        for j in range(theta.rank)
        if not curve_pattern(theta, j).slots[vertex].b_nonzero
    )


def char_cycle_combinatorial(theta: StabParam, vertex: int) -> list[int]:
    order = theta_order(theta)
    return sorted(j for j in range(theta.rank) if j == vertex or order.greater(vertex, j))


def ch_standard_eta(theta: StabParam, position: int) -> list[int]:
    order = theta_order(theta)
    return sorted(order[j] for j in range(1, position + 1))


@dataclass(frozen=True, slots=True)
class RchRecord:
    curves: tuple[int, ...]
    partner: int | None


def rch_simple(lam: DeformParam, theta: StabParam, position: int) -> RchRecord:
    require_regime(lam, theta)
    order = theta_order(theta)
    relation = rep_order(lam)
    vertex = order[position]
    below = [j for j in range(1, position) if relation[vertex][order[j]]]
    if not below:
        return RchRecord(tuple(ch_standard_eta(theta, position)), None)
    partner = max(below)
    curves = set(ch_standard_eta(theta, position)) - set(ch_standard_eta(theta, partner))
    return RchRecord(tuple(sorted(curves)), order[partner])
