"""Комбинаторика пространства параметров: циклические суммы, регулярность, альковы, порядки."""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

logger = logging.getLogger(__name__)

Rational = Fraction | int


class RegimeError(ValueError):
    """Параметры вне режима, в котором утверждение имеет смысл."""


def parse_rational(value: Rational | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise ValueError(f"Not a rational: {value!r}") from exc
    raise ValueError(f"Not a rational: {value!r}")


def format_rational(value: Rational) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def cyclic_sum(values: Sequence[Rational], i: int, j: int) -> Fraction:
    """v_i + v_{i+1} + ... + v_{j-1} по модулю l; при i == j возвращается 0."""
    size = len(values)
    if not (0 <= i < size and 0 <= j < size):
        raise ValueError(f"Index out of range for rank {size}: ({i}, {j})")
    total = Fraction(0)
    k = i
    while k != j:
        total += values[k]
        k = (k + 1) % size
    return total


def is_nonpositive_integer(value: Rational) -> bool:
    value = Fraction(value)
    return value.denominator == 1 and value <= 0


def _check_rank(size: int) -> None:
    if size < 2:
        raise ValueError(f"Rank must be at least 2, got {size}")


@dataclass(frozen=True, slots=True)
class Rank:
    l: int  # noqa: E741

    def __post_init__(self) -> None:
        _check_rank(self.l)

    def vertices(self) -> range:
        return range(self.l)


class DeformParam(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: tuple[Fraction, ...]

    @field_validator("values", mode="before")
    @classmethod
    def _parse(cls, raw: Sequence[Rational | str]) -> tuple[Fraction, ...]:
        return tuple(parse_rational(item) for item in raw)

    @model_validator(mode="after")
    def _check_sum(self) -> DeformParam:
        _check_rank(len(self.values))
        if sum(self.values) != 1:
            raise ValueError(f"Deformation parameter must sum to 1, got {sum(self.values)}")
        return self

    @classmethod
    def of(cls, *items: Rational | str) -> DeformParam:
        return cls(values=tuple(parse_rational(item) for item in items))

    @property
    def rank(self) -> int:
        return len(self.values)

    @property
    def bar(self) -> tuple[Fraction, ...]:
        return tuple(value - (1 if index == 0 else 0) for index, value in enumerate(self.values))

    def shifted(self, theta: StabParam | Sequence[int], times: int = 1) -> DeformParam:
        vector = theta.values if isinstance(theta, StabParam) else tuple(theta)
        if len(vector) != self.rank:
            raise ValueError("Rank mismatch between λ and θ")
        return DeformParam(values=tuple(a + times * b for a, b in zip(self.values, vector)))

    def to_strings(self) -> list[str]:
        return [format_rational(value) for value in self.values]

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index % self.rank]


class StabParam(BaseModel):
    model_config = ConfigDict(frozen=True)

    values: tuple[int, ...]

    @model_validator(mode="after")
    def _check_sum(self) -> StabParam:
        _check_rank(len(self.values))
        if sum(self.values) != 0:
            raise ValueError(f"Stability parameter must sum to 0, got {sum(self.values)}")
        return self

    @classmethod
    def of(cls, *items: int) -> StabParam:
        return cls(values=tuple(items))

    @property
    def rank(self) -> int:
        return len(self.values)

    def scaled(self, times: int) -> StabParam:
        return StabParam(values=tuple(times * value for value in self.values))

    def __getitem__(self, index: int) -> int:
        return self.values[index % self.rank]


@dataclass(frozen=True, slots=True)
class LambdaClass:
    in_rreg: bool
    in_tilde_rreg: bool


@dataclass(frozen=True, slots=True)
class EtaSequence:
    """η_1, ..., η_l по возрастанию порядка ⊳_θ и матрица отношения i ⊳ j."""

    eta: tuple[int, ...]
    relation: tuple[tuple[bool, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.eta)

    def __getitem__(self, position: int) -> int:
        # позиции нумеруются с единицы, как η_1 ... η_l
        if not 1 <= position <= self.rank:
            raise ValueError(f"η position must lie in 1..{self.rank}, got {position}")
        return self.eta[position - 1]

    def position(self, vertex: int) -> int:
        return self.eta.index(vertex) + 1

    def greater(self, i: int, j: int) -> bool:
        return self.relation[i][j]

    def describe(self) -> str:
        return ">".join(str(vertex) for vertex in reversed(self.eta))


def pairs(size: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(size) for j in range(size) if i != j]


def classify_lambda(lam: DeformParam) -> LambdaClass:
    bar = lam.bar
    in_rreg = all(cyclic_sum(bar, i, j) != 0 for i, j in pairs(lam.rank))
    in_tilde = in_rreg and all(cyclic_sum(lam.values, i, j) != 0 for i, j in pairs(lam.rank))
    logger.debug(
        "λ classified",
        extra={"lambda": lam.to_strings(), "rreg": in_rreg, "tilde_rreg": in_tilde},
    )
    return LambdaClass(in_rreg=in_rreg, in_tilde_rreg=in_tilde)


def classify_theta(theta: StabParam) -> bool:
    return all(cyclic_sum(theta.values, i, j) != 0 for i, j in pairs(theta.rank))


def require_regular(theta: StabParam) -> None:
    if not classify_theta(theta):
        raise ValueError(f"θ={list(theta.values)} is not regular")


def in_alcove_set(lam: DeformParam, theta: StabParam) -> bool:
    if lam.rank != theta.rank:
        raise ValueError("Rank mismatch between λ and θ")
    require_regular(theta)
    return all(
        cyclic_sum(theta.values, i, j) < 0
        for i, j in pairs(lam.rank)
        if is_nonpositive_integer(cyclic_sum(lam.values, i, j))
    )


def require_regime(lam: DeformParam, theta: StabParam, *, tilde: bool = False) -> None:
    """Проверка λ ∈ ℝ_reg (или 𝑹̃_reg) и θ ∈ ℤ_λ перед вычислениями сдвига."""
    classes = classify_lambda(lam)
    if not classes.in_rreg or (tilde and not classes.in_tilde_rreg):
        label = "tilde-regular" if tilde else "regular"
        raise RegimeError(f"λ={lam.to_strings()} is not {label}")
    if not classify_theta(theta):
        raise RegimeError(f"θ={list(theta.values)} is not regular")
    if not in_alcove_set(lam, theta):
        raise RegimeError(f"θ={list(theta.values)} is outside the alcove set of λ")


def rep_order(lam: DeformParam) -> tuple[tuple[bool, ...], ...]:
    size = lam.rank
    return tuple(
        tuple(i != j and is_nonpositive_integer(cyclic_sum(lam.values, i, j)) for j in range(size))
        for i in range(size)
    )


def theta_order(theta: StabParam) -> EtaSequence:
    require_regular(theta)
    size = theta.rank
    relation = tuple(
        tuple(i != j and cyclic_sum(theta.values, i, j) < 0 for j in range(size))
        for i in range(size)
    )
    # число вершин ниже данной однозначно задаёт её место в полном порядке
    below = {vertex: sum(relation[vertex]) for vertex in range(size)}
    eta = tuple(sorted(range(size), key=below.__getitem__))
    return EtaSequence(eta=eta, relation=relation)


def b_vector(theta_prime: Sequence[int], eta: EtaSequence) -> tuple[int, ...]:
    if len(theta_prime) != eta.rank:
        raise ValueError("Rank mismatch between θ' and η")
    result = []
    for k in range(1, eta.rank):
        value = cyclic_sum(theta_prime, eta[k], eta[k + 1])
        if value < 0:
            raise ValueError(
                f"b_{k} = {value} is negative for θ'={list(theta_prime)}, η={list(eta.eta)}",
            )
        result.append(int(value))
    return tuple(result)


def d_vector(theta: StabParam | Sequence[int]) -> tuple[int, ...]:
    values = theta.values if isinstance(theta, StabParam) else tuple(theta)
    size = len(values)
    _check_rank(size)
    result = []
    for i in range(size):
        negative = sum(k * values[k - 1] for k in range(1, i + 1))
        positive = sum((size - 1 - j) * values[j] for j in range(i, size - 1))
        result.append(positive - negative)
    return tuple(result)


def euler_constants(lam: DeformParam) -> tuple[Fraction, ...]:
    size = lam.rank
    # c_i = c_0 + Σ_{k<i} (lλ_k − 1), нормировка Σc_i = 1
    offsets = [Fraction(0)]
    for k in range(size - 1):
        offsets.append(offsets[-1] + size * lam.values[k] - 1)
    c0 = (1 - sum(offsets)) / size
    return tuple(c0 + offset for offset in offsets)


def euler_shift_identity(lam: DeformParam, theta: StabParam) -> bool:
    before = euler_constants(lam)
    after = euler_constants(lam.shifted(theta))
    return all(a - b == -d for a, b, d in zip(after, before, d_vector(theta)))


def lambda_to_kappa(lam: DeformParam) -> tuple[Fraction, ...]:
    size = lam.rank
    kappa = [Fraction(0)]
    for i in range(size - 1):
        kappa.append(kappa[-1] + lam.values[i] - Fraction(1, size))
    return tuple(kappa)


def kappa_to_lambda(kappa: Sequence[Rational]) -> DeformParam:
    size = len(kappa)
    _check_rank(size)
    values = [
        Fraction(kappa[(i + 1) % size]) - Fraction(kappa[i]) + Fraction(1, size)
        for i in range(size)
    ]
    return DeformParam(values=tuple(values))


def epsilon(size: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i % size else 0 for j in range(size))


def tau(size: int, i: int) -> tuple[int, ...]:
    """τ_i = ε_i − ε_0."""
    return tuple(a - b for a, b in zip(epsilon(size, i), epsilon(size, 0)))


def add_vectors(*vectors: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(items) for items in zip(*vectors, strict=True))


def alcove_representatives(size: int) -> list[StabParam]:
    _check_rank(size)
    # θ_j = P_{j+1} − P_j, где P — ранги частичных сумм, P_0 = 0
    result = []
    for ranking in itertools.permutations(range(size)):
        place = {vertex: index for index, vertex in enumerate(ranking)}
        partial = [place[v] - place[0] for v in range(size)] + [0]
        theta = StabParam(values=tuple(partial[j + 1] - partial[j] for j in range(size)))
        if theta_order(theta).eta != ranking:
            raise RuntimeError(f"Alcove construction drifted for ranking {ranking}")
        result.append(theta)
    return result


def random_lambda(size: int, rng: random.Random, max_denominator: int = 6) -> DeformParam:
    _check_rank(size)
    span = 3 * max_denominator
    draws = [
        Fraction(rng.randint(-span, span), rng.randint(1, max_denominator))
        for _ in range(size - 1)
    ]
    return DeformParam(values=(*draws, 1 - sum(draws)))


MAX_DRAWS = 200


def regime_lambda(theta: StabParam, rng: random.Random) -> DeformParam:
    """Случайный λ из 𝑹̃_reg, для которого θ лежит в ℤ_λ."""
    for _ in range(MAX_DRAWS):
        lam = random_lambda(theta.rank, rng)
        if classify_lambda(lam).in_tilde_rreg and in_alcove_set(lam, theta):
            return lam
    raise RuntimeError(f"No admissible λ found for θ={list(theta.values)}")


def integer_regular_lambda(theta: StabParam, rng: random.Random) -> DeformParam:
    """Случайный λ ∈ ℝ_reg с целой неположительной циклической суммой и θ ∈ ℤ_λ.

    Циклическая λ-сумма по соседней паре η_{k+1} ⊳ η_k прижимается к 0 или −1,
    так чтобы λ̄-сумма по ней не обращалась в ноль.
    """
    order = theta_order(theta)
    size = theta.rank
    for _ in range(MAX_DRAWS):
        values = list(random_lambda(size, rng).values)
        k = rng.randint(1, size - 1)
        i, j = order[k + 1], order[k]
        covers_zero = cyclic_sum(epsilon(size, 0), i, j) == 1
        delta = (0 if covers_zero else -1) - cyclic_sum(values, i, j)
        values[i] += delta
        values[j] -= delta
        lam = DeformParam(values=tuple(values))
        integral = any(any(row) for row in rep_order(lam))
        if integral and classify_lambda(lam).in_rreg and in_alcove_set(lam, theta):
            return lam
    raise RuntimeError(f"No integer-regular λ found for θ={list(theta.values)}")


def g_exponents(
    eta: EtaSequence,
    b: Sequence[int],
    k: int,
    n: int,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Показатели (t, ∂ или ξ) образующей g_k(n).

    t-часть: (t_{η_{k+1}}⋯t_{η_l})^{b_k−n} и (t_{η_{j+1}}⋯t_{η_l})^{b_j} при j > k;
    ∂-часть: (∂_{η_1}⋯∂_{η_k})^n и (∂_{η_1}⋯∂_{η_j})^{b_j} при j < k.
    """
    size = eta.rank
    if not 1 <= k <= size:
        raise ValueError(f"Generator index must lie in 1..{size}, got {k}")
    if n < 0 or (k < size and n > b[k - 1]):
        raise ValueError(f"Generator g_{k}({n}) is outside the admissible range")
    t_exp = [0] * size
    d_exp = [0] * size
    for j in range(k, size):
        power = b[j - 1] - n if j == k else b[j - 1]
        for p in range(j + 1, size + 1):
            t_exp[eta[p]] += power
    for p in range(1, k + 1):
        d_exp[eta[p]] += n + sum(b[q - 1] for q in range(p, k))
    return tuple(t_exp), tuple(d_exp)
