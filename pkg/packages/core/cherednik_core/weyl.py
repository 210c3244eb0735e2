"""Алгебра Вейля D(Rep(Q, δ)) и кольцо C[μ⁻¹(0)] в каноническом виде."""

from __future__ import annotations

import itertools
import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .params import Rational

logger = logging.getLogger(__name__)

Exponents = tuple[int, ...]
WeylKey = tuple[Exponents, Exponents]
Bidegree = tuple[int, int]

EVALUATION_PRIME = 2**31 - 1


def _zeros(size: int) -> Exponents:
    return (0,) * size


def _unit(size: int, index: int, power: int = 1) -> Exponents:
    return tuple(power if j == index % size else 0 for j in range(size))


@dataclass(frozen=True, eq=False)
class WeylElement:
    rank: int
    terms: Mapping[WeylKey, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {key: Fraction(value) for key, value in self.terms.items() if value != 0}
        for a, c in cleaned:
            if len(a) != self.rank or len(c) != self.rank:
                raise ValueError(f"Exponent length does not match rank {self.rank}")
            if min(a, default=0) < 0 or min(c, default=0) < 0:
                raise ValueError("Weyl exponents must be nonnegative")
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def zero(cls, rank: int) -> WeylElement:
        return cls(rank)

    @classmethod
    def one(cls, rank: int) -> WeylElement:
        return cls(rank, {(_zeros(rank), _zeros(rank)): Fraction(1)})

    @classmethod
    def monomial(
        cls,
        a: Sequence[int],
        c: Sequence[int],
        coeff: Rational = 1,
    ) -> WeylElement:
        return cls(len(a), {(tuple(a), tuple(c)): Fraction(coeff)})

    @classmethod
    def t(cls, rank: int, index: int, power: int = 1) -> WeylElement:
        return cls.monomial(_unit(rank, index, power), _zeros(rank))

    @classmethod
    def d(cls, rank: int, index: int, power: int = 1) -> WeylElement:
        return cls.monomial(_zeros(rank), _unit(rank, index, power))

    @classmethod
    def theta(cls, rank: int, index: int) -> WeylElement:
        """Θ_i = t_i ∂_i."""
        return cls.monomial(_unit(rank, index), _unit(rank, index))

    @classmethod
    def iota(cls, rank: int, k: int) -> WeylElement:
        """ι(e^{(k)}) = t_{k+1}∂_{k+1} − t_k∂_k."""
        return cls.theta(rank, k + 1) - cls.theta(rank, k)

    @classmethod
    def t_cycle(cls, rank: int) -> WeylElement:
        return cls.monomial((1,) * rank, _zeros(rank))

    @classmethod
    def d_cycle(cls, rank: int) -> WeylElement:
        return cls.monomial(_zeros(rank), (1,) * rank)

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        if self.is_zero():
            raise ValueError("Zero element has no order")
        return max(sum(c) for _, c in self.terms)

    def single_term(self) -> tuple[WeylKey, Fraction]:
        if len(self.terms) != 1:
            raise ValueError("Expected a monomial")
        return next(iter(self.terms.items()))

    def scale(self, factor: Rational) -> WeylElement:
        return WeylElement(self.rank, {key: value * factor for key, value in self.terms.items()})

    def __add__(self, other: WeylElement) -> WeylElement:
        _check_same_rank(self.rank, other.rank)
        acc: defaultdict[WeylKey, Fraction] = defaultdict(Fraction, self.terms)
        for key, value in other.terms.items():
            acc[key] += value
        return WeylElement(self.rank, acc)

    def __neg__(self) -> WeylElement:
        return self.scale(-1)

    def __sub__(self, other: WeylElement) -> WeylElement:
        return self + (-other)

    def __mul__(self, other: WeylElement | Rational) -> WeylElement:
        if isinstance(other, WeylElement):
            return weyl_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other: Rational) -> WeylElement:
        return self.scale(other)

    def __pow__(self, power: int) -> WeylElement:
        result = WeylElement.one(self.rank)
        for _ in range(power):
            result = weyl_multiply(result, self)
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __repr__(self) -> str:
        if self.is_zero():
            return "WeylElement(0)"
        parts = [f"{coeff}*t^{list(a)}d^{list(c)}" for (a, c), coeff in sorted(self.terms.items())]
        return f"WeylElement({' + '.join(parts)})"


def _check_same_rank(left: int, right: int) -> None:
    if left != right:
        raise ValueError(f"Rank mismatch: {left} != {right}")


@lru_cache(maxsize=65536)
def _reorder(c: Exponents, a: Exponents) -> tuple[tuple[Exponents, int], ...]:
    # ∂^c t^a = Σ_k k!·C(c,k)·C(a,k)·t^{a−k}∂^{c−k} для каждой переменной
    options = [
        [(k, factorial(k) * comb(cj, k) * comb(aj, k)) for k in range(min(cj, aj) + 1)]
        for cj, aj in zip(c, a)
    ]
    result = []
    for choice in itertools.product(*options):
        coeff = 1
        for _, factor in choice:
            coeff *= factor
        result.append((tuple(k for k, _ in choice), coeff))
    return tuple(result)


def weyl_multiply(x: WeylElement, y: WeylElement) -> WeylElement:
    _check_same_rank(x.rank, y.rank)
    acc: defaultdict[WeylKey, Fraction] = defaultdict(Fraction)
    for (a1, c1), coeff1 in x.terms.items():
        for (a2, c2), coeff2 in y.terms.items():
            for ks, factor in _reorder(c1, a2):
                a = tuple(p + q - k for p, q, k in zip(a1, a2, ks))
                c = tuple(p - k + q for p, k, q in zip(c1, ks, c2))
                acc[(a, c)] += coeff1 * coeff2 * factor
    return WeylElement(x.rank, acc)


@dataclass(frozen=True, slots=True, order=True)
class CommMonomial:
    """(t_0ξ_0)^s t^a ξ^c с a_i·c_i = 0."""

    s: int
    a: Exponents
    c: Exponents

    def __post_init__(self) -> None:
        if len(self.a) != len(self.c):
            raise ValueError("Exponent vectors must have equal length")
        if self.s < 0 or min(self.a) < 0 or min(self.c) < 0:
            raise ValueError("Monomial exponents must be nonnegative")
        if any(p and q for p, q in zip(self.a, self.c)):
            raise ValueError("Monomial is not in canonical form")

    @classmethod
    def canonical(cls, s: int, a: Sequence[int], c: Sequence[int]) -> CommMonomial:
        common = [min(p, q) for p, q in zip(a, c)]
        return cls(
            s + sum(common),
            tuple(p - m for p, m in zip(a, common)),
            tuple(q - m for q, m in zip(c, common)),
        )

    @classmethod
    def from_shift(cls, shift: Sequence[int], s: int = 0) -> CommMonomial:
        return cls(s, tuple(max(m, 0) for m in shift), tuple(max(-m, 0) for m in shift))

    @classmethod
    def one(cls, rank: int) -> CommMonomial:
        return cls(0, _zeros(rank), _zeros(rank))

    @property
    def rank(self) -> int:
        return len(self.a)

    @property
    def shift(self) -> Exponents:
        return tuple(p - q for p, q in zip(self.a, self.c))

    @property
    def bidegree(self) -> Bidegree:
        return (self.s + sum(self.a), self.s + sum(self.c))

    @property
    def degree(self) -> int:
        """Степень при t ↦ q, ξ ↦ q⁻¹."""
        return sum(self.a) - sum(self.c)

    def to_payload(self) -> dict[str, object]:
        return {"s": self.s, "a": list(self.a), "c": list(self.c)}


CommPolynomial = dict[CommMonomial, Fraction]


def comm_multiply(x: CommMonomial, y: CommMonomial) -> CommMonomial:
    _check_same_rank(x.rank, y.rank)
    return CommMonomial.canonical(
        x.s + y.s,
        [p + q for p, q in zip(x.a, y.a)],
        [p + q for p, q in zip(x.c, y.c)],
    )


def weyl_symbol(x: WeylElement) -> CommPolynomial:
    top = x.order()
    acc: defaultdict[CommMonomial, Fraction] = defaultdict(Fraction)
    for (a, c), coeff in x.terms.items():
        if sum(c) == top:
            acc[CommMonomial.canonical(0, a, c)] += coeff
    return {monomial: coeff for monomial, coeff in acc.items() if coeff != 0}


def shift_weight(shift: Sequence[int]) -> tuple[int, ...]:
    size = len(shift)
    return tuple(shift[(j + 1) % size] - shift[j] for j in range(size))


def gl_weight(x: CommMonomial | WeylElement | WeylKey) -> tuple[int, ...]:
    if isinstance(x, CommMonomial):
        return shift_weight(x.shift)
    if isinstance(x, WeylElement):
        (a, c), _ = x.single_term()
    else:
        a, c = x
    return shift_weight([p - q for p, q in zip(a, c)])


def base_shift(weight: Sequence[int]) -> tuple[int, ...]:
    if sum(weight) != 0:
        raise ValueError(f"Weight {list(weight)} does not sum to 0")
    shift = [0]
    for value in weight[:-1]:
        shift.append(shift[-1] + value)
    return tuple(shift)


@dataclass(frozen=True, slots=True)
class SemiInvariantBasis:
    weight: tuple[int, ...]
    base: tuple[int, ...]
    bound: Bidegree
    members: tuple[CommMonomial, ...]

    def by_bidegree(self) -> dict[Bidegree, list[CommMonomial]]:
        groups: defaultdict[Bidegree, list[CommMonomial]] = defaultdict(list)
        for member in self.members:
            groups[member.bidegree].append(member)
        return dict(groups)

    def counts(self) -> dict[Bidegree, int]:
        return {key: len(group) for key, group in self.by_bidegree().items()}


def within(bidegree: Bidegree, bound: Bidegree) -> bool:
    return bidegree[0] <= bound[0] and bidegree[1] <= bound[1]


def semi_invariant_basis(weight: Sequence[int], bound: Bidegree) -> SemiInvariantBasis:
    base = base_shift(weight)
    top, bottom = max(base), min(base)
    members = []
    for k in range(-bound[1] - top, bound[0] - bottom + 1):
        core = CommMonomial.from_shift([m + k for m in base])
        s = 0
        while within((core.s + s + sum(core.a), s + sum(core.c)), bound):
            members.append(CommMonomial(s, core.a, core.c))
            s += 1
    members.sort(key=lambda item: (item.bidegree, item.shift, item.s))
    return SemiInvariantBasis(tuple(weight), base, bound, tuple(members))


def brute_force_semi_invariants(weight: Sequence[int], bound: Bidegree) -> set[CommMonomial]:
    """Перебор всех сырых мономов t^a ξ^c до ограничения с последующей канонизацией."""
    size = len(weight)
    target = tuple(weight)
    t_side = [a for a in itertools.product(range(bound[0] + 1), repeat=size) if sum(a) <= bound[0]]
    d_side = [c for c in itertools.product(range(bound[1] + 1), repeat=size) if sum(c) <= bound[1]]
    return {
        CommMonomial.canonical(0, a, c)
        for a in t_side
        for c in d_side
        if gl_weight((a, c)) == target
    }


def _rank(rows: list[list[int]], width: int) -> int:
    if not rows:
        return 0
    matrix = DomainMatrix([[QQ(value) for value in row] for row in rows], (len(rows), width), QQ)
    return matrix.rank()


def quotient_basis_mod_cycle(
    basis: Iterable[CommMonomial],
    bound: Bidegree,
) -> list[CommMonomial]:
    members = sorted(basis)
    if not members:
        return []
    size = members[0].rank
    cycle = CommMonomial(0, (1,) * size, _zeros(size))
    groups: defaultdict[Bidegree, list[CommMonomial]] = defaultdict(list)
    for member in members:
        if not within(member.bidegree, bound):
            raise ValueError(f"Monomial {member} lies outside the cap {bound}")
        groups[member.bidegree].append(member)

    survivors: list[CommMonomial] = []
    for bidegree in sorted(groups):
        group = groups[bidegree]
        index = {member: position for position, member in enumerate(group)}
        source = groups.get((bidegree[0] - size, bidegree[1]), [])
        rows = []
        for member in source:
            image = comm_multiply(cycle, member)
            if image not in index:
                raise ValueError(f"Cap {bound} is too small to close the cycle image of {member}")
            rows.append([1 if position == index[image] else 0 for position in range(len(group))])
        image_rank = _rank(rows, len(group))
        if image_rank != len(source):
            raise RuntimeError(f"Cycle multiplication is not injective at bidegree {bidegree}")
        # жадное дополнение образа до базиса компоненты
        current = image_rank
        for position, member in enumerate(group):
            candidate = [*rows, [1 if j == position else 0 for j in range(len(group))]]
            new_rank = _rank(candidate, len(group))
            if new_rank > current:
                rows, current = candidate, new_rank
                survivors.append(member)
        if current != len(group):
            raise RuntimeError(f"Complement construction failed at bidegree {bidegree}")
    return survivors


def canonical_form_rank(
    monomials: Sequence[CommMonomial],
    rng: random.Random,
    extra_points: int = 5,
    prime: int = EVALUATION_PRIME,
) -> int:
    """Ранг матрицы значений мономов в случайных точках открытой части μ⁻¹(0) по модулю p."""
    if not monomials:
        return 0
    size = monomials[0].rank
    field_ = GF(prime)
    rows = []
    for _ in range(len(monomials) + extra_points):
        a = [rng.randint(1, prime - 1) for _ in range(size)]
        p = rng.randint(1, prime - 1)
        b = [p * pow(value, -1, prime) % prime for value in a]
        row = []
        for monomial in monomials:
            value = pow(p, monomial.s, prime)
            for ai, bi, ta, tc in zip(a, b, monomial.a, monomial.c):
                value = value * pow(ai, ta, prime) * pow(bi, tc, prime) % prime
            row.append(field_(value))
        rows.append(row)
    matrix = DomainMatrix(rows, (len(rows), len(monomials)), field_)
    rank = matrix.rank()
    logger.debug("Evaluation rank computed", extra={"rank": rank, "size": len(monomials)})
    return rank
