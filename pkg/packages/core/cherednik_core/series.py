from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from sympy import Poly, symbols

_q = symbols("q")

Window = tuple[int, int]


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Ряд Лорана с целыми коэффициентами; для переменной q хранится окно [lo, hi].

    Все сравнения выполняются только внутри окна. Ряды по (q, t) хранятся без окна:
    это конечные характеры слоёв.
    """

    variables: tuple[str, ...]
    coeffs: Mapping[tuple[int, ...], int] = field(default_factory=dict)
    window: Window | None = None

    def __post_init__(self) -> None:
        cleaned = {}
        for exponent, value in self.coeffs.items():
            if len(exponent) != len(self.variables):
                raise ValueError("Exponent arity does not match variables")
            if value and self._inside(exponent):
                cleaned[exponent] = int(value)
        object.__setattr__(self, "coeffs", cleaned)

    def _inside(self, exponent: tuple[int, ...]) -> bool:
        if self.window is None:
            return True
        return self.window[0] <= exponent[0] <= self.window[1]

    @classmethod
    def in_q(cls, terms: Mapping[int, int], window: Window | None = None) -> TruncatedSeries:
        return cls(("q",), {(exponent,): value for exponent, value in terms.items()}, window)

    @classmethod
    def in_qt(cls, terms: Iterable[tuple[int, int]]) -> TruncatedSeries:
        acc: defaultdict[tuple[int, ...], int] = defaultdict(int)
        for exponent in terms:
            acc[exponent] += 1
        return cls(("q", "t"), acc)

    def coefficient(self, *exponent: int) -> int:
        return self.coeffs.get(tuple(exponent), 0)

    def restrict(self, window: Window) -> TruncatedSeries:
        return TruncatedSeries(self.variables, self.coeffs, window)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check_compatible(other)
        acc: defaultdict[tuple[int, ...], int] = defaultdict(int, self.coeffs)
        for exponent, value in other.coeffs.items():
            acc[exponent] += value
        return TruncatedSeries(self.variables, acc, self.window)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check_compatible(other)
        acc: defaultdict[tuple[int, ...], int] = defaultdict(int)
        for left, x in self.coeffs.items():
            for right, y in other.coeffs.items():
                acc[tuple(p + r for p, r in zip(left, right))] += x * y
        return TruncatedSeries(self.variables, acc, self.window)

    def power(self, times: int) -> TruncatedSeries:
        result = TruncatedSeries(self.variables, {(0,) * len(self.variables): 1}, self.window)
        for _ in range(times):
            result = result * self
        return result

    def _check_compatible(self, other: TruncatedSeries) -> None:
        if self.variables != other.variables or self.window != other.window:
            raise ValueError("Series live in different variables or windows")

    def specialize_t_inverse(self, window: Window | None = None) -> TruncatedSeries:
        """Подстановка t = q⁻¹."""
        if self.variables != ("q", "t"):
            raise ValueError("Specialization needs a (q, t) series")
        acc: defaultdict[int, int] = defaultdict(int)
        for (r, s), value in self.coeffs.items():
            acc[r - s] += value
        return TruncatedSeries.in_q(acc, window)

    def times_geometric_down(self, window: Window, step: int = 1) -> TruncatedSeries:
        """Умножение конечного ряда на 1/(1 − q^{−step}) с разложением вниз в окне."""
        if self.variables != ("q",):
            raise ValueError("Downward expansion needs a q-series")
        lo, hi = window
        acc: defaultdict[int, int] = defaultdict(int)
        for (exponent,), value in self.coeffs.items():
            start = exponent if exponent <= hi else hi - (hi - exponent) % step
            for target in range(start, lo - 1, -step):
                acc[target] += value
        return TruncatedSeries.in_q(acc, window)

    def divide_exact(self, divisor: TruncatedSeries) -> TruncatedSeries:
        """Точное деление конечных рядов по q через сдвиг в многочлены."""
        numerator, n_shift = self._as_poly()
        denominator, d_shift = divisor._as_poly()
        quotient, remainder = numerator.div(denominator)
        if not remainder.is_zero:
            raise ValueError("Series division is not exact")
        terms = {
            monom[0] + n_shift - d_shift: int(value)
            for monom, value in zip(quotient.monoms(), quotient.coeffs())
        }
        return TruncatedSeries.in_q(terms, self.window)

    def _as_poly(self) -> tuple[Poly, int]:
        if self.variables != ("q",):
            raise ValueError("Polynomial view needs a q-series")
        low = min((exponent for (exponent,) in self.coeffs), default=0)
        expr = sum(value * _q ** (exponent - low) for (exponent,), value in self.coeffs.items())
        return Poly(expr, _q, domain="QQ"), low

    def agrees_with(self, other: TruncatedSeries) -> bool:
        if self.window != other.window:
            raise ValueError("Comparison needs a common window")
        return self.coeffs == other.coeffs

    def first_difference(self, other: TruncatedSeries) -> tuple[int, ...] | None:
        keys = sorted(set(self.coeffs) | set(other.coeffs), reverse=True)
        for key in keys:
            if self.coeffs.get(key, 0) != other.coeffs.get(key, 0):
                return key
        return None

    def to_payload(self) -> dict[str, object]:
        var = ",".join(self.variables)
        coeffs = {
            ",".join(str(p) for p in exponent): value
            for exponent, value in sorted(self.coeffs.items())
        }
        return {"var": var, "window": list(self.window) if self.window else None, "coeffs": coeffs}


def geometric_tail(tops: Mapping[int, int], window: Window) -> TruncatedSeries:
    """Σ c_e q^e / (1 − q^{−1}) внутри окна."""
    return TruncatedSeries.in_q(tops).times_geometric_down(window)
