from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

__all__ = ["WeightVector", "default_weights", "parse_weights"]


@dataclass(frozen=True)
class WeightVector:
    """A weakly decreasing, non-negative sequence ``lambda_1 >= ... >= lambda_n >= 0``."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValueError("empty weight vector")
        if any(a < b for a, b in zip(values, values[1:])):
            raise ValueError(f"weights {self} are not weakly decreasing")
        if values[-1] < 0:
            raise ValueError(f"weights {self} are negative")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def strict(self) -> bool:
        return all(a > b for a, b in zip(self.values, self.values[1:]))

    @property
    def integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def __getitem__(self, i: int) -> Fraction:
        """1-based, with ``lambda_{n+1} = 0``."""
        if i == self.n + 1:
            return Fraction(0)
        return self.values[i - 1]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def differences(self) -> tuple[Fraction, ...]:
        """``(lambda_1 - lambda_2, ..., lambda_n - lambda_{n+1})``."""
        return tuple(self[j] - self[j + 1] for j in range(1, self.n + 1))

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.values)


def default_weights(n: int) -> WeightVector:
    return WeightVector(tuple(range(n - 1, -1, -1)))


def parse_weights(text: str | Iterable) -> WeightVector:
    if isinstance(text, str):
        return WeightVector(tuple(Fraction(t) for t in text.split(",") if t.strip()))
    return WeightVector(tuple(text))
