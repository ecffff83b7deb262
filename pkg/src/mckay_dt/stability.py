"""Stability parameters with an optional symbolic infinitesimal part.

A parameter ``zeta + direction * eps * u`` is evaluated on an integer vector
as the pair ``(zeta . x, direction * u . x)`` and compared lexicographically,
so ``eps`` is smaller than any positive rational without ever being chosen.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError


def as_fraction(value) -> Fraction:
    """Parse ints, Fractions and strings such as ``"-3/2"`` exactly."""
    if isinstance(value, float):
        raise TypeError("floating point stability values are not accepted")
    return Fraction(value)


def _dot(a: Sequence[Fraction], x: Sequence[int]) -> Fraction:
    if len(a) != len(x):
        raise DimensionError(f"length mismatch: {len(a)} != {len(x)}")
    return sum((ai * xi for ai, xi in zip(a, x)), Fraction(0))


def lex_sign(pair: tuple[Fraction, Fraction]) -> int:
    for part in pair:
        if part > 0:
            return 1
        if part < 0:
            return -1
    return 0


@dataclass(frozen=True)
class StabilityParameter:
    base: tuple[Fraction, ...]
    perturbation: tuple[Fraction, ...] | None = None
    direction: int = 0

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(as_fraction(v) for v in self.base))
        if self.perturbation is None:
            if self.direction != 0:
                raise ValueError("direction given without a perturbation vector")
            return
        pert = tuple(as_fraction(v) for v in self.perturbation)
        if len(pert) != len(self.base):
            raise DimensionError("perturbation and base lengths differ")
        if self.direction not in (1, -1):
            raise ValueError("perturbation direction must be +1 or -1")
        object.__setattr__(self, "perturbation", pert)

    @classmethod
    def of(cls, zeta) -> "StabilityParameter":
        """Coerce a plain vector (or pass through a parameter)."""
        if isinstance(zeta, StabilityParameter):
            return zeta
        return cls(tuple(zeta))

    def __len__(self):
        return len(self.base)

    @property
    def is_perturbed(self) -> bool:
        return self.perturbation is not None

    def pair(self, x: Sequence[int]) -> tuple[Fraction, Fraction]:
        """Dot product with ``x`` as (real part, coefficient of eps)."""
        value = _dot(self.base, x)
        if self.perturbation is None:
            return value, Fraction(0)
        return value, self.direction * _dot(self.perturbation, x)

    def value(self, x: Sequence[int]) -> Fraction:
        return _dot(self.base, x)

    def sign(self, x: Sequence[int]) -> int:
        return lex_sign(self.pair(x))

    def scaled(self, c) -> "StabilityParameter":
        c = as_fraction(c)
        if c <= 0:
            raise ValueError("scale must be positive")
        pert = None if self.perturbation is None else tuple(c * v for v in self.perturbation)
        return StabilityParameter(tuple(c * v for v in self.base), pert, self.direction)

    def __str__(self):
        text = "(" + ",".join(str(v) for v in self.base) + ")"
        if self.perturbation is not None:
            sign = "+" if self.direction > 0 else "-"
            text += f" {sign} eps*(" + ",".join(str(v) for v in self.perturbation) + ")"
        return text
