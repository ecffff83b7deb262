"""Truncated multivariate power series with exact coefficients.

A series lives in a :class:`SeriesContext` (variable names plus a truncation
order D). Terms whose degree exceeds D are dropped on construction, so every
operation is "exact polynomial arithmetic followed by truncation". The degree
of a monomial is its entry-sum, or a weighted sum when the context carries
``weights``.

Coefficients are Python ints (arbitrary precision) or Fractions; the log/exp
routines produce Fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConstantTermError,
    ContextMismatchError,
    DimensionError,
    NegativeExponentError,
    SubstitutionDomainError,
    TruncationError,
)

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class SeriesContext:
    """Variables and truncation order shared by all series in one expression.

    ``weights`` (optional) replaces entry-sum by a weighted degree. Nonpositive
    weights are allowed only when every series used in the context is
    supported on a cone where nonconstant monomials have positive degree; the
    caller is responsible for that.
    """

    var_names: tuple[str, ...]
    order: int
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "var_names", tuple(self.var_names))
        if self.order < 0:
            raise ValueError("truncation order must be >= 0")
        if self.weights is not None:
            weights = tuple(int(w) for w in self.weights)
            if len(weights) != len(self.var_names):
                raise DimensionError("one weight per variable is required")
            if all(w == 1 for w in weights):
                weights = None
            object.__setattr__(self, "weights", weights)

    @classmethod
    def q_variables(cls, n: int, order: int) -> "SeriesContext":
        return cls(tuple(f"q_{i}" for i in range(n)), order)

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    def degree(self, exponent: Sequence[int]) -> int:
        if self.weights is None:
            return sum(exponent)
        return sum(w * e for w, e in zip(self.weights, exponent))

    def with_order(self, order: int) -> "SeriesContext":
        return SeriesContext(self.var_names, order, self.weights)


class MultiSeries:
    """Immutable truncated power series. Build with the classmethods below."""

    __slots__ = ("context", "_terms")

    def __init__(self, context: SeriesContext, terms: Mapping[Sequence[int], object] = ()):
        self.context = context
        clean: dict[Exponent, object] = {}
        n = context.num_vars
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise DimensionError(f"exponent {exp} has {len(exp)} entries, expected {n}")
            if min(exp, default=0) < 0:
                raise NegativeExponentError(f"negative exponent {exp}")
            if context.degree(exp) > context.order:
                continue
            total = clean.get(exp, 0) + coef
            if total:
                clean[exp] = total
            else:
                clean.pop(exp, None)
        self._terms = clean

    @classmethod
    def _raw(cls, context, terms):
        obj = cls.__new__(cls)
        obj.context = context
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, context: SeriesContext) -> "MultiSeries":
        return cls._raw(context, {})

    @classmethod
    def one(cls, context: SeriesContext) -> "MultiSeries":
        return cls.constant(context, 1)

    @classmethod
    def constant(cls, context: SeriesContext, value) -> "MultiSeries":
        return cls(context, {(0,) * context.num_vars: value})

    @classmethod
    def monomial(cls, context: SeriesContext, exponent: Sequence[int], coefficient=1):
        """Single term; the zero series if the exponent is past the truncation."""
        return cls(context, {tuple(exponent): coefficient})

    @classmethod
    def variable(cls, context: SeriesContext, index: int) -> "MultiSeries":
        exp = [0] * context.num_vars
        exp[index] = 1
        return cls.monomial(context, exp)

    # -- access -----------------------------------------------------------

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def terms(self) -> list[tuple[Exponent, object]]:
        """Nonzero terms sorted by (degree, lexicographic exponent)."""
        ctx = self.context
        return sorted(self._terms.items(), key=lambda t: (ctx.degree(t[0]), t[0]))

    def support(self) -> set[Exponent]:
        return set(self._terms)

    def coefficient(self, exponent: Sequence[int]):
        exponent = tuple(exponent)
        if len(exponent) != self.context.num_vars:
            raise DimensionError(f"exponent {exponent} has the wrong length")
        if self.context.degree(exponent) > self.context.order:
            raise TruncationError(
                f"exponent {exponent} is beyond truncation order {self.context.order}"
            )
        return self._terms.get(exponent, 0)

    def constant_term(self):
        return self._terms.get((0,) * self.context.num_vars, 0)

    def is_integral(self) -> bool:
        return all(
            isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1)
            for c in self._terms.values()
        )

    # -- arithmetic -------------------------------------------------------

    def _same(self, other: "MultiSeries") -> None:
        if self.context != other.context:
            raise ContextMismatchError(f"{self.context} != {other.context}")

    def _lift(self, other) -> "MultiSeries":
        if isinstance(other, MultiSeries):
            self._same(other)
            return other
        return MultiSeries.constant(self.context, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            total = out.get(exp, 0) + c
            if total:
                out[exp] = total
            else:
                out.pop(exp, None)
        return MultiSeries._raw(self.context, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries._raw(self.context, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def _graded(self):
        deg = self.context.degree
        return sorted(((deg(e), e, c) for e, c in self._terms.items()), key=lambda t: t[0])

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            if not other:
                return MultiSeries.zero(self.context)
            return MultiSeries._raw(self.context, {e: c * other for e, c in self._terms.items()})
        self._same(other)
        order = self.context.order
        left, right = self._graded(), other._graded()
        if len(left) > len(right):
            left, right = right, left
        out: dict[Exponent, object] = {}
        get = out.get
        for da, ea, ca in left:
            room = order - da
            for db, eb, cb in right:
                if db > room:
                    break
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        return MultiSeries._raw(self.context, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers; use inverse() first")
        result = MultiSeries.one(self.context)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "MultiSeries":
        """Multiplicative inverse; requires constant term +1 or -1."""
        c0 = self.constant_term()
        if c0 not in (1, -1):
            raise ConstantTermError("inverse() needs constant term +-1")
        x = 1 - self * c0  # no constant term
        acc = MultiSeries.one(self.context)
        power = MultiSeries.one(self.context)
        while True:
            power = power * x
            if not power:
                break
            acc = acc + power
        return acc * c0

    def __eq__(self, other):
        if isinstance(other, MultiSeries):
            return self.context == other.context and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiSeries.constant(self.context, other)
        return NotImplemented

    __hash__ = None

    def truncate(self, order: int) -> "MultiSeries":
        return MultiSeries(self.context.with_order(order), self._terms)

    # -- formatting -------------------------------------------------------

    def __repr__(self):
        return f"MultiSeries({self.to_plain(one_line=True)}, order={self.context.order})"

    def to_plain(self, one_line: bool = False) -> str:
        names = self.context.var_names
        lines = []
        for exp, c in self.terms():
            mono = " ".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, exp) if e
            )
            lines.append(f"{c} * {mono}" if mono else f"{c}")
        if not lines:
            lines = ["0"]
        return " + ".join(lines) if one_line else "\n".join(lines)

    def to_dict(self) -> dict:
        out = {
            "vars": list(self.context.var_names),
            "order": self.context.order,
            "terms": [[list(e), str(c)] for e, c in self.terms()],
        }
        if self.context.weights is not None:
            out["weights"] = list(self.context.weights)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> "MultiSeries":
        ctx = SeriesContext(tuple(data["vars"]), int(data["order"]), data.get("weights"))
        terms = []
        for exp, text in data["terms"]:
            value = Fraction(text)
            terms.append((exp, int(value) if value.denominator == 1 else value))
        return cls(ctx, terms)

    @classmethod
    def from_json(cls, text: str) -> "MultiSeries":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class FactorSpec:
    """The factor (1 - sign * q^exponent) ** (-power)."""

    exponent: Exponent
    sign: int
    power: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", tuple(self.exponent))
        if self.sign not in (1, -1):
            raise ValueError("factor sign must be +1 or -1")
        if self.power < 0:
            raise ValueError("factor power must be >= 0")
        if min(self.exponent) < 0 or not any(self.exponent):
            raise ValueError("factor exponent must be nonnegative and nonzero")

    def render(self, names: Sequence[str]) -> str:
        mono = "".join(
            n if e == 1 else f"{n}^{{{e}}}" for n, e in zip(names, self.exponent) if e
        )
        op = "-" if self.sign > 0 else "+"
        return f"(1{op}{mono})^{{-{self.power}}}"


def binomial_power_coefficient(k: int, j: int) -> int:
    """Coefficient of y^j in (1 - y)^(-k), for any integer k."""
    if k >= 0:
        return comb(k + j - 1, j) if k else int(j == 0)
    return (-1) ** j * comb(-k, j)


def expand_power(
    context: SeriesContext, exponent: Sequence[int], sign: int, power: int
) -> MultiSeries:
    """(1 - sign * q^exponent) ** (-power) for any integer power."""
    exponent = tuple(exponent)
    step = context.degree(exponent)
    if step <= 0:
        raise ValueError(f"monomial {exponent} has nonpositive degree; cannot expand")
    terms = {}
    j = 0
    while j * step <= context.order:
        c = binomial_power_coefficient(power, j) * sign**j
        if power < 0 and j > -power:
            break
        if c:
            terms[tuple(j * e for e in exponent)] = c
        j += 1
    return MultiSeries(context, terms)


def expand_factor(context: SeriesContext, factor: FactorSpec) -> MultiSeries:
    if factor.power == 0:
        return MultiSeries.one(context)
    return expand_power(context, factor.exponent, factor.sign, factor.power)


def product_of_factors(context: SeriesContext, factors: Iterable[FactorSpec], start=None):
    """Multiply the expanded factors into ``start`` (default 1)."""
    acc = MultiSeries.one(context) if start is None else start
    for f in factors:
        if f.power and context.degree(f.exponent) <= context.order:
            acc = acc * expand_factor(context, f)
    return acc


def macmahon_power(context: SeriesContext, delta_exponent: Sequence[int], n: int) -> MultiSeries:
    """M(-q^delta)^n with M(x) = prod_{m>=1} (1 - x^m)^(-m)."""
    delta_exponent = tuple(delta_exponent)
    if min(delta_exponent) < 0 or not any(delta_exponent):
        raise ValueError("delta exponent must be nonnegative and nonzero")
    step = context.degree(delta_exponent)
    acc = MultiSeries.one(context)
    if n == 0:
        return acc
    m = 1
    while m * step <= context.order:
        # (1 - (-q^d)^m)^(-m n) = (1 - (-1)^m q^{m d})^(-m n)
        acc = acc * expand_power(
            context, tuple(m * d for d in delta_exponent), (-1) ** m, m * n
        )
        m += 1
    return acc


def substitute(
    a: MultiSeries,
    target: SeriesContext,
    exponent_map: Sequence[Sequence[int]],
    scalars: Sequence | None = None,
) -> MultiSeries:
    """Send source variable i to ``scalars[i] * q^exponent_map[i]`` in ``target``.

    Map rows may contain negative entries (e.g. t -> q_1^-1); every image
    exponent that actually occurs must be nonnegative.
    """
    src = a.context
    if len(exponent_map) != src.num_vars:
        raise DimensionError("exponent map needs one row per source variable")
    rows = [tuple(r) for r in exponent_map]
    for r in rows:
        if len(r) != target.num_vars:
            raise DimensionError("exponent map rows must match the target variables")
    scalars = [1] * src.num_vars if scalars is None else list(scalars)
    out: dict[Exponent, object] = {}
    for exp, c in a._terms.items():
        image = [0] * target.num_vars
        coef = c
        for e, row, s in zip(exp, rows, scalars):
            if not e:
                continue
            coef = coef * s**e
            for k, v in enumerate(row):
                image[k] += e * v
        if min(image) < 0:
            raise SubstitutionDomainError(
                f"term {exp} maps to exponent {tuple(image)} with a negative entry"
            )
        image = tuple(image)
        if target.degree(image) <= target.order:
            out[image] = out.get(image, 0) + coef
    return MultiSeries(target, out)


def log_series(a: MultiSeries) -> MultiSeries:
    """log(a) for a series with constant term 1, with Fraction coefficients."""
    if a.constant_term() != 1:
        raise ConstantTermError("log_series needs constant term 1")
    x = a - 1
    acc = MultiSeries.zero(a.context)
    power = MultiSeries.one(a.context)
    k = 1
    while True:
        power = power * x
        if not power:
            break
        acc = acc + power * Fraction((-1) ** (k + 1), k)
        k += 1
    return acc


def exp_series(a: MultiSeries) -> MultiSeries:
    """exp(a) for a series with zero constant term."""
    if a.constant_term() != 0:
        raise ConstantTermError("exp_series needs constant term 0")
    acc = MultiSeries.one(a.context)
    term = MultiSeries.one(a.context)
    k = 1
    while True:
        term = term * a * Fraction(1, k)
        if not term:
            break
        acc = acc + term
        k += 1
    return acc


def normalize(series: MultiSeries) -> MultiSeries:
    """Turn integral Fractions back into ints."""
    terms = {}
    for e, c in series._terms.items():
        if isinstance(c, Fraction) and c.denominator == 1:
            c = int(c)
        terms[e] = c
    return MultiSeries._raw(series.context, terms)
