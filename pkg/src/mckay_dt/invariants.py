"""Partition functions assembled from wall-crossing factors, and identity checks.

All q-series use the variables ``q_0 .. q_n`` of the affine vertices. The
GW series uses ``u`` (standing for e^{i lambda}) and ``t_1 .. t_n``.

Chamber formula: for a generic zeta,

    Z_zeta = [zeta . delta < 0 ? M(-q^delta)^N : 1] * prod_{zeta . alpha < 0} F(alpha)

over positive real roots alpha, where F(alpha) = (1 - (-1)^{a_0} q^alpha)^{-a_0}.
The bracketed MacMahon factor rests on the DT/PT correspondence; every chamber
result records whether it was used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ImaginaryWallError, NonGenericError
from .quiver import Wall, walls
from .roots import (
    AffineRealRoot,
    DynkinLabel,
    RootVector,
    affine_positive_real_roots,
    as_label,
    finite_positive_roots,
    imaginary_root,
)
from .series import (
    FactorSpec,
    MultiSeries,
    SeriesContext,
    expand_factor,
    expand_power,
    log_series,
    macmahon_power,
    product_of_factors,
    substitute,
)
from .stability import StabilityParameter, lex_sign

KINDS = ("NCDT", "DT+", "DT-", "PT+", "PT-", "GW", "Chamber")


def q_context(label, order: int) -> SeriesContext:
    return SeriesContext.q_variables(as_label(label).num_irreps, order)


def gw_context(label, order: int, grading: str = "total") -> SeriesContext:
    """Context in (u, t_1..t_n).

    ``grading="q"`` weighs u by |delta| and each t by -1, i.e. by the
    entry-sum of the image under u -> -q^delta, t_rho -> q_rho^-1. The GW
    series is supported where that weight is positive, so truncating there
    keeps exactly the terms that survive into a q-series of the same order.
    """
    label = as_label(label)
    names = ("u",) + tuple(f"t_{i}" for i in range(1, label.rank + 1))
    if grading == "total":
        return SeriesContext(names, order)
    if grading == "q":
        weights = (sum(imaginary_root(label)),) + (-1,) * label.rank
        return SeriesContext(names, order, weights)
    raise ValueError(f"unknown grading {grading!r}")


def _is_imaginary(label: DynkinLabel, vector: Sequence[int]) -> bool:
    delta = imaginary_root(label)
    m = vector[0]
    return m >= 1 and all(x == m * d for x, d in zip(vector, delta))


def wall_crossing_factor(alpha, label=None) -> FactorSpec:
    """(1 - (-1)^{a_0} q^alpha)^{-a_0} for a positive real root alpha."""
    if isinstance(alpha, AffineRealRoot):
        vector = alpha.vector
        if alpha.sign > 0 and alpha.m and not any(alpha.beta):
            raise ImaginaryWallError("imaginary root given as a real root")
    else:
        vector = tuple(alpha)
        if label is not None and _is_imaginary(as_label(label), vector):
            raise ImaginaryWallError(
                f"{vector} is imaginary; crossing W_delta has no real-root factor"
            )
    power = vector[0]
    return FactorSpec(vector, (-1) ** power, power)


# -- chambers -------------------------------------------------------------------


@dataclass(frozen=True)
class ChamberFactors:
    label: DynkinLabel
    order: int
    roots: tuple[AffineRealRoot, ...]
    factors: tuple[FactorSpec, ...]
    uses_imaginary_factor: bool

    @property
    def assumed_dt_pt(self) -> bool:
        return self.uses_imaginary_factor


def _check_generic(zeta: StabilityParameter, vector: Sequence[int]) -> int:
    s = zeta.sign(vector)
    if s == 0:
        raise NonGenericError(f"zeta {zeta} lies on the wall of {tuple(vector)}", root=tuple(vector))
    return s


def chamber_factors(label, zeta, order: int) -> ChamberFactors:
    label = as_label(label)
    zeta = StabilityParameter.of(zeta)
    if len(zeta) != label.num_irreps:
        raise ValueError(f"zeta needs {label.num_irreps} entries for {label}")
    delta = imaginary_root(label)
    uses_imaginary = False
    if sum(delta) <= order:
        uses_imaginary = _check_generic(zeta, delta) < 0
    roots, factors = [], []
    for root in affine_positive_real_roots(label, order):
        if _check_generic(zeta, root.vector) < 0:
            roots.append(root)
            factors.append(wall_crossing_factor(root))
    return ChamberFactors(label, order, tuple(roots), tuple(factors), uses_imaginary)


def chamber_partition_function(label, zeta, order: int) -> MultiSeries:
    data = chamber_factors(label, zeta, order)
    ctx = q_context(data.label, order)
    start = None
    if data.uses_imaginary_factor:
        start = macmahon_power(ctx, imaginary_root(data.label), data.label.num_irreps)
    return product_of_factors(ctx, data.factors, start)


def apply_crossings(label, series: MultiSeries, crossings: Sequence[tuple[Wall, int]]):
    """Transport Z across walls: multiply by F(alpha) entering zeta.alpha < 0,
    by its inverse when leaving, and by M(-q^delta)^{+-N} at W_delta."""
    label = as_label(label)
    ctx = series.context
    n = label.num_irreps
    for wall, direction in crossings:
        if wall.imaginary:
            series = series * macmahon_power(ctx, imaginary_root(label), direction * n)
            continue
        for root in wall.roots:
            f = wall_crossing_factor(root)
            if f.power == 0 or ctx.degree(f.exponent) > ctx.order:
                continue
            series = series * expand_power(ctx, f.exponent, f.sign, direction * f.power)
    return series


def _m_expr(a: int, b: int) -> str:
    """a*m - b written as m, 2m-1, m+1, ..."""
    if a == 0:
        return str(-b)
    head = "m" if a == 1 else f"{a}m"
    if b == 0:
        return head
    return f"{head}-{b}" if b > 0 else f"{head}+{-b}"


def render_family_factor(label, factor: FactorSpec) -> str:
    """Write a q-variable factor symbolically in m = its rho_0 exponent.

    ``(1-(-q_0)^{m}q_1^{m-1}...)^{-m}``; sign and power are read off the
    factor, so anything not of wall-crossing shape renders differently.
    """
    delta = imaginary_root(as_label(label))
    m = factor.exponent[0]
    parts = ["(-q_0)^{m}" if factor.sign == (-1) ** m else "q_0^{m}"]
    for i in range(1, len(delta)):
        parts.append(f"q_{i}^{{{_m_expr(delta[i], m * delta[i] - factor.exponent[i])}}}")
    power = "m" if factor.power == m else str(factor.power)
    return "(1-" + "".join(parts) + f")^{{-{power}}}"


# -- closed formulas ----------------------------------------------------------------


def pt_roots(label, orientation: int, order: int) -> list[AffineRealRoot]:
    """m delta - beta roots for orientation +1, m delta + beta (m >= 1) for -1."""
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    want = -orientation
    return [
        r
        for r in affine_positive_real_roots(label, order)
        if r.m >= 1 and r.sign == want
    ]


def z_pt(label, orientation: int, order: int) -> MultiSeries:
    label = as_label(label)
    factors = [wall_crossing_factor(r) for r in pt_roots(label, orientation, order)]
    return product_of_factors(q_context(label, order), factors)


def z_dt(label, orientation: int, order: int) -> MultiSeries:
    label = as_label(label)
    ctx = q_context(label, order)
    mac = macmahon_power(ctx, imaginary_root(label), label.num_irreps)
    factors = [wall_crossing_factor(r) for r in pt_roots(label, orientation, order)]
    return product_of_factors(ctx, factors, mac)


def z_ncdt(label, order: int) -> MultiSeries:
    label = as_label(label)
    ctx = q_context(label, order)
    mac = macmahon_power(ctx, imaginary_root(label), label.num_irreps)
    roots = pt_roots(label, 1, order) + pt_roots(label, -1, order)
    return product_of_factors(ctx, [wall_crossing_factor(r) for r in roots], mac)


def gw_factors(label, order: int, grading: str = "total") -> list[FactorSpec]:
    """(1 - t^beta u^m)^{-m} for beta in R^+ and m >= 1, within the truncation."""
    label = as_label(label)
    ctx = gw_context(label, order, grading)
    out = []
    for beta in finite_positive_roots(label):
        m = 1
        while ctx.degree((m,) + beta) <= order:
            out.append(FactorSpec((m,) + beta, 1, m))
            m += 1
    return out


def z_gw(label, order: int, grading: str = "total") -> MultiSeries:
    label = as_label(label)
    ctx = gw_context(label, order, grading)
    return product_of_factors(ctx, gw_factors(label, order, grading))


# -- identity checks ------------------------------------------------------------------


@dataclass
class IdentityReport:
    name: str
    label: str
    order: int
    passed: bool
    checked_terms: int
    first_mismatch: tuple | None = None
    lhs_coefficient: object = None
    rhs_coefficient: object = None
    mismatches: list = field(default_factory=list)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} {self.label} order={self.order} terms={self.checked_terms}"
        if not self.passed:
            text += (
                f" first mismatch at {self.first_mismatch}: "
                f"{self.lhs_coefficient} != {self.rhs_coefficient}"
            )
        return text

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "label": self.label,
            "order": self.order,
            "passed": self.passed,
            "checked_terms": self.checked_terms,
            "first_mismatch": list(self.first_mismatch) if self.first_mismatch else None,
            "lhs": None if self.lhs_coefficient is None else str(self.lhs_coefficient),
            "rhs": None if self.rhs_coefficient is None else str(self.rhs_coefficient),
            "mismatch_count": len(self.mismatches),
        }


def compare_series(name: str, label, lhs: MultiSeries, rhs: MultiSeries) -> IdentityReport:
    if lhs.context != rhs.context:
        raise ValueError("compare_series needs a shared context")
    ctx = lhs.context
    keys = sorted(lhs.support() | rhs.support(), key=lambda e: (ctx.degree(e), e))
    bad = [(e, lhs.coefficient(e), rhs.coefficient(e)) for e in keys
           if lhs.coefficient(e) != rhs.coefficient(e)]
    report = IdentityReport(name, str(label), ctx.order, not bad, len(keys), mismatches=bad)
    if bad:
        report.first_mismatch, report.lhs_coefficient, report.rhs_coefficient = bad[0]
    return report


def gw_to_q(label, series: MultiSeries, order: int) -> MultiSeries:
    """Apply u -> -q^delta, t_rho -> q_rho^{-1}."""
    label = as_label(label)
    delta = imaginary_root(label)
    n = label.num_irreps
    rows = [delta] + [tuple(-int(k == i) for k in range(n)) for i in range(1, n)]
    scalars = [-1] + [1] * (n - 1)
    return substitute(series, q_context(label, order), rows, scalars)


def check_gw_pt(label, order: int, gw: MultiSeries | None = None) -> IdentityReport:
    """Substitute the GW series into q-variables and compare with Z_PT(+)."""
    label = as_label(label)
    if gw is None:
        gw = z_gw(label, order, grading="q")
    lhs = gw_to_q(label, gw, order)
    return compare_series("gw-pt", label, lhs, z_pt(label, 1, order))


def check_crepant(label, order: int) -> IdentityReport:
    """Z_NCDT == M(-q^delta)^{-N} Z_DT(+) Z_DT(-)."""
    label = as_label(label)
    ctx = q_context(label, order)
    rhs = macmahon_power(ctx, imaginary_root(label), -label.num_irreps)
    rhs = rhs * z_dt(label, 1, order) * z_dt(label, -1, order)
    return compare_series("crepant", label, z_ncdt(label, order), rhs)


# -- BPS invariants -------------------------------------------------------------------------


@dataclass
class BpsTable:
    """Genus-0 fit of log Z_GW; ``values[(0, beta)]`` is n_{0,beta}."""

    label: str
    order: int
    values: dict
    residuals: dict  # beta -> {u-power: nonzero leftover coefficient}

    @property
    def residual_zero(self) -> bool:
        return not any(self.residuals.values())

    def nonzero(self) -> dict:
        return {k: v for k, v in self.values.items() if v}

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "order": self.order,
            "n": [
                {"g": g, "beta": list(beta), "value": str(v)}
                for (g, beta), v in sorted(self.values.items(), key=lambda kv: (sum(kv[0][1]), kv[0][1]))
                if v
            ],
            "residual_zero": self.residual_zero,
        }


def _genus0_kernel(d: int, top: int) -> dict[int, Fraction]:
    """(1/d) (2 sin(d lambda/2))^{-2} = -(1/d) u^d / (1 - u^d)^2, as u-power -> coeff."""
    out = {}
    k = 1
    while k * d <= top:
        out[k * d] = Fraction(-k, d)
        k += 1
    return out


def bps_extract(label, order: int) -> BpsTable:
    label = as_label(label)
    free = log_series(z_gw(label, order))
    by_class: dict[RootVector, dict[int, Fraction]] = {}
    for exp, c in free.terms():
        by_class.setdefault(exp[1:], {})[exp[0]] = Fraction(c)
    values: dict = {}
    residuals: dict = {}
    classes = sorted(
        (b for b in _classes(label.rank, order - 1)), key=lambda b: (sum(b), b)
    )
    for beta in classes:
        top = order - sum(beta)
        f = dict(by_class.get(beta, {}))
        for d in range(2, max(beta) + 1):
            if any(b % d for b in beta):
                continue
            n_small = values.get((0, tuple(b // d for b in beta)), 0)
            if n_small:
                for k, c in _genus0_kernel(d, top).items():
                    f[k] = f.get(k, 0) - n_small * c
        n = -f.get(1, Fraction(0))
        for k, c in _genus0_kernel(1, top).items():
            f[k] = f.get(k, 0) - n * c
        values[(0, beta)] = n
        residuals[beta] = {k: c for k, c in f.items() if c}
    return BpsTable(str(label), order, values, residuals)


def _classes(rank: int, max_degree: int):
    """Nonzero nonnegative vectors of length ``rank`` with entry-sum <= max_degree."""
    def rec(prefix, left, slots):
        if slots == 0:
            if any(prefix):
                yield tuple(prefix)
            return
        for v in range(left + 1):
            yield from rec(prefix + [v], left - v, slots - 1)

    if max_degree < 1:
        return
    yield from rec([], max_degree, rank)


def check_bps(label, order: int) -> tuple[BpsTable, IdentityReport]:
    """Fit BPS numbers and compare with n = -1 on R^+, 0 elsewhere, residual 0."""
    label = as_label(label)
    table = bps_extract(label, order)
    roots = set(finite_positive_roots(label))
    bad = []
    for (_, beta), value in sorted(table.values.items(), key=lambda kv: (sum(kv[0][1]), kv[0][1])):
        want = -1 if beta in roots else 0
        if value != want:
            bad.append((beta, value, want))
        elif table.residuals.get(beta):
            k, c = min(table.residuals[beta].items())
            bad.append((beta + (k,), c, 0))
    report = IdentityReport("bps", str(label), order, not bad, len(table.values), mismatches=bad)
    if bad:
        report.first_mismatch, report.lhs_coefficient, report.rhs_coefficient = bad[0]
    return table, report


# -- dispatch by kind ---------------------------------------------------------------------


@dataclass
class PartitionResult:
    label: DynkinLabel
    kind: str
    order: int
    series: MultiSeries
    factors: list
    macmahon: bool
    assumed_dt_pt: bool


def partition_function(label, kind: str, order: int, zeta=None, expand: bool = True) -> PartitionResult:
    """Compute one of KINDS; ``zeta`` is required for Chamber and refused otherwise.

    With ``expand=False`` only the factor list is produced and ``series`` is None.
    """
    label = as_label(label)
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if (kind == "Chamber") != (zeta is not None):
        raise ValueError("zeta is required for Chamber and not allowed for other kinds")
    if order < 0:
        raise ValueError("order must be >= 0")
    if kind == "Chamber":
        data = chamber_factors(label, zeta, order)
        series = chamber_partition_function(label, zeta, order) if expand else None
        return PartitionResult(label, kind, order, series, list(data.factors),
                               data.uses_imaginary_factor, data.assumed_dt_pt)
    if kind == "GW":
        series = z_gw(label, order) if expand else None
        return PartitionResult(label, kind, order, series, gw_factors(label, order), False, False)
    if kind == "NCDT":
        roots = pt_roots(label, 1, order) + pt_roots(label, -1, order)
        factors = [wall_crossing_factor(r) for r in roots]
        series = z_ncdt(label, order) if expand else None
        return PartitionResult(label, kind, order, series, factors, True, False)
    orientation = 1 if kind.endswith("+") else -1
    factors = [wall_crossing_factor(r) for r in pt_roots(label, orientation, order)]
    if kind.startswith("PT"):
        series = z_pt(label, orientation, order) if expand else None
        return PartitionResult(label, kind, order, series, factors, False, False)
    series = z_dt(label, orientation, order) if expand else None
    return PartitionResult(label, kind, order, series, factors, True, True)
