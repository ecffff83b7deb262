"""Golden data for the binary dihedral group of order 12 (type D_5).

Reference tables, in display layout:

* finite roots: ``(top, bottom)`` with top = rho_1 and bottom = rho_2..rho_5;
* affine families m*delta - beta: ``(top, bottom)`` with top = (rho_0, rho_1)
  and bottom = rho_2..rho_5, entries written as expressions in m;
* product factors as strings, with squares always written ``t_i^2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .quiver import zeta_im_perturbed
from .roots import DynkinLabel, finite_positive_roots, imaginary_root
from .invariants import chamber_factors, render_family_factor
from .series import FactorSpec

LABEL = DynkinLabel("D", 5)

POSITIVE_ROOTS = [
    (1, (0, 0, 0, 0)), (0, (1, 0, 0, 0)), (0, (0, 1, 0, 0)), (0, (0, 0, 1, 0)),
    (0, (0, 0, 0, 1)), (0, (1, 1, 0, 0)), (0, (0, 1, 1, 0)), (0, (0, 0, 1, 1)),
    (1, (0, 0, 1, 0)), (0, (1, 1, 1, 0)), (0, (0, 1, 1, 1)), (1, (0, 0, 1, 1)),
    (1, (0, 1, 1, 0)), (0, (1, 1, 1, 1)), (1, (0, 1, 1, 1)), (1, (1, 1, 1, 0)),
    (1, (1, 1, 1, 1)), (1, (0, 1, 2, 1)), (1, (1, 1, 2, 1)), (1, (1, 2, 2, 1)),
]

NEGATIVE_FAMILIES = [
    (("m", "m-1"), ("m", "2m", "2m", "m")),
    (("m", "m"), ("m-1", "2m", "2m", "m")),
    (("m", "m"), ("m", "2m-1", "2m", "m")),
    (("m", "m"), ("m", "2m", "2m-1", "m")),
    (("m", "m"), ("m", "2m", "2m", "m-1")),
    (("m", "m"), ("m-1", "2m-1", "2m", "m")),
    (("m", "m"), ("m", "2m-1", "2m-1", "m")),
    (("m", "m"), ("m", "2m", "2m-1", "m-1")),
    (("m", "m-1"), ("m", "2m", "2m-1", "m")),
    (("m", "m"), ("m-1", "2m-1", "2m-1", "m")),
    (("m", "m"), ("m", "2m-1", "2m-1", "m-1")),
    (("m", "m-1"), ("m", "2m", "2m-1", "m-1")),
    (("m", "m-1"), ("m", "2m-1", "2m-1", "m")),
    (("m", "m"), ("m-1", "2m-1", "2m-1", "m-1")),
    (("m", "m-1"), ("m", "2m-1", "2m-1", "m-1")),
    (("m", "m-1"), ("m-1", "2m-1", "2m-1", "m")),
    (("m", "m-1"), ("m-1", "2m-1", "2m-1", "m-1")),
    (("m", "m-1"), ("m-1", "2m-1", "2m-2", "m-1")),
    (("m", "m-1"), ("m", "2m-1", "2m-2", "m-1")),
    (("m", "m-1"), ("m-1", "2m-2", "2m-2", "m-1")),
]

CHAMBER_FACTORS = [
    "(1-(-q_0)^{m}q_1^{m-1}q_2^{m}q_3^{2m}q_4^{2m}q_5^{m})^{-m}",
    "(1-(-q_0)^{m}q_1^{m}q_2^{m-1}q_3^{2m}q_4^{2m}q_5^{m})^{-m}",
    "(1-(-q_0)^{m}q_1^{m}q_2^{m}q_3^{2m-1}q_4^{2m}q_5^{m})^{-m}",
    "(1-(-q_0)^{m}q_1^{m}q_2^{m}q_3^{2m}q_4^{2m-1}q_5^{m})^{-m}",
    "(1-(-q_0)^{m}q_1^{m}q_2^{m}q_3^{2m}q_4^{2m}q_5^{m-1})^{-m}",
    "(1-(-q_0)^{m}q_1^{m}q_2^{m-1}q_3^{2m-1}q_4^{2m}q_5^{m})^{-m}",
    "(1-(-q_0)^{m}q_1^{m}q_2^{m}q_3^{2m-1}q_4^{2m-1}q_5^{m})^{-m}",
    "(1-(-q_0)^{m}q_1^{m}q_2^{m}q_3^{2m}q_4^{2m-1}q_5^{m-1})^{-m}",
    "(1-(-q_0)^{m}q_1^{m-1}q_2^{m}q_3^{2m}q_4^{2m-1}q_5^{m})^{-m}",
    "(1-(-q_0)^{m}q_1^{m}q_2^{m-1}q_3^{2m-1}q_4^{2m-1}q_5^{m})^{-m}",
    "(1-(-q_0)^{m}q_1^{m}q_2^{m}q_3^{2m-1}q_4^{2m-1}q_5^{m-1})^{-m}",
    "(1-(-q_0)^{m}q_1^{m-1}q_2^{m}q_3^{2m}q_4^{2m-1}q_5^{m-1})^{-m}",
    "(1-(-q_0)^{m}q_1^{m-1}q_2^{m}q_3^{2m-1}q_4^{2m-1}q_5^{m})^{-m}",
    "(1-(-q_0)^{m}q_1^{m}q_2^{m-1}q_3^{2m-1}q_4^{2m-1}q_5^{m-1})^{-m}",
    "(1-(-q_0)^{m}q_1^{m-1}q_2^{m}q_3^{2m-1}q_4^{2m-1}q_5^{m-1})^{-m}",
    "(1-(-q_0)^{m}q_1^{m-1}q_2^{m-1}q_3^{2m-1}q_4^{2m-1}q_5^{m})^{-m}",
    "(1-(-q_0)^{m}q_1^{m-1}q_2^{m-1}q_3^{2m-1}q_4^{2m-1}q_5^{m-1})^{-m}",
    "(1-(-q_0)^{m}q_1^{m-1}q_2^{m}q_3^{2m-1}q_4^{2m-2}q_5^{m-1})^{-m}",
    "(1-(-q_0)^{m}q_1^{m-1}q_2^{m-1}q_3^{2m-1}q_4^{2m-2}q_5^{m-1})^{-m}",
    "(1-(-q_0)^{m}q_1^{m-1}q_2^{m-1}q_3^{2m-2}q_4^{2m-2}q_5^{m-1})^{-m}",
]

# Every factor carries (-q)^{m}, as the product formula requires.
PT_QT_FACTORS = [
    "(1-t_1(-q)^{m})^{-m}", "(1-t_2(-q)^{m})^{-m}", "(1-t_3(-q)^{m})^{-m}",
    "(1-t_4(-q)^{m})^{-m}", "(1-t_5(-q)^{m})^{-m}", "(1-t_2t_3(-q)^{m})^{-m}",
    "(1-t_3t_4(-q)^{m})^{-m}", "(1-t_4t_5(-q)^{m})^{-m}", "(1-t_1t_4(-q)^{m})^{-m}",
    "(1-t_2t_3t_4(-q)^{m})^{-m}", "(1-t_3t_4t_5(-q)^{m})^{-m}",
    "(1-t_1t_4t_5(-q)^{m})^{-m}", "(1-t_1t_3t_4(-q)^{m})^{-m}",
    "(1-t_2t_3t_4t_5(-q)^{m})^{-m}", "(1-t_1t_3t_4t_5(-q)^{m})^{-m}",
    "(1-t_1t_2t_3t_4(-q)^{m})^{-m}", "(1-t_1t_2t_3t_4t_5(-q)^{m})^{-m}",
    "(1-t_1t_3t_4^2t_5(-q)^{m})^{-m}", "(1-t_1t_2t_3t_4^2t_5(-q)^{m})^{-m}",
    "(1-t_1t_2t_3^2t_4^2t_5(-q)^{m})^{-m}",
]

_EXPR = re.compile(r"^(\d*)m(?:-(\d+))?$")


def eval_expr(text: str, m: int) -> int:
    """Evaluate table entries such as ``"2m-1"`` at a given m."""
    match = _EXPR.match(text)
    if not match:
        raise ValueError(f"bad entry {text!r}")
    a = int(match.group(1) or 1)
    b = int(match.group(2) or 0)
    return a * m - b


def root_from_display(top, bottom) -> tuple[int, ...]:
    """(top=rho_1, bottom=rho_2..rho_5) -> finite vector over rho_1..rho_5."""
    return (top,) + tuple(bottom)


def family_vector(family, m: int) -> tuple[int, ...]:
    (t0, t1), bottom = family
    return tuple(eval_expr(x, m) for x in (t0, t1) + tuple(bottom))


def render_chamber_factor(factor: FactorSpec) -> str:
    return render_family_factor(LABEL, factor)


def render_qt_factor(beta: tuple[int, ...]) -> str:
    mono = "".join(
        f"t_{i}" if b == 1 else f"t_{i}^{b}" for i, b in enumerate(beta) if i and b
    )
    return f"(1-{mono}(-q)^{{m}})^{{-m}}"


@dataclass
class SectionDiff:
    name: str
    expected: int
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.missing and not self.extra

    def line(self) -> str:
        matched = self.expected - len(self.missing)
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} d5 {self.name}: {matched}/{self.expected} match"
        if self.missing:
            text += f"; missing {self.missing}"
        if self.extra:
            text += f"; extra {self.extra}"
        return text


@dataclass
class D5Report:
    order: int
    sections: list

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.sections)

    def summary(self) -> str:
        return "\n".join(s.line() for s in self.sections)

    def to_dict(self) -> dict:
        return {
            "check": "d5",
            "order": self.order,
            "passed": self.passed,
            "sections": [
                {"name": s.name, "passed": s.passed, "expected": s.expected,
                 "missing": [str(x) for x in s.missing], "extra": [str(x) for x in s.extra]}
                for s in self.sections
            ],
        }


def _diff(name, expected, actual) -> SectionDiff:
    expected, actual = list(expected), list(actual)
    missing = [x for x in expected if x not in actual]
    extra = [x for x in actual if x not in expected]
    return SectionDiff(name, len(expected), missing, extra)


def verify_d5_example(order: int = 16) -> D5Report:
    """Recompute the D5 tables and diff them against the transcriptions.

    Sections (b) and (c) cover m = 1, 2 and need the m = 2 roots, whose
    entry-sums reach 16, so they are always computed at order >= 16; ``order``
    only raises that bound.
    """
    bound = max(order, 2 * sum(imaginary_root(LABEL)))
    sections = []

    golden_roots = [root_from_display(t, b) for t, b in POSITIVE_ROOTS]
    sections.append(_diff("(a) positive roots", golden_roots, finite_positive_roots(LABEL)))

    data = chamber_factors(LABEL, zeta_im_perturbed(LABEL, 1), bound)
    negative = [r for r in data.roots if r.m in (1, 2)]
    golden_fam = [family_vector(f, m) for m in (1, 2) for f in NEGATIVE_FAMILIES]
    sections.append(_diff("(b) negative real roots m=1,2", golden_fam, [r.vector for r in negative]))

    rendered = []
    for factor in data.factors:
        m = factor.exponent[0]
        if m in (1, 2):
            rendered.append((render_chamber_factor(factor), m))
    golden_factors = [(s, m) for m in (1, 2) for s in CHAMBER_FACTORS]
    sections.append(_diff("(c) chamber factors m<=2", golden_factors, rendered))

    qt = [render_qt_factor(r.beta) for r in data.roots if r.m == 1]
    sections.append(_diff("(d) PT (q,t) factors m=1", PT_QT_FACTORS, qt))
    return D5Report(bound, sections)
