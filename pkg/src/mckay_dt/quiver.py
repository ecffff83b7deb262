"""McKay quivers, the cubic superpotential, and the stability-parameter space.

Arrow labels use the frozen vertex indexing of :mod:`mckay_dt.roots`:
``r_{i,j}`` for the edge arrow i -> j, ``l_i`` for the loop at i and
``r_inf`` for the framing arrow into rho_0. When two vertices are joined by
several Dynkin edges (affine A_1) the copies are told apart by a suffix,
``r_{0,1;1}`` and ``r_{0,1;2}``.

Stability is modelled only through parameters, dot products, slopes and
walls; no moduli of modules are enumerated here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import NonGenericError
from .roots import (
    AffineRealRoot,
    DynkinGraph,
    RootVector,
    affine_positive_real_roots,
    as_label,
    build_diagram,
    imaginary_root,
    sort_key,
)
from .stability import StabilityParameter, as_fraction, lex_sign


@dataclass(frozen=True)
class Arrow:
    label: str
    kind: str  # "edge", "loop" or "framing"
    source: int | str
    target: int

    def __str__(self):
        return f"{self.label}: {self.source} -> {self.target}"


@dataclass(frozen=True)
class QuiverData:
    vertices: tuple[tuple[int, int], ...]  # (index, dim rho)
    arrows: tuple[Arrow, ...]
    framed: bool
    graph: DynkinGraph

    def arrows_of_kind(self, kind: str) -> list[Arrow]:
        return [a for a in self.arrows if a.kind == kind]

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def to_plain(self) -> str:
        lines = [f"vertex {i} dim {d}" for i, d in self.vertices]
        lines += [str(a) for a in self.arrows]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "label": str(self.graph.label),
            "framed": self.framed,
            "vertices": [{"index": i, "dim": d} for i, d in self.vertices],
            "arrows": [
                {"label": a.label, "kind": a.kind, "source": a.source, "target": a.target}
                for a in self.arrows
            ],
        }


def _edge_label(i: int, j: int, copy: int, multiplicity: int) -> str:
    return f"r_{{{i},{j}}}" if multiplicity == 1 else f"r_{{{i},{j};{copy}}}"


def mckay_quiver(label, framed: bool = False) -> QuiverData:
    """Doubled extended Dynkin diagram plus one loop per vertex."""
    graph = build_diagram(as_label(label), affine=True)
    delta = imaginary_root(graph.label)
    arrows = []
    for i, j, mult in graph.edges():
        for copy in range(1, mult + 1):
            arrows.append(Arrow(_edge_label(i, j, copy, mult), "edge", i, j))
            arrows.append(Arrow(_edge_label(j, i, copy, mult), "edge", j, i))
    for i in range(graph.vertex_count):
        arrows.append(Arrow(f"l_{i}", "loop", i, i))
    if framed:
        arrows.append(Arrow("r_inf", "framing", "inf", 0))
    vertices = tuple((i, d) for i, d in enumerate(delta))
    return QuiverData(vertices, tuple(arrows), bool(framed), graph)


@dataclass(frozen=True)
class SuperpotentialTerm:
    """A signed cubic monomial; ``path`` lists arrows in traversal order.

    The monomial r_{b,a} r_{a,b} l_a is stored as (l_a, r_{a,b}, r_{b,a}):
    written as a composition its rightmost arrow acts first.
    """

    sign: int
    path: tuple[str, str, str]

    def written(self) -> str:
        op = "+" if self.sign > 0 else "-"
        return op + " " + " ".join(reversed(self.path))


def superpotential(quiver: QuiverData) -> list[SuperpotentialTerm]:
    """Two terms per Dynkin edge: + r_{b,a} r_{a,b} l_a - l_b r_{a,b} r_{b,a}."""
    terms = []
    for i, j, mult in quiver.graph.edges():
        for copy in range(1, mult + 1):
            r_ij = _edge_label(i, j, copy, mult)
            r_ji = _edge_label(j, i, copy, mult)
            terms.append(SuperpotentialTerm(1, (f"l_{i}", r_ij, r_ji)))
            terms.append(SuperpotentialTerm(-1, (r_ji, r_ij, f"l_{j}")))
    return terms


def is_closed_cycle(quiver: QuiverData, path: Sequence[str]) -> bool:
    arrows = [quiver.arrow(name) for name in path]
    return all(
        arrows[k].target == arrows[(k + 1) % len(arrows)].source for k in range(len(arrows))
    )


# -- stability parameters -----------------------------------------------------


def zeta_imaginary(label) -> StabilityParameter:
    """(-r, 1, ..., 1) with r the sum of the nontrivial irrep dimensions."""
    delta = imaginary_root(as_label(label))
    r = sum(delta[1:])
    return StabilityParameter((-r,) + (1,) * (len(delta) - 1))


def zeta_im_perturbed(label, side: int) -> StabilityParameter:
    """zeta^{im} with a symbolic +-eps added at rho_0."""
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    base = zeta_imaginary(label).base
    unit = (1,) + (0,) * (len(base) - 1)
    return StabilityParameter(base, unit, side)


def theta_slope(zeta, zeta_inf, v: Sequence[int], v_inf: int) -> Fraction:
    """(zeta . v + zeta_inf * v_inf) / (sum v + v_inf)."""
    zeta = StabilityParameter.of(zeta)
    total = sum(v) + v_inf
    if total == 0:
        raise ZeroDivisionError("theta slope of the zero module")
    return (zeta.value(v) + as_fraction(zeta_inf) * v_inf) / total


def solve_zeta_inf(zeta, v: Sequence[int], v_inf: int = 1) -> Fraction:
    """The zeta_inf making theta_slope(zeta, zeta_inf, v, v_inf) vanish."""
    if v_inf <= 0:
        raise ValueError("v_inf must be positive to solve for zeta_inf")
    return -StabilityParameter.of(zeta).value(v) / v_inf


def dt_invariant_indexing(v: Sequence[int], label) -> tuple[int, tuple[int, ...]]:
    """(n, beta) with n = v_0 and beta_rho = v_0 dim rho - v_rho over rho != rho_0."""
    delta = imaginary_root(as_label(label))
    if len(v) != len(delta):
        raise ValueError("dimension vector has the wrong length")
    n = v[0]
    return n, tuple(n * d - x for d, x in zip(delta[1:], v[1:]))


# -- walls ---------------------------------------------------------------------


@dataclass(frozen=True)
class Wall:
    """Hyperplane zeta . normal = 0 with every root that defines it."""

    normal: RootVector
    roots: tuple
    imaginary: bool

    def __str__(self):
        kind = "imaginary" if self.imaginary else "real"
        return f"W{self.normal} ({kind})"


def _primitive(x: Sequence[int]) -> RootVector:
    g = 0
    for v in x:
        g = gcd(g, v)
    return tuple(v // g for v in x) if g else tuple(x)


def walls(label, degree_bound: int) -> list[Wall]:
    """One wall per real root of entry-sum <= bound, plus W_delta when it fits."""
    label = as_label(label)
    delta = imaginary_root(label)
    grouped: dict[RootVector, list] = {}
    for root in affine_positive_real_roots(label, degree_bound):
        grouped.setdefault(_primitive(root.vector), []).append(root)
    imaginary = []
    m = 1
    while m * sum(delta) <= degree_bound:
        imaginary.append(tuple(m * d for d in delta))
        m += 1
    out = [Wall(normal, tuple(rs), False) for normal, rs in grouped.items()]
    if imaginary:
        out.append(Wall(delta, tuple(imaginary), True))
    return sorted(out, key=lambda w: sort_key(w.normal))


def _eps_div(num: tuple[Fraction, Fraction], den: tuple[Fraction, Fraction]):
    """num / den in first-order eps arithmetic, as a (value, eps) pair."""
    n0, n1 = num
    d0, d1 = den
    if d0:
        return (n0 / d0, (n1 * d0 - n0 * d1) / (d0 * d0))
    if n0:
        raise NonGenericError("crossing parameter is not finite")
    return (n1 / d1, Fraction(0))


def crossed_walls(label, start, end, degree_bound: int) -> list[tuple[Wall, int]]:
    """Walls met by the segment start -> end, ordered by crossing time.

    Direction +1 means the segment enters the side zeta . alpha < 0. Both
    endpoints may carry symbolic perturbations; crossing times are then
    compared to first order in eps.
    """
    label = as_label(label)
    start = StabilityParameter.of(start)
    end = StabilityParameter.of(end)
    crossings = []
    for wall in walls(label, degree_bound):
        a = start.pair(wall.normal)
        b = end.pair(wall.normal)
        sa, sb = lex_sign(a), lex_sign(b)
        if sa == 0 or sb == 0:
            which = "start" if sa == 0 else "end"
            raise NonGenericError(
                f"{which} point lies on wall {wall.normal}", root=wall.normal
            )
        if sa == sb:
            continue
        t = _eps_div(a, (a[0] - b[0], a[1] - b[1]))
        crossings.append((t, wall, -1 if sa < 0 else 1))
    crossings.sort(key=lambda c: c[0])
    for (t1, w1, _), (t2, w2, _) in zip(crossings, crossings[1:]):
        if t1 == t2:
            raise NonGenericError(
                f"walls {w1.normal} and {w2.normal} are crossed simultaneously",
                root=w1.normal,
            )
    return [(wall, direction) for _, wall, direction in crossings]
