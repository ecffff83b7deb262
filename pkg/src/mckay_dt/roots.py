"""Finite and affine ADE Dynkin data and their roots.

Vertex indexing (frozen; golden files depend on it). Index 0 is the affine
vertex rho_0; the finite diagram uses the affine indices 1..n, so a finite
root vector of length n embeds into the affine lattice by prepending a 0.

==========  ==============================================================
family      edges (affine vertex 0 included)
==========  ==============================================================
A_n         cycle 0-1-2-...-n-0 (A_1: a double edge 0=1)
D_n         2-3, 3-4-...-(n-1), (n-1)-1, (n-1)-n, and 0-3.
            For D_5: tails 1, 2, 5; 3 ~ {0, 2, 4}; 4 ~ {1, 3, 5}.
E_n         bottom row 1-2-...-(n-1), branch vertex n attached to 3;
            0 attaches to 6 (E_6), to 1 (E_7), to 7 (E_8).
==========  ==============================================================

Root vectors are plain tuples of ints. Everything is sorted by
(entry-sum, lexicographic) for deterministic output.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionError, LabelError, NonGenericError
from .stability import StabilityParameter

RootVector = tuple[int, ...]

_LABEL_RE = re.compile(r"^\s*([ADEade])\s*(\d+)\s*$")


@dataclass(frozen=True, order=True)
class DynkinLabel:
    family: str
    rank: int

    def __post_init__(self):
        family = str(self.family).upper()
        object.__setattr__(self, "family", family)
        if family not in ("A", "D", "E"):
            raise LabelError(f"unknown family {self.family!r}; expected A, D or E")
        rank = self.rank
        if not isinstance(rank, int) or isinstance(rank, bool):
            raise LabelError(f"rank must be an integer, got {rank!r}")
        if family == "A" and rank < 1:
            raise LabelError("A_n needs n >= 1")
        if family == "D" and rank < 4:
            raise LabelError("D_n needs n >= 4")
        if family == "E" and rank not in (6, 7, 8):
            raise LabelError("E_n needs n in {6, 7, 8}")

    @classmethod
    def parse(cls, text: str) -> "DynkinLabel":
        """Parse labels such as ``"A3"``, ``"d5"`` or ``"E7"``."""
        if isinstance(text, DynkinLabel):
            return text
        match = _LABEL_RE.match(str(text))
        if not match:
            raise LabelError(
                f"cannot parse label {text!r}; expected a family letter followed "
                "by a rank, e.g. A3, D5, E7"
            )
        return cls(match.group(1), int(match.group(2)))

    @property
    def num_irreps(self) -> int:
        """N, the number of vertices of the affine diagram."""
        return self.rank + 1

    def __str__(self):
        return f"{self.family}{self.rank}"


def as_label(label) -> DynkinLabel:
    return label if isinstance(label, DynkinLabel) else DynkinLabel.parse(label)


@dataclass(frozen=True)
class DynkinGraph:
    label: DynkinLabel
    affine: bool
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @property
    def affine_vertex_index(self) -> int | None:
        return 0 if self.affine else None

    def edges(self) -> list[tuple[int, int, int]]:
        """Undirected edges as (i, j, multiplicity) with i < j."""
        n = self.vertex_count
        return [
            (i, j, self.adjacency[i][j])
            for i in range(n)
            for j in range(i + 1, n)
            if self.adjacency[i][j]
        ]

    def vertex_name(self, i: int) -> int:
        """Affine index of vertex ``i`` (finite graphs start at rho_1)."""
        return i if self.affine else i + 1


def _finite_edges(label: DynkinLabel) -> list[tuple[int, int]]:
    n = label.rank
    if label.family == "A":
        return [(i, i + 1) for i in range(1, n)]
    if label.family == "D":
        edges = [(2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        return edges + [(1, n - 1), (n - 1, n)]
    edges = [(i, i + 1) for i in range(1, n - 1)]
    return edges + [(3, n)]


def _affine_edges(label: DynkinLabel) -> list[tuple[int, int]]:
    n = label.rank
    if label.family == "A":
        return [(0, 1), (0, n)]  # n == 1 gives the double edge
    if label.family == "D":
        return [(0, 3)]
    return [(0, {6: 6, 7: 1, 8: 7}[n])]


@lru_cache(maxsize=None)
def build_diagram(label, affine: bool = True) -> DynkinGraph:
    """Return the (extended) ADE graph with the frozen vertex indexing."""
    label = as_label(label)
    size = label.rank + 1
    b = [[0] * size for _ in range(size)]
    edges = _finite_edges(label) + (_affine_edges(label) if affine else [])
    for i, j in edges:
        b[i][j] += 1
        b[j][i] += 1
    if not affine:
        b = [row[1:] for row in b[1:]]
    return DynkinGraph(label, bool(affine), tuple(tuple(row) for row in b))


def _check(graph: DynkinGraph, *vectors: Sequence[int]) -> None:
    for x in vectors:
        if len(x) != graph.vertex_count:
            raise DimensionError(
                f"vector of length {len(x)} on a graph with {graph.vertex_count} vertices"
            )


def bilinear_form(graph: DynkinGraph, x: Sequence[int], y: Sequence[int]) -> Fraction:
    """Sum over i, j of x_i y_j (delta_ij - b_ij / 2)."""
    _check(graph, x, y)
    b = graph.adjacency
    total = Fraction(0)
    n = graph.vertex_count
    for i in range(n):
        if not x[i]:
            continue
        row = b[i]
        acc = Fraction(2 * y[i] - row[i] * y[i])
        for j in range(n):
            if j != i and row[j]:
                acc -= row[j] * y[j]
        total += x[i] * acc
    return total / 2


def quadratic_form(graph: DynkinGraph, x: Sequence[int]) -> Fraction:
    return bilinear_form(graph, x, x)


def simple_root(graph: DynkinGraph, i: int) -> RootVector:
    return tuple(int(k == i) for k in range(graph.vertex_count))


def reflect(graph: DynkinGraph, i: int, x: Sequence[int]) -> RootVector:
    """Fundamental reflection x - 2 (x, alpha_i) alpha_i."""
    _check(graph, x)
    if graph.adjacency[i][i]:
        raise ValueError(f"vertex {i} carries a loop; alpha_{i} is not fundamental")
    coeff = 2 * bilinear_form(graph, x, simple_root(graph, i))
    out = list(x)
    out[i] -= int(coeff)
    return tuple(out)


def sort_key(x: Sequence[int]):
    return (sum(x), tuple(x))


@lru_cache(maxsize=None)
def _finite_roots(label: DynkinLabel) -> tuple[RootVector, ...]:
    graph = build_diagram(label, affine=False)
    n = graph.vertex_count
    seen = {simple_root(graph, i) for i in range(n)}
    queue = deque(sorted(seen))
    while queue:
        x = queue.popleft()
        for i in range(n):
            y = reflect(graph, i, x)
            if min(y) < 0 or y in seen:
                continue
            seen.add(y)
            queue.append(y)
    return tuple(sorted(seen, key=sort_key))


def finite_positive_roots(label) -> list[RootVector]:
    """All positive roots of the finite system, by reflection closure.

    Vectors have length ``rank``; entry ``k`` belongs to vertex rho_{k+1}.
    """
    return list(_finite_roots(as_label(label)))


def embed(beta: Sequence[int]) -> RootVector:
    """Finite root -> affine lattice vector with a 0 at rho_0."""
    return (0,) + tuple(beta)


def highest_root(label) -> RootVector:
    return _finite_roots(as_label(label))[-1]


@lru_cache(maxsize=None)
def imaginary_root(label) -> RootVector:
    """delta = alpha_0 + highest root; entry at rho_0 is 1."""
    return (1,) + highest_root(as_label(label))


@dataclass(frozen=True)
class AffineRealRoot:
    vector: RootVector
    m: int
    beta: RootVector
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.m < 0 or (self.sign < 0 and self.m < 1):
            raise ValueError("need m >= 0 for +beta and m >= 1 for -beta")

    @property
    def degree(self) -> int:
        return sum(self.vector)

    @property
    def height(self) -> int:
        """Height of the finite part beta."""
        return sum(self.beta)

    def __str__(self):
        op = "+" if self.sign > 0 else "-"
        return f"{self.m}d{op}{''.join(map(str, self.beta[1:]))}={self.vector}"


def make_real_root(label, m: int, beta: Sequence[int], sign: int) -> AffineRealRoot:
    """Build m*delta + sign*beta from a finite (length-rank) or embedded beta."""
    label = as_label(label)
    delta = imaginary_root(label)
    beta = tuple(beta)
    if len(beta) == label.rank:
        beta = embed(beta)
    vec = tuple(m * d + sign * b for d, b in zip(delta, beta))
    return AffineRealRoot(vec, m, beta, sign)


@lru_cache(maxsize=None)
def _affine_real_roots(label: DynkinLabel, degree_bound: int) -> tuple[AffineRealRoot, ...]:
    delta = imaginary_root(label)
    width = sum(delta)
    out = []
    for beta in _finite_roots(label):
        ht = sum(beta)
        m = 0
        while m * width - ht <= degree_bound:
            if m * width + ht <= degree_bound:
                out.append(make_real_root(label, m, beta, 1))
            if m >= 1:
                out.append(make_real_root(label, m, beta, -1))
            m += 1
    return tuple(sorted(out, key=lambda r: sort_key(r.vector)))


def affine_positive_real_roots(label, degree_bound: int) -> list[AffineRealRoot]:
    """All m*delta + beta (m >= 0) and m*delta - beta (m >= 1) of entry-sum <= bound."""
    if degree_bound < 0:
        raise ValueError("degree_bound must be >= 0")
    return list(_affine_real_roots(as_label(label), int(degree_bound)))


@dataclass(frozen=True)
class RootClass:
    """Result of classify_vector: kind is 'real', 'imaginary' or 'not_a_root'."""

    kind: str
    m: int | None = None
    beta: RootVector | None = None
    sign: int | None = None


NOT_A_ROOT = RootClass("not_a_root")


def classify_vector(graph: DynkinGraph, x: Sequence[int]) -> RootClass:
    _check(graph, x)
    if not graph.affine:
        raise ValueError("classify_vector works on affine graphs")
    x = tuple(x)
    if min(x) < 0 or not any(x):
        return NOT_A_ROOT
    delta = imaginary_root(graph.label)
    m = x[0]
    rest = tuple(xi - m * d for xi, d in zip(x, delta))
    q = quadratic_form(graph, x)
    if q == 0:
        return RootClass("imaginary", m=m) if not any(rest) and m >= 1 else NOT_A_ROOT
    if q != 1:
        return NOT_A_ROOT
    finite = set(_finite_roots(graph.label))
    if rest[1:] in finite:
        return RootClass("real", m, rest, 1)
    neg = tuple(-v for v in rest)
    if m >= 1 and neg[1:] in finite:
        return RootClass("real", m, neg, -1)
    return NOT_A_ROOT


def split_real_roots(
    roots: Iterable[AffineRealRoot], zeta
) -> tuple[list[AffineRealRoot], list[AffineRealRoot]]:
    """Partition roots by the sign of zeta . alpha (negative side first)."""
    zeta = StabilityParameter.of(zeta)
    if zeta.is_perturbed:
        raise ValueError("split_real_roots takes an unperturbed parameter")
    negative, positive = [], []
    for root in roots:
        value = zeta.value(root.vector)
        if value == 0:
            raise NonGenericError(
                f"zeta {zeta} is orthogonal to root {root.vector}", root=root.vector
            )
        (negative if value < 0 else positive).append(root)
    return negative, positive
