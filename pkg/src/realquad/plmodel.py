"""Piecewise-linear model maps on [0, n] and their Markov edge dynamics.

The PL model interpolates j -> m_j linearly on each edge [j-1, j].  Edge
covering gives an integer transfer matrix; cycles of covering edges inside
the increasing laps certify strong obstruction, and the spectral radius of
the transfer matrix is an entropy oracle for the kneading module.

All interval arithmetic is exact rational: fixed points and edge covers are
combinatorial facts and get no floating-point fuzz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .combinatorics import Combinatorics, Shape, _laps, require_admissible, shape_of
from .errors import RealQuadError, WrongShapeError


@dataclass(frozen=True)
class PLModel:
    """The interval map of a combinatorics, with laps and critical data."""

    c: Combinatorics
    laps: tuple  # ((a, b, direction), ...)
    critical_indices: tuple  # (j_minus, j_plus) by index

    @classmethod
    def build(cls, c: Combinatorics) -> "PLModel":
        require_admissible(c)
        return cls(c=c, laps=tuple(_laps(c)), critical_indices=c.critical_indices)

    @property
    def n(self) -> int:
        return self.c.n

    def eval(self, x) -> Fraction:
        """Exact value at x in [0, n]."""
        x = Fraction(x)
        if not 0 <= x <= self.n:
            raise ValueError(f"{x} outside [0, {self.n}]")
        j = min(int(x), self.n - 1)  # edge [j, j+1]
        a, b = self.c.m[j], self.c.m[j + 1]
        return Fraction(a) + (b - a) * (x - j)

    def edge_image(self, edge: int):
        """Image interval (lo, hi) of edge I(edge) = [edge-1, edge]."""
        a, b = self.c.m[edge - 1], self.c.m[edge]
        return (min(a, b), max(a, b))

    def markov_matrix(self) -> List[List[int]]:
        """n x n 0/1 matrix: row i covers column k iff I(i) maps over I(k)."""
        n = self.n
        matrix = [[0] * n for _ in range(n)]
        for i in range(1, n + 1):
            lo, hi = self.edge_image(i)
            for k in range(lo + 1, hi + 1):
                matrix[i - 1][k - 1] = 1
        return matrix

    def increasing_lap_edges(self) -> List[int]:
        """Edges [e-1, e] lying inside an increasing lap."""
        edges = []
        for a, b, direction in self.laps:
            if direction > 0:
                edges.extend(range(a + 1, b + 1))
        return edges


def build(c: Combinatorics) -> PLModel:
    return PLModel.build(c)


@dataclass(frozen=True)
class LevyCertificate:
    """A periodic system of covering edges certifying strong obstruction."""

    period: int
    intervals: tuple  # 1-based edge indices, in orbit order
    rotation_number: Fraction

    def to_json_dict(self) -> dict:
        return {
            "period": self.period,
            "intervals": list(self.intervals),
            "rotation": f"{self.rotation_number.numerator}/"
            f"{self.rotation_number.denominator}",
        }


def _rotation_of(cycle: Sequence[int]) -> Optional[Fraction]:
    """Rotation number of the successor map on the sorted interval list.

    Returns None unless the successor permutation is a single rotation.  The
    reported value is the orientation-canonical representative min(m, p-m)/p.
    """
    p = len(cycle)
    order = sorted(cycle)
    position = {e: i for i, e in enumerate(order)}
    successor = {cycle[i]: cycle[(i + 1) % p] for i in range(p)}
    shift = None
    for e in cycle:
        s = (position[successor[e]] - position[e]) % p
        if shift is None:
            shift = s
        elif s != shift:
            return None
    return Fraction(min(shift, (p - shift) % p), p)


def find_levy_certificate(
    model: PLModel, max_period: Optional[int] = None
) -> Optional[LevyCertificate]:
    """Search covering cycles on increasing-lap edges satisfying:

    1. every interval lies inside an increasing lap,
    2. the intervals are pairwise disjoint (no shared endpoint),
    3. the successor map preserves cyclic order (single rotation).

    Only +-+ bimodal models qualify; cycles are explored by period and then
    lexicographically from the least starting edge, so the result is
    deterministic.  None means no certificate was found up to max_period.
    """
    if shape_of(model.c) is not Shape.PLUS_MINUS_PLUS:
        raise WrongShapeError(
            f"({model.c}) is not of +-+ shape; Levy search needs both "
            "increasing outer laps"
        )
    if max_period is None:
        max_period = model.n
    if max_period < 2:
        raise RealQuadError("max_period must be >= 2")

    allowed = set(model.increasing_lap_edges())
    covers = {
        e: sorted(
            k
            for k in range(model.edge_image(e)[0] + 1, model.edge_image(e)[1] + 1)
            if k in allowed
        )
        for e in allowed
    }

    def disjoint(path, e):
        return all(abs(e - other) >= 2 for other in path)

    def dfs(path, start, period):
        e = path[-1]
        if len(path) == period:
            if start in covers[e]:
                rotation = _rotation_of(path)
                if rotation is not None:
                    return LevyCertificate(
                        period=period,
                        intervals=tuple(path),
                        rotation_number=rotation,
                    )
            return None
        for nxt in covers[e]:
            if nxt == start or not disjoint(path, nxt):
                continue
            path.append(nxt)
            result = dfs(path, start, period)
            if result is not None:
                return result
            path.pop()
        return None

    for period in range(2, max_period + 1):
        for start in sorted(allowed):
            found = dfs([start], start, period)
            if found is not None:
                return found
    return None


def period_two_critical_shortcut(c: Combinatorics) -> bool:
    """+-+ shape with a critical point on a two-cycle forces obstruction."""
    require_admissible(c)
    if shape_of(c) is not Shape.PLUS_MINUS_PLUS:
        return False
    for j in c.critical_indices:
        if c.m[j] != j and c.m[c.m[j]] == j:
            return True
    return False


def transfer_entropy(model: PLModel, rel_tol: float = 1e-10) -> float:
    """log of the spectral radius of the Markov matrix, by power iteration.

    The iteration runs on A + I so that period cycles in the edge graph do
    not make the norm ratio oscillate; the shift is subtracted at the end.
    """
    matrix = model.markov_matrix()
    n = len(matrix)
    shifted = [[matrix[i][k] + (1 if i == k else 0) for k in range(n)] for i in range(n)]
    vec = [1.0] * n
    estimate = 0.0
    for _ in range(100000):
        nxt = [sum(shifted[i][k] * vec[k] for k in range(n)) for i in range(n)]
        norm = sum(nxt)
        if norm == 0:  # pragma: no cover - rows always cover an edge
            return 0.0
        new_estimate = norm / sum(vec)
        vec = [v / norm for v in nxt]
        if abs(new_estimate - estimate) <= rel_tol * abs(new_estimate):
            estimate = new_estimate
            break
        estimate = new_estimate
    rho = estimate - 1.0
    if rho <= 1.0:
        return 0.0
    return math.log(rho)
