"""Combinatorics vectors of critically finite real quadratic maps.

A combinatorics is an integer vector (m_0, ..., m_n) recording where each of
the ordered marked points x_0 < ... < x_n is sent: x_j -> x_{m_j}.  The two
entries where m attains its maximum and minimum mark the critical points.
This module validates such vectors, classifies them by shape and dynamic
type, reduces non-minimal ones, computes the orbifold Euler characteristic,
and enumerates all admissible vectors of a given size.

All values are immutable; every function here is pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import (
    ChebyshevOrSquareExcluded,
    EnumerationBoundExceeded,
    InadmissibleError,
    IncompatiblePattern,
    NotCoPolynomialError,
    NotPolynomialError,
    ParseError,
    ReductionInadmissible,
)

ENUMERATION_BOUND_DEFAULT = 8


@dataclass(frozen=True)
class Combinatorics:
    """The vector m = (m_0, ..., m_n); n is implied by the length."""

    m: tuple

    def __post_init__(self):
        m = tuple(int(v) for v in self.m)
        object.__setattr__(self, "m", m)
        if len(m) < 2:
            raise ParseError("need at least 2 entries")
        n = len(m) - 1
        for j, v in enumerate(m):
            if not 0 <= v <= n:
                raise ParseError(f"entry m_{j} = {v} out of range [0, {n}]")

    @property
    def n(self) -> int:
        return len(self.m) - 1

    @property
    def critical_indices(self):
        """(j_minus, j_plus): positions of the extreme entries, by index.

        Only meaningful when the maximum and minimum are each attained once
        (true for every admissible vector).
        """
        m = self.m
        lo, hi = min(m), max(m)
        if m.count(lo) != 1 or m.count(hi) != 1:
            raise InadmissibleError(
                f"extremes of {self} are not attained at unique indices"
            )
        return tuple(sorted((m.index(lo), m.index(hi))))

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.m)

    def __iter__(self):
        return iter(self.m)

    def __len__(self):
        return len(self.m)

    def __getitem__(self, j):
        return self.m[j]


def parse(text: str) -> Combinatorics:
    """Parse comma-separated integers, optionally wrapped in brackets."""
    stripped = text.strip().strip("()[]<>⟨⟩")
    parts = [p.strip() for p in stripped.split(",")]
    if parts == [""]:
        raise ParseError("empty combinatorics string")
    values = []
    for p in parts:
        try:
            values.append(int(p))
        except ValueError:
            raise ParseError(f"non-integer token {p!r}") from None
    return Combinatorics(tuple(values))


class Shape(str, Enum):
    PLUS_MINUS_PLUS = "PlusMinusPlus"
    MINUS_PLUS_MINUS = "MinusPlusMinus"
    UNIMODAL_PLUS_MINUS = "UnimodalPlusMinus"
    UNIMODAL_MINUS_PLUS = "UnimodalMinusPlus"
    POLYNOMIAL = "Polynomial"
    CO_POLYNOMIAL = "CoPolynomial"


class DynamicType(str, Enum):
    B = "B"
    C = "C"
    D = "D"
    HALF_HYPERBOLIC = "HalfHyperbolic"
    TOTALLY_NON_HYPERBOLIC = "TotallyNonHyperbolic"


class Admissibility(NamedTuple):
    ok: bool
    reason: Optional[str]


def _cyclic_relabel(m: Sequence[int], s: int) -> tuple:
    """Relabel marked points by the cyclic shift s (the circle symmetry)."""
    size = len(m)
    return tuple((m[(j + s) % size] - s) % size for j in range(size))


def _mountain_ok(seq: Sequence[int]) -> Optional[str]:
    """Check strictly-increasing-then-strictly-decreasing with unique peak.

    ``seq`` starts with the minimum.  Returns None when valid, else a reason.
    The descending run must stay strictly above the minimum.
    """
    top = max(seq)
    i = 1
    while i < len(seq) and seq[i] > seq[i - 1]:
        i += 1
    if seq[i - 1] != top:
        return "not increasing-then-decreasing after rotating the minimum to the front"
    while i < len(seq) and seq[i] < seq[i - 1]:
        i += 1
    if i != len(seq):
        return "not increasing-then-decreasing after rotating the minimum to the front"
    if len(seq) > 1 and seq[-1] == seq[0]:
        return "descending run returns to the minimum"
    return None


def _check_admissible_core(c: Combinatorics) -> Admissibility:
    m = c.m
    n = c.n
    lo, hi = min(m), max(m)
    spread = hi - lo

    if spread == n - 1 and not (m[0] == n or m[-1] == 0):
        return Admissibility(
            False,
            "condition 1: spread n-1 requires first entry n or last entry 0",
        )
    if spread not in (n, n - 1):
        return Admissibility(
            False,
            f"condition 1: max - min = {spread}, expected {n} or {n - 1}",
        )

    for value in (lo, hi):
        count = m.count(value)
        if count > 1:
            return Admissibility(
                False, f"condition 2: value {value} occurs {count} times"
            )
    for value in set(m):
        count = m.count(value)
        if count > 2:
            return Admissibility(
                False, f"condition 2: value {value} occurs {count} times"
            )

    k = m.index(lo)
    rotated = m[k:] + m[:k]
    reason = _mountain_ok(rotated)
    if reason is not None:
        return Admissibility(False, "condition 2: " + reason)
    return Admissibility(True, None)


def check_admissible(c: Combinatorics) -> Admissibility:
    """Admissibility: the spread condition plus the monotone rotation condition.

    The returned reason names the first violated condition.  When the only
    problem is the placement of an out-of-image critical point, the reason
    suggests the conforming cyclic relabeling.
    """
    result = _check_admissible_core(c)
    if result.ok:
        return result
    m, n = c.m, c.n
    if max(m) - min(m) == n - 1 and not (m[0] == n or m[-1] == 0):
        for s in range(1, n + 1):
            candidate = Combinatorics(_cyclic_relabel(m, s))
            if _check_admissible_core(candidate).ok:
                return Admissibility(
                    False,
                    "condition 1: out-of-image critical point must sit first "
                    "(entry n) or last (entry 0); relabel cyclically as "
                    f"({candidate})",
                )
    return result


def require_admissible(c: Combinatorics) -> None:
    result = check_admissible(c)
    if not result.ok:
        raise InadmissibleError(f"{c}: {result.reason}")


# -- orbit helpers -------------------------------------------------------------


def orbit_of(c: Combinatorics, j: int) -> list:
    """Forward orbit j, m_j, m_{m_j}, ... up to (and excluding) the first repeat."""
    seen = []
    seen_set = set()
    while j not in seen_set:
        seen.append(j)
        seen_set.add(j)
        j = c.m[j]
    return seen

def _strict_forward_orbit(c: Combinatorics, j: int) -> list:
    """Orbit of m_j (images of j, excluding j itself unless revisited)."""
    return orbit_of(c, c.m[j])


def _cycle_of(c: Combinatorics, j: int) -> Optional[frozenset]:
    """The cycle j eventually falls into; None replaced by the actual set."""
    orbit = orbit_of(c, j)
    tail = c.m[orbit[-1]]
    start = orbit.index(tail)
    return frozenset(orbit[start:])


def _is_periodic(c: Combinatorics, j: int) -> bool:
    return j in _cycle_of(c, j)


def critical_orbit_periods(c: Combinatorics):
    """Period of each critical index (None when only eventually periodic)."""
    periods = []
    for j in c.critical_indices:
        cycle = _cycle_of(c, j)
        periods.append(len(cycle) if j in cycle else None)
    return tuple(periods)


def postcritical_set(c: Combinatorics) -> frozenset:
    """Indices hit by some strictly-forward image of a critical point."""
    jm, jp = c.critical_indices
    points = set()
    for j in (jm, jp):
        points.update(orbit_of(c, c.m[j]))
    return frozenset(points)


# -- minimality -----------------------------------------------------------------


def _edge_images(c: Combinatorics):
    """Image interval [a, b] of each edge [j-1, j], j = 1..n."""
    m = c.m
    return [
        (min(m[j - 1], m[j]), max(m[j - 1], m[j])) for j in range(1, c.n + 1)
    ]


def _expansive_edges(c: Combinatorics) -> list:
    """Flag per edge: does some forward image contain a critical index?

    Containment is interpreted for the closed image interval; the edge itself
    counts as its own 0th image.  The non-expansive edges are exactly the
    ones that collapse in the realized map.
    """
    n = c.n
    jm, jp = c.critical_indices
    images = _edge_images(c)

    # reachable edge sets under the edge-covering relation
    covers = [set(range(a + 1, b + 1)) for (a, b) in images]  # 1-based edges

    flags = []
    for e in range(1, n + 1):
        seen = {e}
        frontier = [e]
        good = False
        while frontier and not good:
            nxt = []
            for edge in frontier:
                a, b = edge - 1, edge
                if a <= jm <= b or a <= jp <= b:
                    good = True
                    break
                lo, hi = images[edge - 1]
                if lo <= jm <= hi or lo <= jp <= hi:
                    good = True
                    break
                for other in covers[edge - 1]:
                    if other not in seen:
                        seen.add(other)
                        nxt.append(other)
            frontier = nxt
        flags.append(good)
    return flags


def check_minimal(c: Combinatorics) -> bool:
    """All marked points critical or postcritical, and every edge expansive."""
    require_admissible(c)
    marked = set(c.critical_indices) | set(postcritical_set(c))
    if marked != set(range(c.n + 1)):
        return False
    return all(_expansive_edges(c))


def _remove_vertices(c: Combinatorics, keep: Sequence[int]) -> Combinatorics:
    keep = sorted(keep)
    relabel = {old: new for new, old in enumerate(keep)}
    return Combinatorics(tuple(relabel[c.m[old]] for old in keep))


def _collapse_edges(c: Combinatorics, dead_edges: Iterable[int]) -> Combinatorics:
    """Collapse each maximal run of dead (non-expansive) edges to a point."""
    n = c.n
    dead = set(dead_edges)
    # union-find-lite: group consecutive vertices joined by dead edges
    group = list(range(n + 1))
    for e in sorted(dead):
        a, b = e - 1, e
        group[b] = group[a]
    reps = sorted(set(group))
    relabel = {rep: i for i, rep in enumerate(reps)}
    new_m = {}
    for old in range(n + 1):
        src = relabel[group[old]]
        dst = relabel[group[c.m[old]]]
        if src in new_m and new_m[src] != dst:
            raise ReductionInadmissible(
                f"collapsing edges of {c} produced an inconsistent map",
                reduced=None,
            )
        new_m[src] = dst
    return Combinatorics(tuple(new_m[i] for i in range(len(reps))))


def simplify(c: Combinatorics) -> Combinatorics:
    """Reduce to a minimal combinatorics, or certify strong obstruction.

    Repeatedly removes marked points that are neither critical nor
    postcritical and collapses non-expansive edges, then renumbers.  If the
    final vector fails admissibility, raises ReductionInadmissible carrying
    the reduced vector: the input cannot be realized.
    """
    require_admissible(c)
    current = c
    while True:
        marked = set(current.critical_indices) | set(postcritical_set(current))
        if marked != set(range(current.n + 1)):
            current = _remove_vertices(current, marked)
            continue
        flags = _expansive_edges(current)
        if not all(flags):
            dead = [e for e, ok in enumerate(flags, start=1) if not ok]
            current = _collapse_edges(current, dead)
            continue
        break
    result = check_admissible(current)
    if not result.ok:
        raise ReductionInadmissible(
            f"reduction of {c} yields ({current}) which is not admissible: "
            f"{result.reason}; the combinatorics is strongly obstructed",
            reduced=current,
        )
    return current


# -- classification -------------------------------------------------------------


def _laps(c: Combinatorics):
    """Maximal monotone runs [(a, b, direction)] with direction +1/-1."""
    jm, jp = c.critical_indices
    cuts = [0, jm, jp, c.n]
    laps = []
    for a, b in zip(cuts, cuts[1:]):
        if a == b:
            continue
        laps.append((a, b, 1 if c.m[a + 1] > c.m[a] else -1))
    return laps


def shape_of(c: Combinatorics) -> Shape:
    require_admissible(c)
    jm, jp = c.critical_indices
    m = c.m
    if m[jm] == jm or m[jp] == jp:
        return Shape.POLYNOMIAL
    if m[jm] == jp or m[jp] == jm:
        return Shape.CO_POLYNOMIAL
    laps = _laps(c)
    if len(laps) == 3:
        return (
            Shape.PLUS_MINUS_PLUS if laps[0][2] > 0 else Shape.MINUS_PLUS_MINUS
        )
    if len(laps) == 2:
        return (
            Shape.UNIMODAL_PLUS_MINUS
            if laps[0][2] > 0
            else Shape.UNIMODAL_MINUS_PLUS
        )
    raise InadmissibleError(
        f"{c}: single monotone lap without a critical identification"
    )  # pragma: no cover - impossible for admissible vectors


def dynamic_type_of(c: Combinatorics) -> DynamicType:
    require_admissible(c)
    jm, jp = c.critical_indices
    cyc_m, cyc_p = _cycle_of(c, jm), _cycle_of(c, jp)
    per_m, per_p = jm in cyc_m, jp in cyc_p
    if per_m and per_p:
        return DynamicType.B if cyc_m == cyc_p else DynamicType.D
    if per_m or per_p:
        periodic, wanderer = (jm, jp) if per_m else (jp, jm)
        if _cycle_of(c, wanderer) == _cycle_of(c, periodic):
            return DynamicType.C
        return DynamicType.HALF_HYPERBOLIC
    return DynamicType.TOTALLY_NON_HYPERBOLIC


def euler_characteristic(c: Combinatorics) -> Fraction:
    """Orbifold Euler characteristic, exact.

    Each postcritical point is weighted by its ramification index: infinity
    on a periodic critical cycle, 4 when a single forward chain crosses both
    critical points before reaching it, else 2.
    """
    require_admissible(c)
    jm, jp = c.critical_indices
    post = postcritical_set(c)

    infinite = set()
    for j in (jm, jp):
        cycle = _cycle_of(c, j)
        if j in cycle:
            infinite.update(cycle)

    doubly = set()
    for first, second in ((jm, jp), (jp, jm)):
        tail = _strict_forward_orbit(c, first)
        if second in tail:
            doubly.update(_strict_forward_orbit(c, second))

    chi = Fraction(2)
    for x in post:
        if x in infinite:
            chi -= 1
        elif x in doubly:
            chi -= Fraction(3, 4)
        else:
            chi -= Fraction(1, 2)
    return chi


def _pl_fixed_point_components(c: Combinatorics) -> int:
    """Connected components of {x in [0, n] : f(x) = x} for the PL model."""
    m = c.m
    points = set()
    identity_edges = []
    for j in range(1, c.n + 1):
        a = j - 1
        slope = m[j] - m[a]
        # f(x) = m[a] + slope * (x - a) on [a, a+1]
        if slope == 1:
            if m[a] == a:
                identity_edges.append(j)
            continue
        x = Fraction(m[a] - slope * a, 1 - slope)
        if a <= x <= j:
            points.add(x)
    if not identity_edges:
        return len(points)
    components = 0
    covered = set()
    run_start = None
    prev = None
    for e in sorted(identity_edges):
        if run_start is None or e != prev + 1:
            components += 1
            run_start = e
        covered.update({Fraction(e - 1), Fraction(e)})
        prev = e
    return components + len(points - covered)


@dataclass(frozen=True)
class ClassificationReport:
    admissible: bool
    minimal: bool
    expansive: bool
    polynomial_shape: bool
    copolynomial_shape: bool
    shape: Shape
    dynamic_type: DynamicType
    n_pc: int
    chi: Fraction
    fixed_point_count: int

    def to_json_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "minimal": self.minimal,
            "expansive": self.expansive,
            "polynomial_shape": self.polynomial_shape,
            "copolynomial_shape": self.copolynomial_shape,
            "shape": self.shape.value,
            "dynamic_type": self.dynamic_type.value,
            "n_pc": self.n_pc,
            "chi": f"{self.chi.numerator}/{self.chi.denominator}"
            if self.chi.denominator != 1
            else str(self.chi.numerator),
            "fixed_point_count": self.fixed_point_count,
        }


def classify(c: Combinatorics) -> ClassificationReport:
    require_admissible(c)
    jm, jp = c.critical_indices
    m = c.m
    marked = set(c.critical_indices) | set(postcritical_set(c))
    expansive = all(_expansive_edges(c))
    return ClassificationReport(
        admissible=True,
        minimal=(marked == set(range(c.n + 1))) and expansive,
        expansive=expansive,
        polynomial_shape=(m[jm] == jm or m[jp] == jp),
        copolynomial_shape=(m[jm] == jp or m[jp] == jm),
        shape=shape_of(c),
        dynamic_type=dynamic_type_of(c),
        n_pc=len(postcritical_set(c)),
        chi=euler_characteristic(c),
        fixed_point_count=_pl_fixed_point_components(c),
    )


# -- transforms -----------------------------------------------------------------


def reverse_orientation(c: Combinatorics) -> Combinatorics:
    """180-degree rotation of the graph: entry j becomes n - m_{n-j}."""
    n = c.n
    return Combinatorics(tuple(n - c.m[n - j] for j in range(n + 1)))


def from_mapping_pattern(mapping: Sequence[int], criticals) -> Combinatorics:
    """Recover the unique combinatorics of a cyclically ordered pattern.

    ``mapping[j]`` is the index of the image of the j-th point in positive
    cyclic order; ``criticals`` names the two critical indices.  All cyclic
    relabelings are tried; the one yielding an admissible vector whose
    extreme entries land on the (relabeled) critical points wins.  Raises
    IncompatiblePattern when none exists.
    """
    size = len(mapping)
    criticals = tuple(criticals)
    if len(set(criticals)) != 2:
        raise IncompatiblePattern("need exactly two distinct critical indices")
    if any(not 0 <= v < size for v in mapping):
        raise IncompatiblePattern("mapping index out of range")

    found = {}
    for s in range(size):
        try:
            candidate = Combinatorics(_cyclic_relabel(mapping, s))
        except ParseError:  # pragma: no cover
            continue
        if not check_admissible(candidate).ok:
            continue
        shifted = tuple(sorted((c - s) % size for c in criticals))
        try:
            if candidate.critical_indices != shifted:
                continue
        except InadmissibleError:  # pragma: no cover - admissible => unique
            continue
        found[candidate.m] = candidate
    if not found:
        raise IncompatiblePattern(
            "the two critical values are neither adjacent in cyclic order "
            "nor separated by a single critical point; no real quadratic "
            "map realizes this pattern"
        )
    if len(found) > 1:
        raise IncompatiblePattern(
            f"ambiguous pattern: candidates {sorted(found)}"
        )  # pragma: no cover - excluded by uniqueness of the compatible vector
    return next(iter(found.values()))


def filom_pilgrim(p: int, q: int) -> Combinatorics:
    """The cyclic-rotation family (p, p+1, ..., q-1, 0, 1, ..., p-1)."""
    import math

    if not 0 < p < q:
        raise ParseError(f"need 0 < p < q, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise ParseError(f"p={p} and q={q} must be coprime")
    return Combinatorics(tuple(list(range(p, q)) + list(range(p))))


def enumerate_admissible(
    n: int,
    *,
    minimal: bool = False,
    nonpolynomial: bool = False,
    bound: int = ENUMERATION_BOUND_DEFAULT,
) -> list:
    """All admissible vectors of size n+1, lexicographically sorted.

    Candidates are built as rotations of increasing-then-decreasing value
    sequences, so the cost stays polynomial in the number of admissible
    vectors rather than (n+1)^(n+1).
    """
    if n < 1:
        raise EnumerationBoundExceeded("n must be >= 1")
    if n > bound:
        raise EnumerationBoundExceeded(f"n = {n} exceeds the bound {bound}")

    results = set()
    spreads = [(0, n)]
    if n >= 2:
        spreads += [(0, n - 1), (1, n)]
    for lo, hi in spreads:
        inner = list(range(lo + 1, hi))
        want = n + 1 - 2  # entries besides the min and the max
        for k in range(len(inner) + 1):
            if want - k > len(inner) or want - k < 0:
                continue
            for inc in itertools.combinations(inner, k):
                for dec in itertools.combinations(inner, want - k):
                    seq = (lo,) + inc + (hi,) + tuple(sorted(dec, reverse=True))
                    for r in range(n + 1):
                        candidate = Combinatorics(seq[r:] + seq[:r])
                        if candidate.m in results:
                            continue
                        if check_admissible(candidate).ok:
                            results.add(candidate.m)

    vectors = [Combinatorics(m) for m in sorted(results)]
    if nonpolynomial:
        vectors = [c for c in vectors if c.m[0] > 0 and c.m[-1] < c.n]
    if minimal:
        vectors = [c for c in vectors if check_minimal(c)]
    return vectors


def orient_minus_plus(c: Combinatorics) -> Combinatorics:
    """Reverse orientation when the first lap is increasing (-+ normal form)."""
    laps = _laps(c)
    return reverse_orientation(c) if laps[0][2] > 0 else c


def polynomial_from_copolynomial(c: Combinatorics) -> Combinatorics:
    """Append the fixed critical point to a co-polynomial combinatorics.

    The input is first oriented so its first lap decreases; the partner is
    then (m_0, ..., m_{n-1}, n+1) on one more marked point.
    """
    require_admissible(c)
    if shape_of(c) is not Shape.CO_POLYNOMIAL:
        raise NotCoPolynomialError(f"{c} is not of co-polynomial shape")
    oriented = orient_minus_plus(c)
    result = Combinatorics(oriented.m + (oriented.n + 1,))
    require_admissible(result)
    return result


_EXCLUDED_INVERSES = {(2, 0, 2), (0, 2, 0), (0, 1)}


def copolynomial_from_polynomial(c: Combinatorics) -> Combinatorics:
    """Delete the fixed critical point of a polynomial combinatorics.

    The two extreme polynomials (the squaring and Chebyshev vectors) have no
    co-polynomial partner and raise ChebyshevOrSquareExcluded.
    """
    if c.m in _EXCLUDED_INVERSES:
        raise ChebyshevOrSquareExcluded(
            f"({c}) has no co-polynomial partner"
        )
    require_admissible(c)
    if shape_of(c) is not Shape.POLYNOMIAL:
        raise NotPolynomialError(f"{c} is not of polynomial shape")
    oriented = c if c.m[-1] == c.n else reverse_orientation(c)
    if oriented.m[-1] != oriented.n:  # pragma: no cover - defensive
        raise NotPolynomialError(f"{c}: fixed critical point is not extreme")
    try:
        candidate = Combinatorics(oriented.m[:-1])
        require_admissible(candidate)
        if shape_of(candidate) is not Shape.CO_POLYNOMIAL:
            raise NotCoPolynomialError(str(candidate))
    except (ParseError, InadmissibleError, NotCoPolynomialError):
        raise ChebyshevOrSquareExcluded(
            f"({c}) has no co-polynomial partner"
        ) from None
    return candidate


def copolynomial_polynomial_pair(
    c: Combinatorics, *, inverse: bool = False
) -> Combinatorics:
    """Bidirectional wrapper around the polynomial correspondence."""
    if inverse:
        return copolynomial_from_polynomial(c)
    return polynomial_from_copolynomial(c)
