"""Kneading numbers for unimodal maps and their moduli invariants.

The kneading number of a point is the signed binary series built from the
running products of lap signs along its orbit.  Evaluated at the two
critical values (and negated) it yields the invariants K1 and K2: K1 labels
the bone a map lives on, K2 orders points along a bone, and K1 alone
determines topological entropy through the constant-slope family
F_s(x) = s|x| - 1.

Combinatorics inputs are processed symbolically on the integer orbits of
their PL model, with an exact geometric closure for eventually periodic
tails, so K1 and K2 come out as exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .combinatorics import (
    Combinatorics,
    Shape,
    orient_minus_plus,
    require_admissible,
    shape_of,
)
from .errors import MismatchedK1, WrongShapeError

DEFAULT_TERMS = 64
EXTENDED_TERMS = 128


@dataclass(frozen=True)
class TentMap:
    """Constant-slope family F_s(x) = s|x| - 1, shape -+ with c1 = 0."""

    s: float
    c1: float = 0.0

    def eval(self, x: float) -> float:
        return self.s * abs(x) - 1.0


def sigma(x, kmap) -> int:
    """Lap sign of x: 0 at the primary critical point, -1 on the decreasing
    lap, +1 on the increasing lap (shape -+ convention)."""
    c1 = kmap.c1
    if x == c1:
        return 0
    return -1 if x < c1 else 1


def kneading_number(x0, kmap, terms: int = DEFAULT_TERMS) -> float:
    """Truncated kneading series of x0 under kmap.

    Terms halve, so the truncation error is below 2**-terms.  The sum is
    exact when the orbit reaches the critical point (sign 0).  Floating
    orbits that merely graze a preimage of the critical point keep the sign
    their side of it dictates; exact queries should go through the symbolic
    combinatorics path instead.
    """
    total = 0.0
    product = 1
    x = x0
    weight = 0.5
    for _ in range(terms):
        s = sigma(x, kmap)
        if s == 0:
            return total
        product *= s
        total += product * weight
        weight *= 0.5
        x = kmap.eval(x)
    return total


@dataclass(frozen=True)
class KneadingInvariants:
    k1: Fraction
    k2: Fraction
    truncation: int
    exact: bool

    def to_json_dict(self) -> dict:
        out = {
            "k1": float(self.k1),
            "k2": float(self.k2),
            "truncation": self.truncation,
            "exact": self.exact,
        }
        if self.exact:
            out["k1_rational"] = f"{self.k1.numerator}/{self.k1.denominator}"
            out["k2_rational"] = f"{self.k2.numerator}/{self.k2.denominator}"
        return out


def _exact_kneading_of_orbit(c: Combinatorics, start: int, c1: int):
    """Exact kneading number of an integer marked point.

    Follows the orbit until it hits the critical index (finite sum) or
    repeats (geometric closure of the periodic tail).  Returns the value and
    the number of orbit points consumed.
    """
    signs = []
    seen = {}
    orbit = []
    j = start
    while True:
        if j == c1:
            # finite: last factor is zero
            value = Fraction(0)
            product = 1
            for h, s in enumerate(signs):
                product *= s
                value += Fraction(product, 2 ** (h + 1))
            return value, len(signs)
        if j in seen:
            split = seen[j]
            prefix, cycle = signs[:split], signs[split:]
            value = Fraction(0)
            product = 1
            for h, s in enumerate(prefix):
                product *= s
                value += Fraction(product, 2 ** (h + 1))
            cycle_sum = Fraction(0)
            cprod = 1
            for i, s in enumerate(cycle):
                cprod *= s
                cycle_sum += Fraction(
                    product * cprod, 2 ** (split + i + 1)
                )
            period_product = 1
            for s in cycle:
                period_product *= s
            closure = 1 - Fraction(period_product, 2 ** len(cycle))
            return value + cycle_sum / closure, len(signs)
        seen[j] = len(orbit)
        orbit.append(j)
        signs.append(-1 if j < c1 else 1)
        j = c.m[j]


def invariants_of_combinatorics(c: Combinatorics) -> KneadingInvariants:
    """Exact (K1, K2) of a unimodal, polynomial, or co-polynomial vector.

    The vector is first oriented to -+ shape, under which the primary
    critical point is the argmin entry; bimodal input is rejected.
    """
    require_admissible(c)
    if shape_of(c) in (Shape.PLUS_MINUS_PLUS, Shape.MINUS_PLUS_MINUS):
        raise WrongShapeError(f"({c}) is bimodal; kneading needs a unimodal map")
    oriented = orient_minus_plus(c)
    m = oriented.m
    c1 = m.index(min(m))
    c2 = m.index(max(m))
    k_v1, used1 = _exact_kneading_of_orbit(oriented, m[c1], c1)
    k_v2, used2 = _exact_kneading_of_orbit(oriented, m[c2], c1)
    return KneadingInvariants(
        k1=-k_v1, k2=-k_v2, truncation=max(used1, used2), exact=True
    )


def k2_ordering_check(bone) -> bool:
    """True iff K2 strictly increases along a list of equal-K1 combinatorics."""
    invariants = [invariants_of_combinatorics(c) for c in bone]
    k1_values = {inv.k1 for inv in invariants}
    if len(k1_values) > 1:
        raise MismatchedK1(f"bone mixes K1 values {sorted(k1_values)}")
    k2 = [inv.k2 for inv in invariants]
    return all(b > a for a, b in zip(k2, k2[1:]))


def tent_k1(s: float, terms: int = DEFAULT_TERMS) -> float:
    """K1 of the constant-slope map with slope s."""
    tent = TentMap(s)
    return -kneading_number(tent.eval(tent.c1), tent, terms)


@lru_cache(maxsize=1)
def zero_entropy_threshold() -> float:
    """Largest K1 with zero entropy: the limit of tent_k1(s) as s drops to 1.

    tent_k1 jumps at s = 1 itself (the critical orbit turns periodic), so
    the limit is chased along s = 1 + 2^-k until it stabilizes.
    """
    previous = None
    for k in range(8, 46):
        value = tent_k1(1.0 + 2.0 ** (-k))
        if previous is not None and abs(value - previous) < 1e-9:
            return value
        previous = value
    return previous  # pragma: no cover - loop always stabilizes earlier


def entropy_from_k1(k1: float, tol: float = 1e-8) -> float:
    """Topological entropy (nats) of a unimodal map with invariant k1.

    Bisects the strictly monotone correspondence s -> K1(F_s) on [1, 2].
    Exactly log 2 at k1 = 1, exactly 0 at or below the zero-entropy
    threshold.
    """
    if not -1.0 <= k1 <= 1.0:
        raise ValueError(f"k1 = {k1} outside [-1, 1]")
    if k1 >= 1.0:
        return math.log(2.0)
    if k1 <= zero_entropy_threshold():
        return 0.0
    lo, hi = 1.0, 2.0
    while math.log(hi) - math.log(lo) > tol:
        mid = math.sqrt(lo * hi)
        if tent_k1(mid) < k1:
            lo = mid
        else:
            hi = mid
    return math.log(math.sqrt(lo * hi))


def entropy_of_combinatorics(c: Combinatorics) -> float:
    """Entropy through the kneading invariant (unimodal route)."""
    return entropy_from_k1(float(invariants_of_combinatorics(c).k1))
