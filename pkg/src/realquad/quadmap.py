"""Numerics of real quadratic maps.

Three coordinate systems appear here:

* the fixed-point-centered form  f(x) = mu x / (x^2 + 2 kappa x + 1)  with
  critical points at -1 and 1 and a fixed point of multiplier mu at 0;
* its period-1 lift  F(t) = (1/pi) Arg(1 + kappa sin 2 pi t + i mu sin(2 pi t)/2)
  to the universal cover, where the whole pullback iteration lives;
* the canonical form (A x^2 + B)/(C x^2 + D) with A^2 + C^2 = B^2 + D^2,
  whose angle coordinates give the cylinder invariants (Sigma, Delta) of
  moduli space.

mu and kappa (and lift arguments) may be floats or DoubleDouble values; the
canonical-coordinate computation always runs in plain floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

from . import doubledouble as ddm
from .doubledouble import DoubleDouble
from .errors import DegenerateCriticalValues, DegenerateMapError

INF = math.inf


@dataclass(frozen=True)
class EpsteinParams:
    """Parameters (mu, kappa); mu is the multiplier of the fixed point 0."""

    mu: object
    kappa: object

    def __post_init__(self):
        if float(self.mu) == 0.0:
            raise DegenerateCriticalValues("mu must be nonzero")

    def as_floats(self) -> "EpsteinParams":
        return EpsteinParams(float(self.mu), float(self.kappa))


def epstein_eval(p: EpsteinParams, x: float) -> float:
    """Evaluate mu x / (x^2 + 2 kappa x + 1); poles map to inf, inf to 0."""
    if math.isinf(x):
        return 0.0
    mu, kappa = float(p.mu), float(p.kappa)
    den = x * x + 2.0 * kappa * x + 1.0
    if den == 0.0:
        return INF
    return mu * x / den


def critical_values(p: EpsteinParams) -> Tuple[float, float]:
    """(v1, v2) = (f(-1), f(1)); infinite when kappa hits -+1."""
    mu, kappa = float(p.mu), float(p.kappa)
    v1 = INF if kappa == 1.0 else mu / (2.0 * (kappa - 1.0))
    v2 = INF if kappa == -1.0 else mu / (2.0 * (kappa + 1.0))
    return v1, v2


def params_from_critical_values(v1: float, v2: float) -> EpsteinParams:
    if v1 == v2:
        raise DegenerateCriticalValues("critical values coincide")
    return EpsteinParams(4.0 * v1 * v2 / (v1 - v2), (v1 + v2) / (v1 - v2))


def discriminant(p: EpsteinParams) -> float:
    """Positive iff three real fixed points, zero on the parabolic curve."""
    mu, kappa = float(p.mu), float(p.kappa)
    return mu + kappa * kappa - 1.0


def fixed_points(p: EpsteinParams) -> List[Tuple[float, float]]:
    """Real fixed points with multipliers, the origin first.

    The nonzero fixed points solve x^2 + 2 kappa x + 1 = mu; at such a point
    the multiplier collapses to (1 - x^2)/mu.
    """
    mu, kappa = float(p.mu), float(p.kappa)
    points = [(0.0, mu)]
    disc = discriminant(p)
    if disc > 0.0:
        root = math.sqrt(disc)
        for x in (-kappa - root, -kappa + root):
            points.append((x, (1.0 - x * x) / mu))
    elif disc == 0.0:
        points.append((-kappa, 1.0))
    return points


# -- lifted normal form ---------------------------------------------------------


@dataclass(frozen=True)
class LiftedMap:
    """Period-1 lift of the fixed-point-centered form to the real line."""

    params: EpsteinParams

    def eval(self, t):
        return lifted_eval(self.params, t)

    def critical_values(self):
        """(v1, v2) = (F(-1/4), F(1/4)), both inside (-3/4, 3/4)."""
        return self.eval(-0.25), self.eval(0.25)


def lifted_eval(p: EpsteinParams, t):
    """F(t) via the two-argument arctangent; the argument never lands on
    the branch cut because the tracked complex point has positive real part
    whenever its imaginary part vanishes."""
    mu, kappa = p.mu, p.kappa
    extended = isinstance(t, DoubleDouble) or isinstance(mu, DoubleDouble)
    if extended:
        t = DoubleDouble.from_number(t)
        mu = DoubleDouble.from_number(mu)
        kappa = DoubleDouble.from_number(kappa)
        t = t - float(round(float(t)))
        s = ddm.sin(ddm.TWO_PI * t)
        re = 1.0 + kappa * s
        im = mu * s * 0.5
        return ddm.atan2(im, re) / ddm.PI
    t = float(t)
    t -= round(t)
    s = math.sin(2.0 * math.pi * t)
    return math.atan2(float(mu) * s * 0.5, 1.0 + float(kappa) * s) / math.pi


def lifted_params_from_critical_values(v1, v2) -> EpsteinParams:
    """Invert (v1, v2) = (F(-1/4), F(1/4)).

    Computed from sin/cos pairs rather than tangents so nothing blows up
    when a critical value passes the far point t = +-1/2 (kappa through
    +-1): the denominator is sin(pi (v1 - v2)), nonzero whenever the two
    values differ.
    """
    extended = isinstance(v1, DoubleDouble) or isinstance(v2, DoubleDouble)
    if extended:
        v1 = DoubleDouble.from_number(v1)
        v2 = DoubleDouble.from_number(v2)
        s1, c1 = ddm.sin(ddm.PI * v1), ddm.cos(ddm.PI * v1)
        s2, c2 = ddm.sin(ddm.PI * v2), ddm.cos(ddm.PI * v2)
    else:
        s1, c1 = math.sin(math.pi * v1), math.cos(math.pi * v1)
        s2, c2 = math.sin(math.pi * v2), math.cos(math.pi * v2)
    den = s1 * c2 - s2 * c1
    if float(den) == 0.0:
        raise DegenerateCriticalValues("lifted critical values coincide")
    mu = 4.0 * s1 * s2 / den
    kappa = (s1 * c2 + s2 * c1) / den
    return EpsteinParams(mu, kappa)


# -- canonical coordinates ------------------------------------------------------


@dataclass(frozen=True)
class CanonicalCoords:
    """Cylinder coordinates: Sigma in (-1, 1] mod 2, Delta in (0, 1)."""

    sigma: float
    delta: float
    theta: float
    eta: float

    def to_json_dict(self) -> dict:
        return {"sigma": self.sigma, "delta": self.delta}


def _wrap_sigma(x: float) -> float:
    r = math.fmod(x + 1.0, 2.0)
    if r <= 0.0:
        r += 2.0
    return r - 1.0


def canonical_form(a: float, b: float, c: float, d: float) -> CanonicalCoords:
    """Scale x -> g(lambda x)/lambda onto A^2 + C^2 = B^2 + D^2.

    The balance equation lambda^3 c^2 + lambda a^2 - d^2/lambda - b^2/lambda^3
    is strictly increasing on lambda > 0, so an outward-doubling bracket
    around 1 always traps the unique root; bisection then resolves it to
    relative 1e-15.  Angles come straight from atan2, so no half-integer
    bookkeeping is needed.
    """
    det = a * d - b * c
    if det == 0.0:
        raise DegenerateMapError("ad - bc = 0")
    if det < 0.0:
        # conjugate by x -> -1/x, which swaps the critical points
        a, b, c, d = -d, -c, b, a

    aa, bb, cc, dd_ = a * a, b * b, c * c, d * d

    def balance(lam: float) -> float:
        return lam ** 3 * cc + lam * aa - dd_ / lam - bb / lam ** 3

    lo = hi = 1.0
    while balance(lo) > 0.0:
        lo *= 0.5
    while balance(hi) < 0.0:
        hi *= 2.0
    for _ in range(200):
        if hi - lo <= 1e-15 * hi:
            break
        mid = 0.5 * (lo + hi)
        if balance(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    lam = 0.5 * (lo + hi)

    big_a, big_b, big_c, big_d = lam * lam * a, b, lam ** 3 * c, lam * d
    theta = math.atan2(big_a, big_c) / math.pi
    eta = math.atan2(big_b, big_d) / math.pi
    delta = theta - eta
    if delta <= 0.0:
        delta += 2.0
        theta += 2.0
    sigma = _wrap_sigma(theta + eta)
    return CanonicalCoords(sigma=sigma, delta=delta, theta=theta, eta=eta)


def sigma_delta(p: EpsteinParams) -> CanonicalCoords:
    """Moduli coordinates of (mu, kappa).

    Conjugating by L(x) = (1+x)/(1-x) moves the critical points to 0 and
    infinity, turning the map into the (a x^2 + b)/(c x^2 + d) shape that
    canonical_form normalizes.
    """
    mu, kappa = float(p.mu), float(p.kappa)
    pp = 2.0 * (1.0 + kappa)
    qq = 2.0 * (1.0 - kappa)
    return canonical_form(pp + mu, qq - mu, pp - mu, qq + mu)


@dataclass(frozen=True)
class AsymptoticRow:
    mu: float
    sigma: float
    delta: float
    product: float  # |mu| (1 - Delta)
    ratio: float  # (sign(mu) 0.5 - Sigma) / (1 - Delta)


@dataclass(frozen=True)
class AsymptoticReport:
    kappa: float
    rows: Tuple[AsymptoticRow, ...]
    product_limit: float  # 4/pi
    product_converged: bool  # last row within 1%
    ratio_converged: bool  # last row within 2% of -kappa


def asymptotic_check(kappa: float, mu_sequence: Sequence[float]) -> AsymptoticReport:
    """Track (Sigma, Delta) along increasing |mu| at fixed kappa."""
    rows = []
    for mu in mu_sequence:
        coords = sigma_delta(EpsteinParams(mu, kappa))
        target = 0.5 if mu > 0 else -0.5
        one_minus = 1.0 - coords.delta
        rows.append(
            AsymptoticRow(
                mu=mu,
                sigma=coords.sigma,
                delta=coords.delta,
                product=abs(mu) * one_minus,
                ratio=(target - coords.sigma) / one_minus,
            )
        )
    limit = 4.0 / math.pi
    last = rows[-1]
    scale = max(1.0, abs(kappa))
    return AsymptoticReport(
        kappa=kappa,
        rows=tuple(rows),
        product_limit=limit,
        product_converged=abs(last.product - limit) <= 0.01 * limit,
        ratio_converged=abs(last.ratio - (-kappa)) <= 0.02 * scale,
    )


# -- invariants -----------------------------------------------------------------


def _homogeneous(x: float) -> Tuple[float, float]:
    return (1.0, 0.0) if math.isinf(x) else (float(x), 1.0)


def cross_ratio(c1, c2, v1, v2) -> float:
    """(c1-v1)(c2-v2) / ((c1-c2)(v1-v2)), evaluated projectively.

    Any argument may be inf; the value is finite for the critical points and
    values of a quadratic map.
    """

    def wedge(pq, rs):
        return pq[0] * rs[1] - rs[0] * pq[1]

    hc1, hc2, hv1, hv2 = map(_homogeneous, (c1, c2, v1, v2))
    den = wedge(hc1, hc2) * wedge(hv1, hv2)
    if den == 0.0:
        raise DegenerateMapError("coincident critical points or values")
    return wedge(hc1, hv1) * wedge(hc2, hv2) / den


class ShiftLocus(str, Enum):
    HYPERBOLIC_SHIFT = "HyperbolicShift"
    PARABOLIC_SHIFT_BOUNDARY = "ParabolicShiftBoundary"
    CHEBYSHEV_BOUNDARY = "ChebyshevBoundary"
    OUTSIDE = "Outside"


def shift_locus_membership(p: EpsteinParams) -> ShiftLocus:
    mu, kappa = float(p.mu), float(p.kappa)
    if mu > 1.0 and abs(kappa) > 1.0:
        return ShiftLocus.HYPERBOLIC_SHIFT
    if mu == 1.0 and abs(kappa) > 1.0:
        return ShiftLocus.PARABOLIC_SHIFT_BOUNDARY
    if abs(kappa) == 1.0 and mu >= 1.0:
        return ShiftLocus.CHEBYSHEV_BOUNDARY
    return ShiftLocus.OUTSIDE


def logistic_mu_to_c(mu: float) -> float:
    """Parameter c of x -> x^2 - c conjugate to the degree-2 polynomial with
    interior fixed-point multiplier mu (written as mu x (1 - x))."""
    if mu == 0.0:
        raise DegenerateCriticalValues("mu must be nonzero")
    return mu * mu / 4.0 - mu / 2.0
