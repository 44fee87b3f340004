"""The pullback iteration on marked lifted maps.

A marked state is a strictly increasing vector t_0 < ... < t_n inside
(-3/4, 3/4) with the two critical entries pinned at -1/4 and 1/4 and the
primary fixed point located by either an exact zero entry or a sign
straddle.  One step replaces every free entry by the branch-consistent
preimage of its target under the lifted map determined by the current
critical values, shrinking toward the map that realizes the combinatorics
whenever one exists.

Obstructed inputs never settle: the multiplier blows up (strong), or a pair
of marked points collapses onto each other while their targets stay glued
(weak), or - for the single Euclidean-orbifold troublemaker - the states
fall into a genuine two-cycle of maps.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

from .combinatorics import Combinatorics, euler_characteristic, require_admissible, simplify
from .doubledouble import DoubleDouble, make_real
from .errors import (
    InvalidExplicitState,
    OrderViolation,
    RealQuadError,
    ReductionInadmissible,
    TargetOutsideImage,
)
from .quadmap import (
    CanonicalCoords,
    EpsteinParams,
    lifted_eval,
    lifted_params_from_critical_values,
    sigma_delta,
)

_INTERVALS = {1: (-0.75, -0.25), 2: (-0.25, 0.25), 3: (0.25, 0.75)}


def _solve_tol(precision: str) -> float:
    return 1e-15 if precision == "double" else 1e-28


@dataclass(frozen=True)
class PullbackConfig:
    max_iter: int = 10000
    tol_conv: float = 1e-9
    tol_sigma_delta: float = 1e-7
    mu_blowup: float = 1e7
    gap_min: float = 1e-12
    precision: str = "double"
    tol_realization: float = 1e-7
    # images of a collapsing pair must stay this far apart to rule out a
    # weak obstruction (collapsing images mean a genuine edge collapse)
    image_gap_weak: float = 1e-3

    def __post_init__(self):
        if self.max_iter < 1:
            raise RealQuadError("max_iter must be >= 1")
        for name in ("tol_conv", "tol_sigma_delta", "mu_blowup", "gap_min"):
            if getattr(self, name) <= 0:
                raise RealQuadError(f"{name} must be positive")
        if self.precision not in ("double", "extended"):
            raise RealQuadError(f"unknown precision {self.precision!r}")


@dataclass(frozen=True)
class MarkedState:
    """Marked points plus the lifted map their critical targets determine."""

    t: tuple
    step: int
    params: EpsteinParams
    w: tuple
    tags: tuple
    critical_indices: tuple
    pinned_zero: Optional[int]
    straddle: Optional[tuple]

    def floats(self) -> tuple:
        return tuple(float(v) for v in self.t)


def _locate_fixed_point(c: Combinatorics):
    """Zero-pin index, or the consecutive sign-change pair, per the state
    constraints.  Both are None for polynomial-shape inputs, where the
    interior fixed point merges with a pinned critical entry."""
    jm, jp = c.critical_indices
    for p in range(jm + 1, jp):
        if c.m[p] == p:
            return p, None
    diffs = [c.m[j] - j for j in range(jm, jp + 1)]
    for i in range(len(diffs) - 1):
        if diffs[i] * diffs[i + 1] < 0:
            return None, (jm + i, jm + i + 1)
    if 0 in diffs:
        return None, None  # a critical entry is itself fixed (polynomial)
    raise InvalidExplicitState(
        f"({c}) admits no fixed-point location between its critical entries"
    )


def _segments(c: Combinatorics):
    """Open intervals that receive the free marked points, left to right.

    Outer points go into the halves (-1/2, -1/4) and (1/4, 1/2) of the outer
    branch intervals; interior points respect the zero pin or straddle.
    """
    jm, jp = c.critical_indices
    pin, straddle = _locate_fixed_point(c)
    segments = []
    if jm > 0:
        segments.append((list(range(jm)), -0.5, -0.25))
    interior = [j for j in range(jm + 1, jp) if j != pin]
    if pin is not None:
        left = [j for j in interior if j < pin]
        right = [j for j in interior if j > pin]
        segments.append((left, -0.25, 0.0))
        segments.append((right, 0.0, 0.25))
    elif straddle is not None:
        p_lo, p_hi = straddle
        left = [j for j in interior if j <= p_lo]
        right = [j for j in interior if j >= p_hi]
        segments.append((left, -0.25, 0.0))
        segments.append((right, 0.0, 0.25))
    else:
        segments.append((interior, -0.25, 0.25))
    if jp < c.n:
        segments.append((list(range(jp + 1, c.n + 1)), 0.25, 0.5))
    return [(idx, lo, hi) for idx, lo, hi in segments if idx]


def _tags(c: Combinatorics) -> tuple:
    jm, jp = c.critical_indices
    tags = []
    for j in range(c.n + 1):
        if j < jm:
            tags.append(1)
        elif j <= jp:
            tags.append(2)
        else:
            tags.append(3)
    return tuple(tags)


def _validate_state(c: Combinatorics, t: Sequence[float]) -> None:
    n = c.n
    if len(t) != n + 1:
        raise InvalidExplicitState(f"expected {n + 1} entries, got {len(t)}")
    values = [float(v) for v in t]
    if not all(-0.75 < v < 0.75 for v in values):
        raise InvalidExplicitState("marked points must lie in (-3/4, 3/4)")
    if any(b - a <= 0 for a, b in zip(values, values[1:])):
        raise InvalidExplicitState("marked points must strictly increase")
    jm, jp = c.critical_indices
    if values[jm] != -0.25 or values[jp] != 0.25:
        raise InvalidExplicitState("critical entries must be -1/4 and 1/4")
    pin, straddle = _locate_fixed_point(c)
    if pin is not None and values[pin] != 0.0:
        raise InvalidExplicitState(f"entry {pin} must be pinned at 0")
    if straddle is not None:
        p_lo, p_hi = straddle
        if not (values[p_lo] < 0.0 < values[p_hi]):
            raise InvalidExplicitState(
                f"entries {p_lo} and {p_hi} must straddle 0"
            )


def _assemble(c: Combinatorics, t: tuple, step: int) -> MarkedState:
    jm, jp = c.critical_indices
    w = tuple(t[c.m[j]] for j in range(c.n + 1))
    params = lifted_params_from_critical_values(w[jm], w[jp])
    pin, straddle = _locate_fixed_point(c)
    return MarkedState(
        t=t,
        step=step,
        params=params,
        w=w,
        tags=_tags(c),
        critical_indices=(jm, jp),
        pinned_zero=pin,
        straddle=straddle,
    )


def init_state(
    c: Combinatorics,
    *,
    explicit: Optional[Sequence[float]] = None,
    rng: Optional[random.Random] = None,
    precision: str = "double",
) -> MarkedState:
    """Initial marked state: equally spaced, random, or explicit.

    Equal spacing fills each receiving interval uniformly; an rng instead
    draws sorted uniform samples there.  Explicit vectors are validated
    against the full state constraints.
    """
    require_admissible(c)
    real = make_real(precision)
    jm, jp = c.critical_indices
    n = c.n

    if explicit is not None:
        _validate_state(c, explicit)
        t = tuple(real(v) for v in explicit)
        return _assemble(c, t, 0)

    values = [None] * (n + 1)
    values[jm] = real(-0.25)
    values[jp] = real(0.25)
    pin, _ = _locate_fixed_point(c)
    if pin is not None:
        values[pin] = real(0.0)
    for indices, lo, hi in _segments(c):
        width = hi - lo
        if rng is None:
            spots = [lo + width * (i + 1) / (len(indices) + 1) for i in range(len(indices))]
        else:
            pad = width * 1e-6
            spots = sorted(rng.uniform(lo + pad, hi - pad) for _ in indices)
        for j, s in zip(indices, spots):
            values[j] = real(s)
    t = tuple(values)
    _validate_state(c, t)
    return _assemble(c, t, 0)


def solve_branch(params: EpsteinParams, target, tag: int, tol: float = 1e-15):
    """The unique t in the tagged subinterval with F(t) = target.

    F maps each of the three subintervals bijectively onto its image, so a
    plain bisection bracketed by the interval endpoints is safe; no
    derivative acceleration is used.  Targets at a critical value return the
    critical endpoint itself.
    """
    lo_f, hi_f = _INTERVALS[tag]
    extended = isinstance(target, DoubleDouble) or isinstance(
        params.mu, DoubleDouble
    )
    real = make_real("extended" if extended else "double")
    lo, hi = real(lo_f), real(hi_f)
    target = real(target)

    g_lo = lifted_eval(params, lo) - target
    g_hi = lifted_eval(params, hi) - target
    if float(g_lo) == 0.0:
        return lo
    if float(g_hi) == 0.0:
        return hi
    if (float(g_lo) > 0.0) == (float(g_hi) > 0.0):
        raise TargetOutsideImage(
            f"target {float(target)} outside the image of branch {tag}"
        )
    lo_pos = float(g_lo) > 0.0
    for _ in range(300):
        if float(hi - lo) <= tol:
            break
        mid = (lo + hi) * 0.5
        g_mid = lifted_eval(params, mid) - target
        if float(g_mid) == 0.0:
            return mid
        if (float(g_mid) > 0.0) == lo_pos:
            lo = mid
        else:
            hi = mid
    return (lo + hi) * 0.5


def step(state: MarkedState, c: Combinatorics, tol: Optional[float] = None) -> MarkedState:
    """One pullback: replace each free entry by its tagged preimage.

    The map used is the one determined by the current critical targets; the
    new state carries the map determined by its own targets.  Raises
    OrderViolation when the new points fail to be strictly increasing or a
    straddle flips (numerical breakdown, not a verdict).
    """
    if tol is None:
        tol = _solve_tol(
            "extended" if isinstance(state.t[0], DoubleDouble) else "double"
        )
    jm, jp = state.critical_indices
    new_t = list(state.t)
    for j in range(len(state.t)):
        if j == jm or j == jp or j == state.pinned_zero:
            continue
        new_t[j] = solve_branch(state.params, state.w[j], state.tags[j], tol)
    floats = [float(v) for v in new_t]
    if any(b - a <= 0 for a, b in zip(floats, floats[1:])):
        raise OrderViolation(
            f"marked points crossed at step {state.step + 1}"
        )
    if state.straddle is not None:
        p_lo, p_hi = state.straddle
        if not (floats[p_lo] < 0.0 < floats[p_hi]):
            raise OrderViolation(
                f"fixed-point straddle lost at step {state.step + 1}"
            )
    return _assemble(c, tuple(new_t), state.step + 1)


class Verdict(str, Enum):
    CONVERGED = "Converged"
    WEAKLY_OBSTRUCTED = "WeaklyObstructed"
    STRONGLY_OBSTRUCTED = "StronglyObstructed"
    EXCEPTIONAL_TWO_CYCLE = "ExceptionalTwoCycle"
    MAX_ITERATIONS = "MaxIterations"


@dataclass(frozen=True)
class TrajectoryPoint:
    step: int
    mu: float
    kappa: float
    sigma: float
    delta: float
    t: tuple


@dataclass(frozen=True)
class PullbackOutcome:
    verdict: Verdict
    final: EpsteinParams
    coords: CanonicalCoords
    iterations: int
    trajectory: tuple
    simplified: Optional[Combinatorics] = None
    cycle_pair: Optional[tuple] = None
    mu_limit_sign: Optional[int] = None
    error: Optional[str] = None
    state: Optional[MarkedState] = None

    def to_json_dict(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "mu": float(self.final.mu),
            "kappa": float(self.final.kappa),
            "sigma": self.coords.sigma,
            "delta": self.coords.delta,
            "iterations": self.iterations,
            "trajectory": [
                [p.step, p.mu, p.kappa, p.sigma, p.delta] for p in self.trajectory
            ],
        }
        if self.simplified is not None:
            out["simplified"] = str(self.simplified)
        if self.cycle_pair is not None:
            out["cycle_pair"] = [
                {"mu": float(q.mu), "kappa": float(q.kappa)} for q in self.cycle_pair
            ]
        if self.mu_limit_sign is not None:
            out["mu_limit_sign"] = self.mu_limit_sign
        if self.error is not None:
            out["error"] = self.error
        return out


def _sigma_distance(a: float, b: float) -> float:
    d = abs(a - b) % 2.0
    return min(d, 2.0 - d)


def _max_diff(a: Sequence[float], b: Sequence[float]) -> float:
    return max(abs(x - y) for x, y in zip(a, b))


def run(
    c: Combinatorics,
    config: PullbackConfig = PullbackConfig(),
    *,
    explicit_start: Optional[Sequence[float]] = None,
    rng: Optional[random.Random] = None,
) -> PullbackOutcome:
    """Iterate the pullback until a verdict is reached.

    Solver failures are recorded on the outcome instead of being raised.
    The two-cycle check only arms itself for vanishing orbifold Euler
    characteristic, which is the only place the pathology can occur.
    """
    require_admissible(c)
    euclidean = euler_characteristic(c) == 0
    tol = _solve_tol(config.precision)

    state = init_state(
        c, explicit=explicit_start, rng=rng, precision=config.precision
    )
    params_f = state.params.as_floats()
    coords = sigma_delta(params_f)
    trajectory: List[TrajectoryPoint] = [
        TrajectoryPoint(
            0,
            float(params_f.mu),
            float(params_f.kappa),
            coords.sigma,
            coords.delta,
            state.floats(),
        )
    ]
    prev1 = state.floats()
    prev2 = None
    prev_params = params_f
    prev_coords = coords

    def outcome(verdict, **kw):
        return PullbackOutcome(
            verdict=verdict,
            final=prev_params,
            coords=prev_coords,
            iterations=state.step,
            trajectory=tuple(trajectory),
            state=state,
            **kw,
        )

    for _ in range(config.max_iter):
        try:
            state = step(state, c, tol)
        except (TargetOutsideImage, OrderViolation) as exc:
            return outcome(Verdict.MAX_ITERATIONS, error=str(exc))

        params_f = state.params.as_floats()
        coords = sigma_delta(params_f)
        current = state.floats()
        trajectory.append(
            TrajectoryPoint(
                state.step,
                float(params_f.mu),
                float(params_f.kappa),
                coords.sigma,
                coords.delta,
                current,
            )
        )

        mu = float(params_f.mu)
        if abs(mu) > config.mu_blowup or coords.delta > 1.0 - 1e-9:
            prev_params, prev_coords = params_f, coords
            return outcome(
                Verdict.STRONGLY_OBSTRUCTED,
                mu_limit_sign=1 if mu > 0 else -1,
            )

        d_prev = _max_diff(current, prev1)
        if euclidean and prev2 is not None:
            if _max_diff(current, prev2) < config.tol_conv <= d_prev:
                pair = (prev_params, params_f)
                prev_params, prev_coords = params_f, coords
                return outcome(Verdict.EXCEPTIONAL_TWO_CYCLE, cycle_pair=pair)

        gaps = [b - a for a, b in zip(current, current[1:])]
        smallest = min(gaps)

        if (
            d_prev < config.tol_conv
            and _sigma_distance(coords.sigma, prev_coords.sigma)
            < config.tol_sigma_delta
            and abs(coords.delta - prev_coords.delta) < config.tol_sigma_delta
        ):
            realization = max(
                abs(float(lifted_eval(state.params, state.t[j])) - current[c.m[j]])
                for j in range(c.n + 1)
            )
            # the realized orbit must be resolved at the scale of the
            # closest marked pair, otherwise a slow pair collapse (a weak
            # obstruction in progress) would masquerade as convergence
            if realization < min(config.tol_realization, 0.01 * smallest):
                prev_params, prev_coords = params_f, coords
                return outcome(Verdict.CONVERGED)
        if smallest < config.gap_min:
            i = gaps.index(smallest)
            image_gap = abs(current[c.m[i]] - current[c.m[i + 1]])
            if image_gap <= config.image_gap_weak:
                prev_params, prev_coords = params_f, coords
                try:
                    reduced = simplify(c)
                except ReductionInadmissible as exc:
                    return outcome(
                        Verdict.WEAKLY_OBSTRUCTED, error=str(exc)
                    )
                return outcome(Verdict.WEAKLY_OBSTRUCTED, simplified=reduced)

        prev2 = prev1
        prev1 = current
        prev_params, prev_coords = params_f, coords

    return outcome(Verdict.MAX_ITERATIONS)


# -- the Euclidean-orbifold two-cycle in closed form -------------------------


EXCEPTIONAL_COMBINATORICS = Combinatorics((1, 3, 4, 3, 1, 0))


@dataclass(frozen=True)
class ExceptionalStep:
    """Normal-form data x -> (w - v)(x + 1/x)/4 + (v + w)/2 with w = 1/v."""

    v: float
    w: float
    v_next: float
    amplitude: float  # (w - v)/4
    offset: float  # (v + w)/2


def exceptional_normal_form(v: float) -> ExceptionalStep:
    """Next critical value of the invariant family: v -> (v + 1)/(v - 1).

    The transformation is an involution with unique fixed value 1 - sqrt 2;
    valid input is v in (-1, 0).
    """
    if not -1.0 < v < 0.0:
        raise RealQuadError(f"v = {v} outside (-1, 0)")
    w = 1.0 / v
    return ExceptionalStep(
        v=v,
        w=w,
        v_next=(v + 1.0) / (v - 1.0),
        amplitude=(w - v) / 4.0,
        offset=(v + w) / 2.0,
    )


def exceptional_start(v: float) -> tuple:
    """Marked state of the invariant family member with critical value v.

    The family's chart has marked points (v, 0, 1, inf, 1/v, -1); the Moebius
    map x -> -1/x carries them into the lifted chart, with the first two
    landing on the wrapped outer branch.
    """
    if not -1.0 < v < 0.0:
        raise RealQuadError(f"v = {v} outside (-1, 0)")
    t0 = math.atan(-1.0 / v) / math.pi - 1.0
    t4 = math.atan(-v) / math.pi
    return (t0, -0.5, -0.25, 0.0, t4, 0.25)


def exceptional_v(state_or_t) -> float:
    """Read the family parameter v back off a marked state."""
    t = state_or_t.floats() if isinstance(state_or_t, MarkedState) else state_or_t
    return -1.0 / math.tan(math.pi * float(t[0]))
