"""Compensated double-word ("double-double") arithmetic.

A DoubleDouble value is an unevaluated sum hi + lo of two floats with
|lo| <= 0.5 ulp(hi), giving roughly 31 significant decimal digits.  The
package uses it as the optional extended-precision backend for the pullback
iteration; everything here is plain error-free-transformation material plus
just enough trigonometry (sin, cos, atan2) for the lifted normal form.

The module also exposes ``sin``/``cos``/``atan2``/``sqrt`` wrappers that
dispatch on the argument type, so numeric code can be written once and run
under either backend.
"""

from __future__ import annotations

import math

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a: float, b: float):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _quick_two_sum(a: float, b: float):
    # requires |a| >= |b|
    s = a + b
    err = b - (s - a)
    return s, err


def _split(a: float):
    c = _SPLITTER * a
    abig = c - a
    ahi = c - abig
    return ahi, a - ahi


def _two_prod(a: float, b: float):
    p = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


class DoubleDouble:
    """Two-float compensated number. Immutable."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi: float = 0.0, lo: float = 0.0):
        s, e = _two_sum(float(hi), float(lo))
        object.__setattr__(self, "hi", s)
        object.__setattr__(self, "lo", e)

    def __setattr__(self, *args):
        raise AttributeError("DoubleDouble is immutable")

    # -- construction -----------------------------------------------------
    @staticmethod
    def from_number(x) -> "DoubleDouble":
        if isinstance(x, DoubleDouble):
            return x
        return DoubleDouble(float(x))

    # -- conversions -------------------------------------------------------
    def __float__(self) -> float:
        return self.hi + self.lo

    def __repr__(self) -> str:
        return f"DoubleDouble({self.hi!r}, {self.lo!r})"

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = DoubleDouble.from_number(other)
        s, e = _two_sum(self.hi, o.hi)
        t, f = _two_sum(self.lo, o.lo)
        e += t
        s, e = _quick_two_sum(s, e)
        e += f
        s, e = _quick_two_sum(s, e)
        return DoubleDouble(s, e)

    __radd__ = __add__

    def __neg__(self):
        return DoubleDouble(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-DoubleDouble.from_number(other))

    def __rsub__(self, other):
        return DoubleDouble.from_number(other) + (-self)

    def __mul__(self, other):
        o = DoubleDouble.from_number(other)
        p, e = _two_prod(self.hi, o.hi)
        e += self.hi * o.lo + self.lo * o.hi
        p, e = _quick_two_sum(p, e)
        return DoubleDouble(p, e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = DoubleDouble.from_number(other)
        q1 = self.hi / o.hi
        r = self - o * q1
        q2 = r.hi / o.hi
        r = r - o * q2
        q3 = r.hi / o.hi
        s, e = _two_sum(q1, q2)
        s, e2 = _quick_two_sum(s, e + q3)
        return DoubleDouble(s, e2)

    def __rtruediv__(self, other):
        return DoubleDouble.from_number(other) / self

    def __abs__(self):
        return -self if self.hi < 0 or (self.hi == 0 and self.lo < 0) else self

    # -- comparisons ----------------------------------------------------------
    def _cmp(self, other) -> int:
        o = DoubleDouble.from_number(other)
        if self.hi != o.hi:
            return -1 if self.hi < o.hi else 1
        if self.lo != o.lo:
            return -1 if self.lo < o.lo else 1
        return 0

    def __eq__(self, other):
        return self._cmp(other) == 0

    def __ne__(self, other):
        return self._cmp(other) != 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash((self.hi, self.lo))

    def sqrt(self) -> "DoubleDouble":
        if self.hi < 0:
            raise ValueError("sqrt of negative DoubleDouble")
        if self.hi == 0:
            return DoubleDouble(0.0)
        # one Newton step on a float seed doubles the accurate digits
        y = math.sqrt(self.hi)
        yd = DoubleDouble(y)
        return (yd + self / yd) * 0.5


DD = DoubleDouble

# High/low words of pi and friends (hi = nearest float, lo = remainder).
PI = DD(3.141592653589793, 1.2246467991473532e-16)
TWO_PI = DD(6.283185307179586, 2.4492935982947064e-16)
HALF_PI = DD(1.5707963267948966, 6.123233995736766e-17)


def _sin_taylor(r: DoubleDouble) -> DoubleDouble:
    # |r| <= pi/4; terms shrink by ~r^2/(2k(2k+1))
    term = r
    total = r
    rr = r * r
    k = 1
    while abs(term.hi) > 1e-40:
        term = term * rr / float(-(2 * k) * (2 * k + 1))
        total = total + term
        k += 1
    return total


def _cos_taylor(r: DoubleDouble) -> DoubleDouble:
    term = DD(1.0)
    total = DD(1.0)
    rr = r * r
    k = 1
    while abs(term.hi) > 1e-40:
        term = term * rr / float(-(2 * k - 1) * (2 * k))
        total = total + term
        k += 1
    return total


def _sin_cos(x: DoubleDouble):
    k = round(float(x) / float(HALF_PI))
    r = x - HALF_PI * float(k)
    s, c = _sin_taylor(r), _cos_taylor(r)
    q = k % 4
    if q == 0:
        return s, c
    if q == 1:
        return c, -s
    if q == 2:
        return -s, -c
    return -c, s


def dd_sin(x: DoubleDouble) -> DoubleDouble:
    return _sin_cos(x)[0]


def dd_cos(x: DoubleDouble) -> DoubleDouble:
    return _sin_cos(x)[1]


def dd_atan2(y: DoubleDouble, x: DoubleDouble) -> DoubleDouble:
    """Two-argument arctangent with the (-pi, pi] branch.

    Float atan2 seeds a single Newton step on g(a) = sin(a)*x - cos(a)*y,
    which lands on the full double-double accuracy.
    """
    fy, fx = float(y), float(x)
    if fy == 0.0 and fx == 0.0:
        raise ValueError("atan2(0, 0) undefined")
    a = DD(math.atan2(fy, fx))
    for _ in range(2):
        s, c = _sin_cos(a)
        num = s * x - c * y
        den = c * x + s * y
        a = a - num / den
    return a


# -- backend dispatch ---------------------------------------------------------


def sin(x):
    return dd_sin(x) if isinstance(x, DoubleDouble) else math.sin(x)


def cos(x):
    return dd_cos(x) if isinstance(x, DoubleDouble) else math.cos(x)


def atan2(y, x):
    if isinstance(y, DoubleDouble) or isinstance(x, DoubleDouble):
        return dd_atan2(DD.from_number(y), DD.from_number(x))
    return math.atan2(y, x)


def sqrt(x):
    return x.sqrt() if isinstance(x, DoubleDouble) else math.sqrt(x)


def to_float(x) -> float:
    return float(x)


def make_real(precision: str):
    """Return a converter float-like -> backend number for the given mode."""
    if precision == "double":
        return float
    if precision == "extended":
        return DD.from_number
    raise ValueError(f"unknown precision {precision!r}")
