"""Limit extrapolation for radius and shell-width sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ExtrapolationResult:
    limit: float
    stderr: float | None
    rate: float | None       # fitted exponent q in a + b x^q, None on fallback
    fallback: bool           # True when noise swamped the fit; limit = finest value


def geometric_limit(xs, values, stderrs=None) -> ExtrapolationResult:
    """Extrapolate a + b x^q -> a from three samples at geometrically spaced x.

    xs must be strictly decreasing with constant ratio.  When the successive
    differences are not significant against the supplied stderrs (or the fit
    is ill-posed) the finest value is returned with fallback=True.
    """
    xs = [float(x) for x in xs]
    values = [float(v) for v in values]
    if len(xs) != 3 or len(values) != 3:
        raise DomainError("geometric_limit needs exactly three samples")
    if not xs[0] > xs[1] > xs[2] > 0:
        raise DomainError("xs must be strictly decreasing and positive")
    rho1, rho2 = xs[0] / xs[1], xs[1] / xs[2]
    if abs(rho1 - rho2) > 1e-9 * rho1:
        raise DomainError("xs must be geometrically spaced")
    rho = rho1
    s = [0.0, 0.0, 0.0] if stderrs is None else [float(e) for e in stderrs]
    d1 = values[0] - values[1]
    d2 = values[1] - values[2]
    finest = ExtrapolationResult(
        limit=values[2], stderr=(None if stderrs is None else s[2]),
        rate=None, fallback=True,
    )
    if stderrs is not None:
        sig1 = math.hypot(s[0], s[1])
        sig2 = math.hypot(s[1], s[2])
        if abs(d1) < 2.0 * sig1 or abs(d2) < 2.0 * sig2:
            return finest
    if d2 == 0.0 or d1 / d2 <= 0.0:
        return finest
    q = math.log(d1 / d2) / math.log(rho)
    if not 0.05 <= q <= 16.0:
        return finest
    factor = rho**q - 1.0
    limit = values[2] - d2 / factor
    if stderrs is None:
        err = None
    else:
        # limit = v2 (1 + 1/factor) - v1 / factor, treating q as fixed
        err = math.hypot(s[2] * (1.0 + 1.0 / factor), s[1] / factor)
    return ExtrapolationResult(limit=limit, stderr=err, rate=q, fallback=False)


def richardson_even(values, stderrs=None) -> tuple[float, float | None]:
    """Eliminate O(step^2) (and O(step^4)) error from samples at step, step/2[, step/4].

    values are ordered coarsest first with steps halving.
    """
    v = [float(x) for x in values]
    if len(v) == 2:
        limit = (4.0 * v[1] - v[0]) / 3.0
        coeffs = np.array([-1.0, 4.0]) / 3.0
    elif len(v) == 3:
        a1 = (4.0 * v[1] - v[0]) / 3.0
        a2 = (4.0 * v[2] - v[1]) / 3.0
        limit = (16.0 * a2 - a1) / 15.0
        coeffs = np.array([1.0, -20.0, 64.0]) / 45.0
    else:
        raise DomainError("richardson_even needs two or three samples")
    if stderrs is None:
        return limit, None
    s = np.asarray([float(e) for e in stderrs])
    return limit, float(np.sqrt(np.sum((coeffs * s) ** 2)))
