"""Seeded, shard-parallel Monte Carlo over gauge balls and shells.

Sampling is rejection from the anisotropic bounding box of a gauge ball:
{psi < R} sits inside |x_l - a_l| <= R |c|^(-1/(2k)), |t - s| <= R^(2k).
Every run draws from counter-based Philox streams keyed by (seed, stream,
shard), in fixed-size shards reduced in index order, so results are
bit-identical for a given seed regardless of the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError
from .extrapolation import richardson_even
from .fields import ScalarField, gauge_parts
from .space import SpaceParams

SHARD_SIZE = 1 << 16
_MASK64 = (1 << 64) - 1

# Stream ids keep companion estimates (e.g. the sigma_p run that normalizes
# a density or capacity check) independent of the main integral while still
# fully determined by the user seed.
STREAM_BALL = 1
STREAM_SHELL = 2
STREAM_PAIRING = 3
STREAM_ENERGY = 5
STREAM_SIGMA_COMPANION = 7
STREAM_POINTS = 9

THREADS_ENV_VAR = "SUBLAP_THREADS"


@dataclass(frozen=True)
class MCEstimate:
    """A Monte Carlo integral: mean, standard error, sample count, seed."""

    mean: float
    stderr: float
    samples: int
    seed: int
    accepted: int = 0

    @property
    def accept_fraction(self) -> float:
        return self.accepted / self.samples


@dataclass(frozen=True)
class BallSpec:
    """Bounding box of the gauge ball {psi < R}."""

    R: float
    half_widths: np.ndarray  # (2n+1,)

    @property
    def volume(self) -> float:
        return float(np.prod(2.0 * self.half_widths))


def ball_spec(params: SpaceParams, R: float) -> BallSpec:
    if not R > 0:
        raise DomainError(f"radius must be positive, got {R!r}")
    hw = np.empty(params.dim)
    hw[: 2 * params.n] = R * abs(params.c) ** (-1.0 / (2 * params.k))
    hw[2 * params.n] = R ** (2 * params.k)
    hw.setflags(write=False)
    return BallSpec(R=float(R), half_widths=hw)


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV_VAR)
        if env is not None:
            threads = int(env)
        else:
            threads = os.cpu_count() or 1
    if threads < 1:
        raise ConfigurationError(f"thread count must be >= 1, got {threads}")
    return threads


def _shard_rng(seed: int, stream: int, shard: int) -> np.random.Generator:
    key = np.array(
        [np.uint64(seed & _MASK64), np.uint64(((stream & 0xFFFF) << 40) | shard)],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


def _mc_over_box(params, spec, integrand, samples, seed, stream, threads):
    """Plain MC of `integrand` over the box; returns (mean, stderr, accepted).

    integrand(pts) -> (per-sample values incl. zeros outside the region,
    accepted count).  Shards are reduced in index order.
    """
    if samples < 10**4:
        raise DomainError(f"need at least 1e4 samples, got {samples}")
    center = params.x0
    lo = center - spec.half_widths
    width = 2.0 * spec.half_widths
    n_shards = (samples + SHARD_SIZE - 1) // SHARD_SIZE
    sums = np.zeros(n_shards)
    sqsums = np.zeros(n_shards)
    accepted = np.zeros(n_shards, dtype=np.int64)

    def run_shard(idx: int):
        count = min(SHARD_SIZE, samples - idx * SHARD_SIZE)
        rng = _shard_rng(seed, stream, idx)
        pts = lo + rng.random((count, params.dim)) * width
        vals, acc = integrand(pts)
        return idx, float(vals.sum()), float(np.dot(vals, vals)), int(acc)

    workers = resolve_threads(threads)
    if workers > 1 and n_shards > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for idx, s, ss, acc in pool.map(run_shard, range(n_shards)):
                sums[idx], sqsums[idx], accepted[idx] = s, ss, acc
    else:
        for idx in range(n_shards):
            _, s, ss, acc = run_shard(idx)
            sums[idx], sqsums[idx], accepted[idx] = s, ss, acc

    vol = spec.volume
    raw_mean = float(sums.sum()) / samples
    raw_var = max(float(sqsums.sum()) / samples - raw_mean**2, 0.0)
    if samples > 1:
        raw_var *= samples / (samples - 1.0)
    mean = vol * raw_mean
    stderr = vol * float(np.sqrt(raw_var / samples))
    return mean, stderr, int(accepted.sum())


def grad_psi_norm_sq(params: SpaceParams, sigma, h) -> np.ndarray:
    """|grad_0 psi|^2 = c^2 Sigma^(2k-1) h^((1-2k)/(2k)), vectorized.

    Bounded by |c|^(1/k) for k >= 1/2; the Sigma = 0 limit is taken
    explicitly (0 for k > 1/2, c^2 at k = 1/2).
    """
    k, c = params.k, params.c
    sigma = np.asarray(sigma, dtype=float)
    h = np.asarray(h, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = c**2 * sigma ** (2 * k - 1.0) * h ** ((1.0 - 2 * k) / (2 * k))
    degenerate = (sigma == 0.0) | (h == 0.0)
    if np.any(degenerate):
        out = np.where(degenerate, 0.0 if k > 0.5 else c**2 if k == 0.5 else np.inf, out)
    return out


def ball_measure(
    params: SpaceParams, p: float, R: float, samples: int, seed: int,
    threads: int | None = None, stream: int = STREAM_BALL,
) -> MCEstimate:
    """V(B_R) = integral over {psi < R} of |grad_0 psi|^p."""
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p!r}")
    spec = ball_spec(params, R)
    bound = R ** (4 * params.k)

    def integrand(pts):
        sigma, _, h = gauge_parts(params, pts)
        inside = h < bound
        vals = np.zeros(pts.shape[0])
        vals[inside] = grad_psi_norm_sq(params, sigma[inside], h[inside]) ** (p / 2.0)
        return vals, int(inside.sum())

    mean, stderr, acc = _mc_over_box(params, spec, integrand, samples, seed, stream, threads)
    return MCEstimate(mean=mean, stderr=stderr, samples=samples, seed=seed, accepted=acc)


def sigma_p(
    params: SpaceParams, p: float, samples: int, seed: int,
    threads: int | None = None, stream: int = STREAM_BALL,
) -> MCEstimate:
    """sigma_p = V(B_1), the normalizing constant of the Ahlfors scaling."""
    return ball_measure(params, p, 1.0, samples, seed, threads, stream=stream)


def shell_integral(
    params: SpaceParams, p: float, R: float, delta: float, phi: ScalarField,
    samples: int, seed: int, threads: int | None = None, stream: int = STREAM_SHELL,
) -> MCEstimate:
    """Thin-shell estimate of the surface integral of phi over {psi = R}.

    (1/(2 delta)) * integral over {R-delta < psi < R+delta} of
    phi |grad_0 psi|^p, an O(delta^2)-biased approximation of the coarea
    disintegration.
    """
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p!r}")
    if not 0 < delta < R / 2:
        raise DomainError(f"need 0 < delta < R/2, got delta={delta}, R={R}")
    spec = ball_spec(params, R + delta)
    lo_bound = (R - delta) ** (4 * params.k)
    hi_bound = (R + delta) ** (4 * params.k)

    def integrand(pts):
        sigma, _, h = gauge_parts(params, pts)
        inside = (h > lo_bound) & (h < hi_bound)
        vals = np.zeros(pts.shape[0])
        sub = pts[inside]
        vals[inside] = (
            phi.values(sub)
            * grad_psi_norm_sq(params, sigma[inside], h[inside]) ** (p / 2.0)
        )
        return vals, int(inside.sum())

    mean, stderr, acc = _mc_over_box(params, spec, integrand, samples, seed, stream, threads)
    scale = 1.0 / (2.0 * delta)
    return MCEstimate(
        mean=scale * mean, stderr=scale * stderr, samples=samples, seed=seed, accepted=acc
    )


def shell_integral_extrapolated(
    params: SpaceParams, p: float, R: float, phi: ScalarField,
    samples: int, seed: int, threads: int | None = None,
    delta_fracs: tuple[float, ...] = (0.1, 0.05, 0.025),
) -> MCEstimate:
    """Richardson extrapolation of shell_integral over halving shell widths."""
    ests = [
        shell_integral(
            params, p, R, frac * R, phi, samples, seed, threads,
            stream=STREAM_SHELL + idx,
        )
        for idx, frac in enumerate(delta_fracs)
    ]
    limit, err = richardson_even([e.mean for e in ests], [e.stderr for e in ests])
    return MCEstimate(
        mean=limit, stderr=err, samples=samples, seed=seed,
        accepted=sum(e.accepted for e in ests),
    )


def density_limit(
    params: SpaceParams, p: float, phi: ScalarField, radii, samples: int, seed: int,
    threads: int | None = None, sigma: MCEstimate | None = None,
) -> list[MCEstimate]:
    """R^(1-Q)/(Q sigma_p) * surface integral of phi, for each R in radii.

    The sequence converges to phi(x0) as R -> 0.  sigma_p is re-estimated
    from a companion stream of the same seed unless supplied.
    """
    radii = [float(R) for R in radii]
    if any(R <= 0 for R in radii):
        raise DomainError("radii must be positive")
    if sigma is None:
        sigma = sigma_p(params, p, samples, seed, threads, stream=STREAM_SIGMA_COMPANION)
    Q = params.Q
    out = []
    for R in radii:
        shell = shell_integral_extrapolated(params, p, R, phi, samples, seed, threads)
        scale = R ** (1.0 - Q) / (Q * sigma.mean)
        value = scale * shell.mean
        rel = np.hypot(
            shell.stderr / shell.mean if shell.mean != 0 else 0.0,
            sigma.stderr / sigma.mean,
        )
        out.append(
            MCEstimate(
                mean=value, stderr=abs(value) * float(rel), samples=samples,
                seed=seed, accepted=shell.accepted,
            )
        )
    return out


def sample_points(
    params: SpaceParams, count: int, seed: int,
    box_radius: float = 2.0, min_psi: float = 0.05, min_sigma: float = 1e-10,
) -> np.ndarray:
    """Random points in the bounding box of B_box_radius, away from the gauge axis.

    Rejects psi < min_psi and Sigma < min_sigma so that every returned point
    supports the full horizontal calculus for any k.
    """
    spec = ball_spec(params, box_radius)
    lo = params.x0 - spec.half_widths
    width = 2.0 * spec.half_widths
    out = np.empty((count, params.dim))
    have = 0
    shard = 0
    while have < count:
        rng = _shard_rng(seed, STREAM_POINTS, shard)
        pts = lo + rng.random((max(count, 256), params.dim)) * width
        sigma, _, h = gauge_parts(params, pts)
        psi = h ** (1.0 / (4 * params.k))
        good = pts[(psi >= min_psi) & (sigma >= min_sigma)]
        take = min(count - have, good.shape[0])
        out[have : have + take] = good[:take]
        have += take
        shard += 1
    return out
