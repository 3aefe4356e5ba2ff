"""Horizontal calculus for the frame X_1, ..., X_2n.

The frame on R^(2n+1) is

    X_i = d/dx_i + b_i(x) d/dt,
    b_i = +2kc (x_(i+n) - a_(i+n)) Sigma^(k-1)   for 1 <= i <= n,
    b_i = -2kc (x_(i-n) - a_(i-n)) Sigma^(k-1)   for n < i <= 2n.

The t-coefficients are t-independent, so the frame is divergence-free for
Lebesgue measure and second-order operators reduce to Euclidean 2-jets plus
the closed-form coefficient gradients below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DegeneratePointError
from .fields import ScalarField
from .space import SpaceParams, as_point


@dataclass(frozen=True)
class FrameCoefficients:
    """Euclidean data of one frame field X_i at a point.

    vector is the (2n+1)-coefficient vector (standard basis entry i-1 plus
    the t-coefficient in the last slot); t_coeff_grad is the Euclidean
    gradient of that t-coefficient.
    """

    index: int
    vector: np.ndarray
    t_coeff_grad: np.ndarray


def _sigma_power(sigma: float, e: float, where: str) -> float:
    # Sigma^e for e possibly negative or zero at Sigma == 0.
    if e == 0.0:
        return 1.0
    if sigma == 0.0:
        if e > 0.0:
            return 0.0
        raise DegeneratePointError(f"{where}: undefined at Sigma = 0 for this k")
    return sigma**e


def _horizontal_offsets(params: SpaceParams, P: np.ndarray):
    u = P[: 2 * params.n] - params.a
    sigma = float(u @ u)
    return u, sigma


def t_coefficients(params: SpaceParams, P) -> np.ndarray:
    """All 2n t-coefficients b_i at P."""
    P = as_point(params, P)
    u, sigma = _horizontal_offsets(params, P)
    n, k, c = params.n, params.k, params.c
    if sigma == 0.0 and k < 1.0:
        raise DegeneratePointError("t-coefficients undefined at Sigma = 0 for k < 1")
    sk1 = _sigma_power(sigma, k - 1.0, "t_coefficients")
    b = np.empty(2 * n)
    b[:n] = 2 * k * c * u[n:] * sk1
    b[n:] = -2 * k * c * u[:n] * sk1
    return b


def t_coefficient_gradients(params: SpaceParams, P) -> np.ndarray:
    """(2n, 2n+1) array: row i is the Euclidean gradient of b_(i+1).

    d b_i / d x_m = +-2kc [ delta_(m,partner) Sigma^(k-1)
                            + 2(k-1) u_partner u_m Sigma^(k-2) ],
    d b_i / d t = 0.  At Sigma = 0 the gradients vanish for k > 1 (both
    terms are O(Sigma^(k-1))), are the constant delta terms at k = 1, and
    are undefined for k < 1.
    """
    P = as_point(params, P)
    u, sigma = _horizontal_offsets(params, P)
    n, k, c = params.n, params.k, params.c
    d = params.dim
    grads = np.zeros((2 * n, d))
    if sigma == 0.0 and k > 1.0:
        return grads
    sk1 = _sigma_power(sigma, k - 1.0, "coefficient gradients") if k != 1.0 else 1.0
    if k == 1.0:
        sk2_term = np.zeros((2 * n, 2 * n))
    else:
        sk2 = _sigma_power(sigma, k - 2.0, "coefficient gradients")
        sk2_term = 2 * (k - 1.0) * sk2 * np.outer(u, u)
    for i in range(2 * n):
        sign = 1.0 if i < n else -1.0
        partner = i + n if i < n else i - n
        row = sign * 2 * k * c * sk2_term[partner]
        row[partner] += sign * 2 * k * c * sk1
        grads[i, : 2 * n] = row
    return grads


def field_coefficients(params: SpaceParams, i: int, P) -> FrameCoefficients:
    """Euclidean coefficients of X_i (1-based index) and the t-coefficient gradient."""
    if not 1 <= i <= 2 * params.n:
        raise ConfigurationError(f"frame index must lie in 1..{2 * params.n}, got {i}")
    b = t_coefficients(params, P)
    grads = t_coefficient_gradients(params, P)
    vec = np.zeros(params.dim)
    vec[i - 1] = 1.0
    vec[2 * params.n] = b[i - 1]
    return FrameCoefficients(index=i, vector=vec, t_coeff_grad=grads[i - 1])


def frame_matrix(params: SpaceParams, P) -> np.ndarray:
    """(2n, 2n+1) matrix whose rows are the Euclidean coefficients of X_i."""
    b = t_coefficients(params, P)
    E = np.zeros((2 * params.n, params.dim))
    E[:, : 2 * params.n] = np.eye(2 * params.n)
    E[:, 2 * params.n] = b
    return E


def horizontal_gradient(params: SpaceParams, field: ScalarField, P) -> np.ndarray:
    """(X_1 f, ..., X_2n f) at P."""
    jet = field.jet(as_point(params, P))
    return frame_matrix(params, P) @ jet.grad


def horizontal_hessian_sym(params: SpaceParams, field: ScalarField, P) -> np.ndarray:
    """Symmetrized second-order matrix (X_i X_j f + X_j X_i f) / 2, for i,j = 1..2n."""
    P = as_point(params, P)
    jet = field.jet(P)
    E = frame_matrix(params, P)
    grads = t_coefficient_gradients(params, P)
    core = E @ jet.hess @ E.T
    core = 0.5 * (core + core.T)  # matmul is not bit-symmetric
    # X_i b_j = E_i . grad b_j  (the t-component of grad b_j is zero)
    xb = E @ grads.T
    gt = jet.grad[2 * params.n]
    return core + 0.5 * gt * (xb + xb.T)


def infinity_laplacian(params: SpaceParams, field: ScalarField, P) -> float:
    """<grad_0 f, (D^2 f)* grad_0 f>."""
    hg = horizontal_gradient(params, field, P)
    M = horizontal_hessian_sym(params, field, P)
    return float(hg @ M @ hg)


def p_laplacian(params: SpaceParams, field: ScalarField, P, p: float) -> float:
    """div(|grad_0 f|^(p-2) grad_0 f) via the trace expansion.

    Uses |g|^(p-2) tr(D^2 f)* + (p-2) |g|^(p-4) <g, (D^2 f)* g>.  At points
    where grad_0 f vanishes exactly this returns 0 by convention for p >= 2
    and raises for p < 2.
    """
    hg = horizontal_gradient(params, field, P)
    M = horizontal_hessian_sym(params, field, P)
    gn2 = float(hg @ hg)
    trace = float(np.trace(M))
    if gn2 == 0.0:
        if p < 2.0:
            raise DegeneratePointError(
                "p-Laplacian undefined where the horizontal gradient vanishes (p < 2)"
            )
        return 0.0
    if p == 2.0:
        return trace
    inf_term = float(hg @ M @ hg)
    return gn2 ** ((p - 2.0) / 2.0) * trace + (p - 2.0) * gn2 ** ((p - 4.0) / 2.0) * inf_term


def p_laplacian_divergence_form(
    params: SpaceParams, field: ScalarField, P, p: float
) -> float:
    """Same operator assembled as sum_i X_i(|grad_0 f|^(p-2) X_i f).

    Builds the Euclidean gradient of each flux component through the
    closed-form coefficient gradients; cross-checks the trace expansion.
    Requires grad_0 f != 0.
    """
    P = as_point(params, P)
    jet = field.jet(P)
    E = frame_matrix(params, P)
    grads = t_coefficient_gradients(params, P)
    gt = jet.grad[2 * params.n]
    xif = E @ jet.grad
    q = float(xif @ xif)
    if q == 0.0:
        raise DegeneratePointError("divergence form needs a nonvanishing gradient")
    # Euclidean gradient of X_i f, rows (2n, d)
    grad_xf = E @ jet.hess + gt * grads
    grad_q = 2.0 * xif @ grad_xf
    w = q ** ((p - 2.0) / 2.0)
    dw = (p - 2.0) / 2.0 * q ** ((p - 4.0) / 2.0)
    total = 0.0
    for i in range(2 * params.n):
        grad_flux = dw * xif[i] * grad_q + w * grad_xf[i]
        total += float(E[i] @ grad_flux)
    return total


def lie_bracket(params: SpaceParams, i: int, j: int, P) -> np.ndarray:
    """[X_i, X_j] at P as a (2n+1)-coefficient vector; only d/dt survives.

    Computed from the closed-form coefficient gradients:
    [X_i, X_j] = (X_i b_j - X_j b_i) d/dt.
    """
    if not 1 <= i < j <= 2 * params.n:
        raise ConfigurationError(f"need 1 <= i < j <= {2 * params.n}, got ({i}, {j})")
    P = as_point(params, P)
    E = frame_matrix(params, P)
    grads = t_coefficient_gradients(params, P)
    out = np.zeros(params.dim)
    out[2 * params.n] = float(E[i - 1] @ grads[j - 1] - E[j - 1] @ grads[i - 1])
    return out


def lie_bracket_printed(params: SpaceParams, i: int, j: int, P) -> np.ndarray:
    """Legacy case-split bracket formulas, evaluated verbatim.

    Kept for comparison reporting only: they agree with lie_bracket at k = 1
    but are known to disagree for k != 1 (see bracket_comparison).
    """
    if not 1 <= i < j <= 2 * params.n:
        raise ConfigurationError(f"need 1 <= i < j <= {2 * params.n}, got ({i}, {j})")
    P = as_point(params, P)
    u, sigma = _horizontal_offsets(params, P)
    n, k, c = params.n, params.k, params.c
    ii, jj = i - 1, j - 1

    def us(idx: int) -> float:
        return float(u[idx])

    if k == 1.0:
        lead = 0.0
    else:
        sk2 = _sigma_power(sigma, k - 2.0, "printed bracket")
        if j <= n:
            lead = 8 * k * c * (k - 1) * sk2 * (us(jj + n) * us(ii) - us(ii + n) * us(jj))
        elif i > n:
            lead = 8 * k * c * (k - 1) * sk2 * (us(ii - n) * us(jj) - us(jj - n) * us(ii))
        else:
            lead = 8 * k * c * (k - 1) * sk2 * (us(ii + n) * us(jj) - us(jj - n) * us(ii))
    out = np.zeros(params.dim)
    out[2 * params.n] = lead
    if i <= n < j and i == j - n:
        sk1 = _sigma_power(sigma, k - 1.0, "printed bracket")
        out[2 * params.n] -= 4 * k * c * sk1
    return out


def bracket_comparison(params: SpaceParams, points) -> list[dict]:
    """Compare lie_bracket with lie_bracket_printed over all pairs and points.

    Returns one record per (i, j, point) with both t-coefficients and an
    agreement flag at relative 1e-9.
    """
    records = []
    for P in points:
        P = as_point(params, P)
        for i in range(1, 2 * params.n + 1):
            for j in range(i + 1, 2 * params.n + 1):
                computed = float(lie_bracket(params, i, j, P)[2 * params.n])
                printed = float(lie_bracket_printed(params, i, j, P)[2 * params.n])
                diff = abs(computed - printed)
                records.append(
                    {
                        "i": i,
                        "j": j,
                        "point": [float(x) for x in P],
                        "computed": computed,
                        "printed": printed,
                        "abs_diff": diff,
                        "agree": bool(diff <= 1e-9 * (1.0 + abs(computed))),
                    }
                )
    return records


# Internal constants of the analytic cross-check for the profile's
# p-Laplacian: the prefactor 2n + 2k + 2*chi + 4k*upsilon vanishes
# identically, which is what the operator sweeps verify numerically.

def upsilon_constant(w: float, p: float) -> float:
    return w * (p - 1.0) - p / 2.0


def chi_constant(k: float, p: float) -> float:
    return k * p - p / 2.0
