"""Shared oracles for the test suite: finite differences and deterministic
quadrature, kept independent of the library code paths they check."""

import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, dblquad, quad

# ---------------------------------------------------------------- finite differences


def fd_gradient(fn, P, step):
    """Central-difference gradient of a scalar callable."""
    P = np.asarray(P, dtype=float)
    out = np.zeros(P.size)
    for m in range(P.size):
        hi = P.copy()
        lo = P.copy()
        hi[m] += step
        lo[m] -= step
        out[m] = (fn(hi) - fn(lo)) / (2 * step)
    return out


def fd_jacobian(vec_fn, P, step):
    """Central-difference Jacobian of a vector callable; rows index outputs."""
    P = np.asarray(P, dtype=float)
    cols = []
    for m in range(P.size):
        hi = P.copy()
        lo = P.copy()
        hi[m] += step
        lo[m] -= step
        cols.append((np.asarray(vec_fn(hi)) - np.asarray(vec_fn(lo))) / (2 * step))
    return np.stack(cols, axis=-1)


def close_scaled(a, b, rtol):
    """max |a - b| <= rtol * (1 + max |b|)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.max(np.abs(a - b)) <= rtol * (1.0 + np.max(np.abs(b)))


# ---------------------------------------------------------------- quadrature oracles
#
# Every integrand in the library depends on the point only through
# (Sigma, tau), so volume integrals reduce to 2-D quadrature:
#   integral f dL = omega_{2n-1} * int int f(rho^2, tau) rho^(2n-1) drho dtau
# with omega the surface area of the unit (2n-1)-sphere.


def sphere_area(n):
    from math import gamma, pi

    return 2 * pi**n / gamma(n)


def grad_psi_sq_closed(n, k, c, rho, tau):
    h = c**2 * rho ** (4 * k) + tau * tau
    return c**2 * rho ** (4 * k - 2.0) * h ** ((1.0 - 2 * k) / (2 * k))


def sigma_p_quadrature(n, k, c, p, epsrel=1e-9):
    """sigma_p by deterministic 2-D quadrature over the unit gauge ball."""
    rho_max = abs(c) ** (-1.0 / (2 * k))

    def integrand(tau, rho):
        return grad_psi_sq_closed(n, k, c, rho, tau) ** (p / 2.0) * rho ** (2 * n - 1)

    def tau_max(rho):
        return np.sqrt(max(1.0 - c**2 * rho ** (4 * k), 0.0))

    with warnings.catch_warnings():
        # the inner integral has a square-root edge; accuracy is fine
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _ = dblquad(integrand, 0.0, rho_max, 0.0, tau_max, epsrel=epsrel)
    return 2.0 * sphere_area(n) * val


def pairing_quadrature(n, k, c, p, alpha, scale_u, bump_B, r, R, epsrel=1e-9):
    """The annulus pairing integral for u = scale_u * psi^alpha against the
    standard bump of support h < bump_B, by deterministic quadrature."""
    rho_max = R * abs(c) ** (-1.0 / (2 * k))
    r4, R4 = r ** (4 * k), R ** (4 * k)

    def integrand(tau, rho):
        h = c**2 * rho ** (4 * k) + tau * tau
        if not (r4 < h < R4):
            return 0.0
        psi = h ** (1.0 / (4 * k))
        s_u = scale_u * alpha * psi ** (alpha - 1.0)
        if h < bump_B:
            s_phi = -bump_B / (bump_B - h) ** 2 * np.exp(-h / (bump_B - h))
        else:
            s_phi = 0.0
        m2 = grad_psi_sq_closed(n, k, c, rho, tau)
        return (
            abs(s_u) ** (p - 2.0)
            * s_u
            * s_phi
            * (4 * k)
            * psi ** (4 * k - 1.0)
            * m2 ** (p / 2.0)
            * rho ** (2 * n - 1)
        )

    def tau_hi(rho):
        return np.sqrt(max(R4 - c**2 * rho ** (4 * k), 0.0))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _ = dblquad(integrand, 0.0, rho_max, 0.0, tau_hi, epsrel=epsrel)
    return 2.0 * sphere_area(n) * val


def shell_bump_quadrature(Q, k, bump_B, sigma_value, R, delta):
    """Exact (up to 1-D quadrature) thin-shell integral of the standard bump:
    (1/(2 delta)) int_{R-delta}^{R+delta} g(rho^(4k)) Q sigma rho^(Q-1) drho."""

    def integrand(rho):
        h = rho ** (4 * k)
        g = np.exp(-h / (bump_B - h)) if h < bump_B else 0.0
        return g * Q * sigma_value * rho ** (Q - 1.0)

    val, _ = quad(integrand, R - delta, R + delta, epsrel=1e-11)
    return val / (2 * delta)


def radial_capacity_quadrature(Q, p, alpha_or_none, r, R):
    """1-D coarea oracle: Q int_r^R |eta'|^p rho^(Q-1) drho for the explicit
    extremal profile (capacity in sigma_p units)."""
    if alpha_or_none is None:
        den = np.log(r) - np.log(R)

        def eta_prime(rho):
            return 1.0 / (rho * den)

    else:
        a = alpha_or_none
        den = r**a - R**a

        def eta_prime(rho):
            return a * rho ** (a - 1.0) / den

    val, _ = quad(lambda rho: abs(eta_prime(rho)) ** p * rho ** (Q - 1.0), r, R,
                  epsrel=1e-12)
    return Q * val
