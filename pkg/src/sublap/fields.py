"""Scalar fields on R^(2n+1) with exact 2-jets and vectorized evaluation.

Each field offers jet(P) for pointwise calculus and values(pts) for bulk
Monte Carlo work on an (N, dim) array of points.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, SingularPointError
from .jets import Jet2, coordinate_jets
from .space import SpaceParams, as_point, exponents, gauge, is_base_point


class ScalarField:
    """Base class; subclasses set `tag` and implement jet()."""

    tag = "user-composite"
    dim: int

    def jet(self, P) -> Jet2:
        raise NotImplementedError

    def value(self, P) -> float:
        return self.jet(P).value

    def values(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        return np.array([self.jet(p).value for p in pts])

    def __add__(self, other: "ScalarField") -> "LinearCombination":
        return LinearCombination([self, other], [1.0, 1.0])

    def __mul__(self, weight: float) -> "LinearCombination":
        return LinearCombination([self], [float(weight)])

    __rmul__ = __mul__


def gauge_parts(params: SpaceParams, pts: np.ndarray):
    """Vectorized (Sigma, tau, h) over an (N, dim) array of points."""
    pts = np.asarray(pts, dtype=float)
    u = pts[:, : 2 * params.n] - params.a
    tau = pts[:, 2 * params.n] - params.s
    sigma = np.einsum("ij,ij->i", u, u)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = params.c**2 * sigma ** (2 * params.k) + tau * tau
    return sigma, tau, h


class GaugeH(ScalarField):
    """h = c^2 Sigma^(2k) + (t-s)^2; polynomial-exact when 2k is an integer."""

    tag = "gauge-h"

    def __init__(self, params: SpaceParams):
        self.params = params
        self.dim = params.dim

    def jet(self, P) -> Jet2:
        params = self.params
        P = as_point(params, P)
        xs = coordinate_jets(P)
        sigma = Jet2.constant(0.0, params.dim)
        for l in range(2 * params.n):
            d = xs[l] - params.a[l]
            sigma = sigma + d * d
        tau = xs[2 * params.n] - params.s
        return params.c**2 * sigma ** (2 * params.k) + tau * tau

    def values(self, pts) -> np.ndarray:
        return gauge_parts(self.params, pts)[2]


class GaugePsi(ScalarField):
    """psi = h^(1/(4k)); not differentiable at the base point."""

    tag = "gauge-psi"

    def __init__(self, params: SpaceParams):
        self.params = params
        self.dim = params.dim
        self._h = GaugeH(params)

    def jet(self, P) -> Jet2:
        hj = self._h.jet(P)
        if hj.value == 0.0:
            raise SingularPointError("psi has no 2-jet at the base point")
        return hj ** (1.0 / (4 * self.params.k))

    def values(self, pts) -> np.ndarray:
        h = self._h.values(pts)
        return h ** (1.0 / (4 * self.params.k))


class FundamentalProfile(ScalarField):
    """scale * psi^alpha for p != Q, scale * log(psi) for p == Q."""

    def __init__(self, params: SpaceParams, p: float, scale: float = 1.0):
        self.params = params
        self.dim = params.dim
        self.p = float(p)
        self.scale = float(scale)
        self.exps = exponents(params, p)
        self.tag = "profile-log-psi" if self.exps.is_log_case else "profile-psi-alpha"
        self._h = GaugeH(params)

    def jet(self, P) -> Jet2:
        hj = self._h.jet(P)
        if hj.value == 0.0:
            raise SingularPointError("profile is singular at the base point")
        if self.exps.is_log_case:
            return (self.scale / (4 * self.params.k)) * hj.log()
        return self.scale * hj**self.exps.w

    def values(self, pts) -> np.ndarray:
        h = self._h.values(pts)
        if self.exps.is_log_case:
            return self.scale / (4 * self.params.k) * np.log(h)
        return self.scale * h**self.exps.w

    def eta_prime(self, psi: np.ndarray) -> np.ndarray:
        """d/drho of the radial profile (scale * rho^alpha or scale * log rho)."""
        if self.exps.is_log_case:
            return self.scale / psi
        return self.scale * self.exps.alpha * psi ** (self.exps.alpha - 1.0)


class Constant(ScalarField):
    tag = "polynomial"

    def __init__(self, value: float, dim: int):
        self.c = float(value)
        self.dim = dim

    def jet(self, P) -> Jet2:
        return Jet2.constant(self.c, self.dim)

    def values(self, pts) -> np.ndarray:
        return np.full(np.asarray(pts).shape[0], self.c)


class Polynomial(ScalarField):
    """Sum of monomials coeff * prod_m x_m^e_m, with exact derivatives.

    terms: iterable of (coeff, exponents) with len(exponents) == dim.
    """

    tag = "polynomial"

    def __init__(self, terms, dim: int):
        self.dim = dim
        self.terms = [(float(c), tuple(int(e) for e in es)) for c, es in terms]
        for _, es in self.terms:
            if len(es) != dim or any(e < 0 for e in es):
                raise DomainError("monomial exponents must be nonnegative, one per coordinate")

    @staticmethod
    def _dpow(x: float, e: int, order: int) -> float:
        # order-th derivative of x^e
        coef = 1.0
        for j in range(order):
            coef *= e - j
        if e - order < 0:
            return 0.0
        return coef * x ** (e - order)

    def jet(self, P) -> Jet2:
        P = np.asarray(P, dtype=float)
        d = self.dim
        val = 0.0
        grad = np.zeros(d)
        hess = np.zeros((d, d))
        for c, es in self.terms:
            base = [P[m] ** es[m] for m in range(d)]
            prod = c * float(np.prod(base))
            val += prod
            for m in range(d):
                dm = self._dpow(P[m], es[m], 1)
                rest = c * float(np.prod([base[q] for q in range(d) if q != m]))
                grad[m] += rest * dm
                hess[m, m] += rest * self._dpow(P[m], es[m], 2)
                for q in range(m + 1, d):
                    restmq = c * float(
                        np.prod([base[r] for r in range(d) if r != m and r != q])
                    )
                    cross = restmq * dm * self._dpow(P[q], es[q], 1)
                    hess[m, q] += cross
                    hess[q, m] += cross
        return Jet2(val, grad, hess)

    def values(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(pts.shape[0])
        for c, es in self.terms:
            term = np.full(pts.shape[0], c)
            for m, e in enumerate(es):
                if e:
                    term = term * pts[:, m] ** e
            out += term
        return out


class CutoffBump(ScalarField):
    """Smooth compactly supported bump built from h.

    phi = amplitude * exp(-h / (R0^(4k) - h)) on {h < R0^(4k)}, 0 outside.
    Equals `amplitude` at the base point and is smooth everywhere h is.
    """

    tag = "test-bump"
    __test__ = False  # the TestBump alias must not be collected by pytest

    def __init__(self, params: SpaceParams, support_radius: float, amplitude: float = 1.0):
        if not support_radius > 0:
            raise DomainError("support radius must be positive")
        self.params = params
        self.dim = params.dim
        self.support_radius = float(support_radius)
        self.amplitude = float(amplitude)
        self.B = self.support_radius ** (4 * params.k)
        self._h = GaugeH(params)

    def jet(self, P) -> Jet2:
        hj = self._h.jet(P)
        if hj.value >= self.B * (1.0 - 1e-12):
            return Jet2.constant(0.0, self.dim)
        return self.amplitude * (-(hj / (self.B - hj))).exp()

    def values(self, pts) -> np.ndarray:
        h = self._h.values(pts)
        inside = h < self.B
        out = np.zeros_like(h)
        hs = h[inside]
        out[inside] = self.amplitude * np.exp(-hs / (self.B - hs))
        return out

    def d_dh(self, pts) -> np.ndarray:
        """d phi / dh, vectorized (phi is a function of h alone)."""
        h = self._h.values(pts)
        inside = h < self.B * (1.0 - 1e-12)
        out = np.zeros_like(h)
        hs = h[inside]
        out[inside] = (
            -self.amplitude
            * self.B
            / (self.B - hs) ** 2
            * np.exp(-hs / (self.B - hs))
        )
        return out

    def value_at_center(self) -> float:
        return self.amplitude


class LinearCombination(ScalarField):
    tag = "user-composite"

    def __init__(self, fields, weights):
        if len(fields) != len(weights) or not fields:
            raise DomainError("need matching, nonempty fields and weights")
        self.fields = list(fields)
        self.weights = [float(w) for w in weights]
        self.dim = fields[0].dim
        if any(f.dim != self.dim for f in fields):
            raise DomainError("all fields must share a dimension")

    def jet(self, P) -> Jet2:
        out = self.weights[0] * self.fields[0].jet(P)
        for f, w in zip(self.fields[1:], self.weights[1:]):
            out = out + w * f.jet(P)
        return out

    def values(self, pts) -> np.ndarray:
        out = self.weights[0] * self.fields[0].values(pts)
        for f, w in zip(self.fields[1:], self.weights[1:]):
            out = out + w * f.values(pts)
        return out

    def d_dh(self, pts) -> np.ndarray:
        out = self.weights[0] * self.fields[0].d_dh(pts)
        for f, w in zip(self.fields[1:], self.weights[1:]):
            out = out + w * f.d_dh(pts)
        return out

    def value_at_center(self) -> float:
        return sum(
            w * f.value_at_center() for f, w in zip(self.fields, self.weights)
        )


class AnnulusPotential(ScalarField):
    """The explicit p-harmonic potential on the gauge annulus r < psi < R.

    (psi^alpha - R^alpha) / (r^alpha - R^alpha) for p != Q, the log analogue
    at p == Q.  Equals 1 at psi = r and 0 at psi = R.
    """

    tag = "user-composite"

    def __init__(self, params: SpaceParams, p: float, r: float, R: float):
        if not 0 < r < R:
            raise DomainError(f"need 0 < r < R, got r={r}, R={R}")
        self.params = params
        self.dim = params.dim
        self.p = float(p)
        self.r = float(r)
        self.R = float(R)
        self.exps = exponents(params, p)
        self._h = GaugeH(params)
        if self.exps.is_log_case:
            self._den = np.log(r) - np.log(R)
        else:
            self._den = r**self.exps.alpha - R**self.exps.alpha

    def jet(self, P) -> Jet2:
        hj = self._h.jet(P)
        if hj.value == 0.0:
            raise SingularPointError("potential is singular at the base point")
        k4 = 4 * self.params.k
        if self.exps.is_log_case:
            return (hj.log() / k4 - np.log(self.R)) / self._den
        return (hj ** (self.exps.alpha / k4) - self.R**self.exps.alpha) / self._den

    def values(self, pts) -> np.ndarray:
        h = self._h.values(pts)
        k4 = 4 * self.params.k
        if self.exps.is_log_case:
            return (np.log(h) / k4 - np.log(self.R)) / self._den
        return (h ** (self.exps.alpha / k4) - self.R**self.exps.alpha) / self._den

    def eta_prime(self, psi: np.ndarray) -> np.ndarray:
        """Radial derivative of the profile at gauge radius psi."""
        if self.exps.is_log_case:
            return 1.0 / (psi * self._den)
        return self.exps.alpha * psi ** (self.exps.alpha - 1.0) / self._den


def annulus_potential(params: SpaceParams, p: float, r: float, R: float, P) -> float:
    """Value of the annulus potential at P; P must satisfy r <= psi(P) <= R."""
    field = AnnulusPotential(params, p, r, R)
    psi = gauge(params, P).psi
    if not r <= psi <= R:
        raise DomainError(f"point has psi={psi:.6g}, outside the annulus [{r}, {R}]")
    if is_base_point(params, P):
        raise SingularPointError("potential evaluated at the base point")
    return float(field.values(np.asarray(P, dtype=float)[None, :])[0])
