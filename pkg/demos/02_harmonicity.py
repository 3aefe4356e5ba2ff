"""The fundamental-solution profile is p-harmonic away from the base point.

Exact 2-jets drive the horizontal operators, so |Delta_p(psi^alpha)| lands at
rounding level (~1e-15) rather than finite-difference level.  The gauge psi
itself is infinity-harmonic.
"""

import numpy as np

from sublap import (
    FundamentalProfile,
    GaugePsi,
    SpaceParams,
    gauge,
    horizontal_gradient,
    infinity_laplacian,
    p_laplacian,
    sample_points,
)

for n, k, c in ((1, 1.0, 1.0), (1, 2.0, 1.0), (2, 1.5, -2.0)):
    params = SpaceParams(n, k, c)
    pts = sample_points(params, 50, seed=7)
    print(f"\nsetup n={n}, k={k}, c={c}  (Q = {params.Q})")

    for p in (1.5, 2.0, 3.0, params.Q):
        field = FundamentalProfile(params, p)
        worst = 0.0
        for P in pts:
            hg = horizontal_gradient(params, field, P)
            scale = 1.0 + float(hg @ hg) ** ((p - 1.0) / 2.0) / gauge(params, P).psi
            worst = max(worst, abs(p_laplacian(params, field, P, p)) / scale)
        label = "log psi " if p == params.Q else "psi^alpha"
        print(f"  p={p:<4g} {label}: max scaled |Delta_p| = {worst:.2e}")

    psi = GaugePsi(params)
    worst = max(abs(infinity_laplacian(params, psi, P)) for P in pts)
    print(f"  infinity-Laplacian of psi: max |Delta_inf| = {worst:.2e}")

    # closed form for the horizontal gradient norm, checked pointwise
    errs = []
    for P in pts:
        g = gauge(params, P)
        hg = horizontal_gradient(params, psi, P)
        closed = c**2 * g.Sigma ** (2 * k - 1.0) * g.h ** ((1.0 - 2 * k) / (2 * k))
        errs.append(abs(float(hg @ hg) - closed) / closed)
    print(f"  |grad_0 psi|^2 closed form: max rel err = {np.max(errs):.2e}")
