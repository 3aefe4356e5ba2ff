"""Forward-mode 2-jets: value, gradient, and Hessian, exact to rounding.

A Jet2 carries f(P), grad f(P), and the full symmetric Hessian of a scalar
field at a point.  Arithmetic follows the product and chain rules, so any
composite built from coordinates evaluates without truncation error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArithmeticDomainError

Number = (int, float, np.floating, np.integer)


@dataclass(frozen=True)
class Jet2:
    value: float
    grad: np.ndarray  # (d,)
    hess: np.ndarray  # (d, d), symmetric

    @property
    def dim(self) -> int:
        return self.grad.shape[0]

    # ---------- constructors ----------

    @staticmethod
    def constant(value: float, dim: int) -> "Jet2":
        return Jet2(float(value), np.zeros(dim), np.zeros((dim, dim)))

    @staticmethod
    def variable(value: float, index: int, dim: int) -> "Jet2":
        g = np.zeros(dim)
        g[index] = 1.0
        return Jet2(float(value), g, np.zeros((dim, dim)))

    # ---------- arithmetic ----------

    def _coerce(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return other
        if isinstance(other, Number):
            return Jet2.constant(float(other), self.dim)
        raise TypeError(f"cannot combine Jet2 with {type(other).__name__}")

    def __add__(self, other) -> "Jet2":
        o = self._coerce(other)
        return Jet2(self.value + o.value, self.grad + o.grad, self.hess + o.hess)

    __radd__ = __add__

    def __neg__(self) -> "Jet2":
        return Jet2(-self.value, -self.grad, -self.hess)

    def __sub__(self, other) -> "Jet2":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Jet2":
        return (-self) + self._coerce(other)

    def __mul__(self, other) -> "Jet2":
        o = self._coerce(other)
        cross = np.outer(self.grad, o.grad)
        return Jet2(
            self.value * o.value,
            self.value * o.grad + o.value * self.grad,
            self.value * o.hess + o.value * self.hess + cross + cross.T,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet2":
        o = self._coerce(other)
        if o.value == 0.0:
            raise ArithmeticDomainError("div", "division by a jet with zero value")
        inv = o._chain(1.0 / o.value, -1.0 / o.value**2, 2.0 / o.value**3)
        return self * inv

    def __rtruediv__(self, other) -> "Jet2":
        return self._coerce(other) / self

    def _chain(self, f: float, fp: float, fpp: float) -> "Jet2":
        # 2-jet of g(a) given g, g', g'' at a.value.
        return Jet2(
            f,
            fp * self.grad,
            fp * self.hess + fpp * np.outer(self.grad, self.grad),
        )

    def __pow__(self, e) -> "Jet2":
        if not isinstance(e, Number):
            raise TypeError("jet exponent must be a real number")
        e = float(e)
        v = self.value
        if e == 0.0:
            return Jet2.constant(1.0, self.dim)
        if e == 1.0:
            return self
        if v == 0.0:
            if e.is_integer() and e >= 2.0:
                # 0^(e-1) = 0 and 0^(e-2) in {1, 0}: the rule below is exact.
                pass
            elif e > 1.0 and not self.grad.any():
                # Smooth composite with a flat 2-jet (e.g. Sigma^q at Sigma = 0).
                return Jet2.constant(0.0, self.dim)
            else:
                raise ArithmeticDomainError(
                    "pow", f"base 0 with exponent {e} has no 2-jet here"
                )
        if v < 0.0 and not e.is_integer():
            raise ArithmeticDomainError(
                "pow", f"negative base {v} with non-integer exponent {e}"
            )
        return self._chain(
            v**e, e * v ** (e - 1.0), e * (e - 1.0) * v ** (e - 2.0)
        )

    def log(self) -> "Jet2":
        if self.value <= 0.0:
            raise ArithmeticDomainError("log", f"argument {self.value} not positive")
        v = self.value
        return self._chain(np.log(v), 1.0 / v, -1.0 / v**2)

    def exp(self) -> "Jet2":
        ev = np.exp(self.value)
        return self._chain(ev, ev, ev)

    def sqrt(self) -> "Jet2":
        if self.value < 0.0:
            raise ArithmeticDomainError("sqrt", f"argument {self.value} negative")
        return self**0.5


def coordinate_jets(P) -> list[Jet2]:
    """One Jet2 variable per coordinate of P."""
    P = np.asarray(P, dtype=float)
    d = P.shape[0]
    return [Jet2.variable(P[i], i, d) for i in range(d)]
