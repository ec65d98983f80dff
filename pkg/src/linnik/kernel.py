"""Closed-form special functions used throughout the certification chain.

Everything here is an explicit formula or a one-dimensional quadrature:
the compactly supported weight ``f`` and its Laplace transform ``F``, the
triangle-weight transforms ``H`` and ``H2``, the zero-sum majorant ``B``,
the density weight ``w1`` with its reciprocal-integral ``w``, the tail
coefficient ``C``, and the classic zero-density bound.

All real arithmetic is double precision; quadratures are absolute-tolerance
adaptive (default 1e-12) and every downstream certification threshold
carries a margin that absorbs this error budget.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from scipy.integrate import IntegrationWarning, quad

# |z| below which the Laplace transform switches from the closed form to its
# Maclaurin series.  The closed form loses roughly 8*gamma^2*|z|^-4 * eps_mach
# in absolute terms to cancellation, so it only reaches 1e-10 accuracy for
# |z| >~ 0.07; the series converges fast for 2*gamma*|z| < 1.
SMALL_Z_RADIUS = 0.15
_SERIES_TERMS = 26

# |K*z| below which (1 - exp(-K z))/z is evaluated by series.
_H2_SERIES_RADIUS = 0.2

DEFAULT_QUAD_TOL = 1e-12

ArrayLike = Union[float, complex, np.ndarray]


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, estimate: float, achieved: float):
        super().__init__(f"{message} (estimate {estimate!r}, achieved abserr {achieved:.3e})")
        self.estimate = estimate
        self.achieved = achieved


def _quad(fn, a: float, b: float, tol: float, *, weight=None, wvar=None) -> float:
    """scipy.integrate.quad with an absolute-tolerance contract.

    The roundoff warning is silenced because the achieved error estimate is
    checked explicitly; near the double-precision floor the accepted error
    scales with the result's magnitude.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        y, err = quad(fn, a, b, epsabs=tol, epsrel=max(1e-13, tol), limit=400,
                      weight=weight, wvar=wvar)
    if err > max(50.0 * tol, 1e-9 * abs(y)):
        raise QuadratureError("quadrature did not converge", y, err)
    return y


@dataclass(frozen=True)
class WeightKernel:
    """Quintic weight f = g*g (autocorrelation of g(x) = gamma^2 - x^2).

    f(t) = -t^5/30 + (2 gamma^2/3) t^3 - (4 gamma^3/3) t^2 + 16 gamma^5/15
    on [0, 2 gamma], and 0 beyond.  Its Laplace transform F has nonnegative
    real part on the closed right half-plane, which is what every
    zero-repulsion inequality downstream relies on.
    """

    gamma: float

    def __post_init__(self):
        if not (self.gamma >= 0.5):
            raise ValueError(f"gamma must be >= 0.5, got {self.gamma}")

    @property
    def support_end(self) -> float:
        return 2.0 * self.gamma

    @property
    def f0(self) -> float:
        """f(0) = 16 gamma^5 / 15."""
        return 16.0 * self.gamma**5 / 15.0

    @property
    def F0(self) -> float:
        """F(0) = 8 gamma^6 / 9, the total mass of f."""
        return 8.0 * self.gamma**6 / 9.0

    def f(self, t: ArrayLike) -> ArrayLike:
        """Evaluate f(t) for t >= 0 (vectorized)."""
        arr = np.asarray(t, dtype=float)
        if np.any(arr < 0):
            raise ValueError("f is only defined for t >= 0")
        g = self.gamma
        inside = -arr**5 / 30.0 + (2.0 * g * g / 3.0) * arr**3 \
            - (4.0 * g**3 / 3.0) * arr**2 + 16.0 * g**5 / 15.0
        out = np.where(arr < 2.0 * g, inside, 0.0)
        if np.isscalar(t) or out.ndim == 0:
            return float(out)
        return out

    def moment(self, n: int) -> float:
        """int_0^{2 gamma} t^n f(t) dt, in closed form."""
        g, T = self.gamma, 2.0 * self.gamma
        return (-T**(n + 6) / (30.0 * (n + 6))
                + (2.0 * g * g / 3.0) * T**(n + 4) / (n + 4)
                - (4.0 * g**3 / 3.0) * T**(n + 3) / (n + 3)
                + (16.0 * g**5 / 15.0) * T**(n + 1) / (n + 1))

    def _series_coeffs(self) -> np.ndarray:
        return _series_coeffs_cached(self.gamma)

    def F(self, z: ArrayLike) -> ArrayLike:
        """Laplace transform of f, vectorized over complex z.

        Uses the closed form away from the origin and the Maclaurin series
        inside |z| < SMALL_Z_RADIUS, where the z^-6 cancellation would cost
        more digits than the 1e-9 cross-check budget allows.
        """
        z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.empty_like(z_arr)
        small = np.abs(z_arr) < SMALL_Z_RADIUS
        if small.any():
            out[small] = self._F_series(z_arr[small])
        big = ~small
        if big.any():
            out[big] = self._F_direct(z_arr[big])
        if np.isscalar(z) or np.asarray(z).ndim == 0:
            return complex(out[0])
        return out

    def _F_direct(self, z: np.ndarray) -> np.ndarray:
        g = self.gamma
        e = np.exp(-2.0 * g * z)
        return ((16.0 * g**5 / 15.0) / z
                - (8.0 * g**3 / 3.0) / z**3
                + 4.0 * g * g * (1.0 + e) / z**4
                + 4.0 * (-1.0 + e + 2.0 * g * z * e) / z**6)

    def _F_series(self, z: np.ndarray) -> np.ndarray:
        coeffs = self._series_coeffs()
        out = np.zeros_like(z)
        for c in coeffs[::-1]:
            out = out * (-z) + c
        return out

    def F_real(self, x: ArrayLike) -> ArrayLike:
        """F at real arguments (always real-valued)."""
        val = self.F(np.asarray(x, dtype=complex))
        if np.isscalar(x) or np.asarray(x).ndim == 0:
            return float(np.real(val))
        return np.real(val)

    def F_quadrature(self, z: complex, tol: float = DEFAULT_QUAD_TOL) -> complex:
        """Direct numerical Laplace transform, the oracle for F.

        Integrates f(t) e^{-zt} over the support with oscillatory-aware
        quadrature; raises QuadratureError if the tolerance is not met.
        """
        if tol <= 0:
            raise ValueError("tol must be positive")
        a, b = float(np.real(z)), float(np.imag(z))
        damped = lambda t: self.f(t) * math.exp(-a * t)
        if b == 0.0:
            re = _quad(damped, 0.0, self.support_end, tol)
            return complex(re, 0.0)
        re = _quad(damped, 0.0, self.support_end, tol, weight="cos", wvar=b)
        im = -_quad(damped, 0.0, self.support_end, tol, weight="sin", wvar=b)
        return complex(re, im)

    def xf_exp_moment(self, c: float, tol: float = 1e-10) -> float:
        """int_0^{2 gamma} x f(x) e^{c x} dx, by quadrature."""
        return _quad(lambda x: x * self.f(x) * math.exp(c * x),
                     0.0, self.support_end, tol)


@lru_cache(maxsize=128)
def _series_coeffs_cached(gamma: float) -> np.ndarray:
    kern = WeightKernel(gamma)
    return np.array([kern.moment(n) / math.factorial(n) for n in range(_SERIES_TERMS + 1)])


def f_eval(kernel: WeightKernel, t: ArrayLike) -> ArrayLike:
    return kernel.f(t)


def F_closed(kernel: WeightKernel, z: ArrayLike) -> ArrayLike:
    return kernel.F(z)


def F_quadrature(kernel: WeightKernel, z: complex, tol: float = DEFAULT_QUAD_TOL) -> complex:
    return kernel.F_quadrature(z, tol)


# --------------------------------------------------------------------------
# Global parameters of the final verification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LinnikParams:
    """Parameters of the final positivity argument.

    The defaults are the proven configuration; u, v, x are the sieve-weight
    break points derived from c1, c2 (with character constant 1/3).
    """

    L: float = 5.2
    K: float = 0.32
    theta: float = 1.15
    c1: float = 0.11
    c2: float = 0.27
    epsilon: float = 1e-7
    quad_tol: float = field(default=DEFAULT_QUAD_TOL, compare=True)

    def __post_init__(self):
        if self.c1 <= 0 or self.c2 <= 0 or self.K <= 0:
            raise ValueError("K, c1, c2 must be positive")
        if not self.L - 2.0 * self.K > max(3.0, 2.0 * self.x):
            raise ValueError(
                f"need L - 2K > max(3, 2x): {self.L - 2 * self.K} vs {max(3.0, 2.0 * self.x)}")

    @property
    def u(self) -> float:
        return 1.0 / 3.0 + 2.0 * self.c1

    @property
    def v(self) -> float:
        return self.u + self.c2

    @property
    def x(self) -> float:
        return 2.0 / 3.0 + 3.0 * self.c1 + self.c2

    @property
    def decay(self) -> float:
        """The exponential rate L - 2K."""
        return self.L - 2.0 * self.K

    # -- B ------------------------------------------------------------

    def B(self, lam: float) -> float:
        """Majorant for the weighted zero sum of a single character.

        B(lam) = (1-e^{-2K lam})/(6 K^2 lam) + (2K lam - 1 + e^{-2K lam})/(2 K^2 lam^2).
        The second numerator cancels catastrophically for small arguments and
        switches to its Taylor series there; expm1 keeps the first stable.
        """
        if lam <= 0:
            raise ValueError("lam must be positive")
        K = self.K
        xv = 2.0 * K * lam
        t1 = -math.expm1(-xv) / (6.0 * K * K * lam)
        if xv < 0.2:
            # x - 1 + e^{-x} = sum_{k>=2} (-x)^k / k!, summed without cancellation
            acc = 0.0
            for j in range(10, -1, -1):
                acc = acc * (-xv) + 1.0 / math.factorial(j + 2)
            num = xv * xv * acc
        else:
            num = xv - 1.0 + math.exp(-xv)
        return t1 + num / (2.0 * K * K * lam * lam)

    # -- H and H2 -------------------------------------------------------

    def H2(self, z: ArrayLike) -> ArrayLike:
        """((1 - e^{-Kz})/z)^2, with value K^2 at z = 0."""
        z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
        K = self.K
        w = K * z_arr
        g = np.empty_like(z_arr)
        small = np.abs(w) < _H2_SERIES_RADIUS
        if small.any():
            ws = w[small]
            acc = np.zeros_like(ws)
            for n in range(18, -1, -1):
                acc = acc * (-ws) + 1.0 / math.factorial(n + 1)
            g[small] = K * acc
        big = ~small
        if big.any():
            g[big] = (1.0 - np.exp(-w[big])) / z_arr[big]
        out = g * g
        if np.isscalar(z) or np.asarray(z).ndim == 0:
            return complex(out[0])
        return out

    def H(self, z: ArrayLike) -> ArrayLike:
        """Laplace transform of the triangle weight: e^{-(L-2K)z} H2(z)."""
        z_arr = np.asarray(z, dtype=complex)
        return np.exp(-self.decay * z_arr) * self.H2(z)

    # -- density weight w1, its reciprocal integral w, penalty ----------

    def w1(self, t: float) -> float:
        """Damped quarter-power weight; defined for t >= u."""
        if t < self.u:
            raise ValueError(f"w1 is defined for t >= u = {self.u}")
        m = min(t - self.u + 1e-7, self.v - self.u + 1e-7)
        return math.exp(-self.theta * t / 2.0) * m**0.25

    def _w1_squared(self, t: float) -> float:
        m = min(t - self.u + 1e-7, self.v - self.u + 1e-7)
        return math.exp(-self.theta * t) * math.sqrt(m)

    def w(self, s: Optional[float]) -> float:
        """Reciprocal of int_u^x w1(t)^2 e^{2st} dt; the sentinel s=None means
        +infinity and returns 0 exactly."""
        if s is None:
            return 0.0
        return 1.0 / _w_integral(self, float(s))

    def penalty_integral(self, flat_weight: bool = False) -> float:
        """int_u^x w1(t)^{-2} min(t-u, v-u) dt.

        flat_weight replaces w1 by the constant 1 (test hook; the integral
        then has the elementary value c2^2/2 + (1/3 + c1) c2).
        """
        u, v, x = self.u, self.v, self.x
        if flat_weight:
            fn = lambda t: min(t - u, v - u)
        else:
            fn = lambda t: min(t - u, v - u) / self._w1_squared(t)
        tol = self.quad_tol
        return _quad(fn, u, v, tol) + _quad(fn, v, x, tol)

    def damped_ratio(self, s: float) -> float:
        """e^{-(L-2K)s} B(s) / w(s); nonincreasing in s because L - 2K > 2x."""
        return math.exp(-self.decay * s) * self.B(s) / self.w(s)

    # -- the C coefficient ----------------------------------------------

    def C(self, Lambda: float, lam: Optional[float]) -> float:
        """w(lam) * (ratio(lam) - ratio(Lambda)); C(None) = 0 by convention."""
        if lam is None:
            return 0.0
        if lam <= 0 or Lambda <= 0:
            raise ValueError("lam and Lambda must be positive")
        ratio_L = math.exp(-self.decay * Lambda) * self.B(Lambda) / self.w(Lambda)
        return math.exp(-self.decay * lam) * self.B(lam) - self.w(lam) * ratio_L


@lru_cache(maxsize=4096)
def _w_integral(params: LinnikParams, s: float) -> float:
    u, v, x = params.u, params.v, params.x
    fn = lambda t: params._w1_squared(t) * math.exp(2.0 * s * t)
    tol = params.quad_tol
    return _quad(fn, u, v, tol) + _quad(fn, v, x, tol)


def B_eval(params: LinnikParams, lam: float) -> float:
    return params.B(lam)


def H2_eval(params: LinnikParams, z: ArrayLike) -> ArrayLike:
    return params.H2(z)


def H_eval(params: LinnikParams, z: ArrayLike) -> ArrayLike:
    return params.H(z)


def w1_eval(params: LinnikParams, t: float) -> float:
    return params.w1(t)


def w_eval(params: LinnikParams, s: Optional[float]) -> float:
    return params.w(s)


def penalty_integral(params: LinnikParams, flat_weight: bool = False) -> float:
    return params.penalty_integral(flat_weight)


def C_eval(params: LinnikParams, Lambda: float, lam: Optional[float]) -> float:
    return params.C(Lambda, lam)


def classic_density_bound(lam: float, epsilon: float = 0.0) -> float:
    """(1+eps) * 67/(6 lam) * (e^{73 lam/30} - e^{16 lam/15}).

    Stable down to lam -> 0+ via expm1; the limit there is 67/6 * (73/30 - 16/15).
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    val = (67.0 / 6.0) * (math.expm1(73.0 * lam / 30.0) - math.expm1(16.0 * lam / 15.0)) / lam
    return (1.0 + epsilon) * val
