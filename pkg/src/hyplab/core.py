"""Hyperbolic-space primitives: parameters, measures, weights.

Everything is a pure function of its arguments.  The Green's-function
weight ``W`` is evaluated through a cancellation-free reformulation (see
:func:`weight_w`): the naive difference of p-th powers loses all digits
once the two terms agree to within machine epsilon, which already happens
around geodesic radius 20.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quadrature import (
    QuadResult,
    QuadratureError,
    integrate_interval,
    integrate_semi_infinite,
)

__all__ = [
    "HypothesisError",
    "Params",
    "HalfSpacePoint",
    "lambda_p",
    "green_gp",
    "GreenWeight",
    "green_weight_for",
    "weight_w",
    "weight_hp",
    "hp_base",
    "weight_v",
    "geodesic_distance",
    "h_func",
    "coth",
    "coth_minus_inv",
    "log_sinh",
    "sinh_pow",
]


class HypothesisError(ValueError):
    """Parameters violate the hypotheses of the requested statement."""


@dataclass(frozen=True)
class Params:
    """Dimension/exponent pair (N, p) with derived quantities.

    ``p_prime`` is the conjugate exponent p/(p-1) and ``lambda_p`` the
    sharp Poincare constant ((N-1)/p)**p.  The flag ``hardy_hypothesis`` is
    recomputed on access: p >= 2 and N >= 1 + p(p-1), the hypothesis under
    which the Hardy-improved inequalities hold.
    """

    N: int
    p: float

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 2:
            raise HypothesisError(f"N must be an integer >= 2, got {self.N!r}")
        if not (self.p > 1.0) or not math.isfinite(self.p):
            raise HypothesisError(f"p must be a finite real > 1, got {self.p!r}")

    @property
    def p_prime(self) -> float:
        return self.p / (self.p - 1.0)

    @property
    def lambda_p(self) -> float:
        return ((self.N - 1) / self.p) ** self.p

    @property
    def hardy_hypothesis(self) -> bool:
        return self.p >= 2.0 and self.N >= 1.0 + self.p * (self.p - 1.0)

    @property
    def sinh_exponent(self) -> float:
        """Green's function integrand exponent (N-1)/(p-1)."""
        return (self.N - 1) / (self.p - 1.0)


@dataclass(frozen=True)
class HalfSpacePoint:
    """Point of the upper half-space reduced to (x1, rho, y).

    ``rho`` is the radius of the horizontal coordinates orthogonal to x1;
    it is identically 0 when N = 2.
    """

    x1: float
    rho: float = 0.0
    y: float = 1.0

    def __post_init__(self):
        if not (self.y > 0.0):
            raise ValueError(f"y must be positive, got {self.y}")
        if self.rho < 0.0:
            raise ValueError(f"rho must be nonnegative, got {self.rho}")


def lambda_p(params: Params) -> float:
    """Sharp Poincare constant ((N-1)/p)**p."""
    return params.lambda_p


# ---------------------------------------------------------------------------
# Stable elementary helpers.
# ---------------------------------------------------------------------------


def coth(r):
    r = np.asarray(r, dtype=float)
    out = 1.0 / np.tanh(r)
    return out if out.ndim else float(out)


_COTH_SERIES = (1.0 / 3.0, -1.0 / 45.0, 2.0 / 945.0, -1.0 / 4725.0)


def coth_minus_inv(r):
    """coth(r) - 1/r without cancellation near r = 0.

    Below r = 1e-3 the two O(1/r) terms agree to ~7 digits; the Taylor
    series r/3 - r^3/45 + 2 r^5/945 - r^7/4725 is exact to double
    precision there.
    """
    r = np.asarray(r, dtype=float)
    small = np.abs(r) < 1e-3
    rs = np.where(small, r, 1.0)
    r2 = rs * rs
    series = rs * (
        _COTH_SERIES[0]
        + r2 * (_COTH_SERIES[1] + r2 * (_COTH_SERIES[2] + r2 * _COTH_SERIES[3]))
    )
    rb = np.where(small, 1.0, r)
    direct = 1.0 / np.tanh(rb) - 1.0 / rb
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def log_sinh(s):
    """log(sinh s) for s > 0, stable for both tiny and huge s."""
    s = np.asarray(s, dtype=float)
    small = s < 1e-2
    ss = np.where(small, s, 1.0)
    s2 = ss * ss
    # log(sinh s / s) = log(1 + s^2/6 + s^4/120 + ...)
    series = np.log(ss) + np.log1p(s2 / 6.0 * (1.0 + s2 / 20.0 * (1.0 + s2 / 42.0)))
    sb = np.where(small, 1.0, s)
    direct = sb + np.log1p(-np.exp(-2.0 * sb)) - math.log(2.0)
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def sinh_pow(r, m: float):
    """(sinh r)**m evaluated in log space; series-based below r = 1e-3."""
    r = np.asarray(r, dtype=float)
    out = np.exp(m * log_sinh(np.maximum(r, 5e-324)))
    out = np.where(r == 0.0, 0.0 if m > 0 else np.inf, out)
    return out if out.ndim else float(out)


def acosh1p(z):
    """arcosh(1 + z) for z >= 0, accurate for small z."""
    z = np.asarray(z, dtype=float)
    out = np.log1p(z + np.sqrt(z * (z + 2.0)))
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Green's function of the hyperbolic p-Laplacian and the weight W.
# ---------------------------------------------------------------------------


def _geometric_marks(a: float, b: float) -> list[float]:
    """Dyadic marks a + a, a + 2a, ... and unit marks, commensurate with
    both the power steepness near small a and the exponential decay."""
    marks = []
    w = max(min(a, 1.0), 1e-8)
    while a + w < b:
        marks.append(a + w)
        w *= 2.0
    return marks


def _green_integrand(alpha: float) -> Callable:
    def f(s):
        return np.exp(-alpha * log_sinh(s))

    return f


def _green_tail_bound(alpha: float) -> Callable[[float], float]:
    # sinh grows at least exponentially: sinh(s) >= sinh(T) e^{s-T} for
    # s >= T, hence int_T^inf (sinh s)^-alpha ds <= (sinh T)^-alpha / alpha.
    def bound(T: float) -> float:
        return math.exp(-alpha * log_sinh(T)) / alpha

    return bound


def green_gp(params: Params, r: float, tol: float = 1e-10) -> QuadResult:
    """G_p(r) = int_r^inf (sinh s)^(-(N-1)/(p-1)) ds, with error estimate.

    The multiplicative normalization is fixed to 1; only the logarithmic
    derivative G'/G enters the weight W, so the choice is immaterial
    (covered by a regression test).
    """
    if not (r > 0.0):
        raise ValueError(f"green_gp requires r > 0, got {r}")
    alpha = params.sinh_exponent
    return integrate_semi_infinite(
        _green_integrand(alpha),
        r,
        tol,
        tail_bound=_green_tail_bound(alpha),
        initial_width=max(min(1.0, r), 1e-8),
        vectorized=True,
        max_subdivisions=20000,
    )


class GreenWeight:
    """Memoized evaluator of the Green's-function weight W for one (N, p).

    W(r) = ((p-1)/p)^p |G'/G|^p - Lambda_p.  Writing
    Z = (p-1)/(N-1) * |G'|/G = 1 + zeta, the identity
    (N-1) G(r) = (p-1) * alpha * int_r^inf (sinh s)^(-alpha-1) cosh s ds
    turns the numerator of zeta into a difference-free integral:

        zeta(r) = int_r^inf (sinh s)^(-alpha-1) e^{-s} ds
                  / int_r^inf (sinh s)^(-alpha) ds  > 0,

    and W = Lambda_p * ((1+zeta)^p - 1) = Lambda_p * expm1(p * log1p(zeta)).
    This is positive by construction and keeps full relative accuracy at
    large r, where zeta ~ c e^{-2r} and the naive difference of p-th
    powers is pure rounding noise.

    Anchored values of both integrals are cached; a new radius only costs
    the local segment between it and the nearest anchor.  The cache is
    guarded by a lock so evaluators can be shared across threads.
    """

    def __init__(self, params: Params, node_tol: float = 1e-12):
        self.params = params
        self.alpha = params.sinh_exponent
        self.node_tol = node_tol
        self._den_anchors: dict[float, tuple[float, float]] = {}
        self._num_anchors: dict[float, tuple[float, float]] = {}
        self._lock = threading.Lock()

    # -- the two tail integrals ------------------------------------------
    def _den_integrand(self, s):
        return np.exp(-self.alpha * log_sinh(s))

    def _num_integrand(self, s):
        s = np.asarray(s, dtype=float)
        return np.exp(-(self.alpha + 1.0) * log_sinh(s) - s)

    def _tail(self, which: str, r: float) -> tuple[float, float]:
        """int_r^inf of one of the two integrands, to relative node_tol.

        The truncation point is analytic: the integrand decays at least
        like e^{-alpha s}, so T = r + (log(1/node_tol) + 5)/alpha caps the
        dropped tail at ~node_tol relative; the analytic bound on the
        dropped tail still enters the error estimate.
        """
        alpha = self.alpha
        if which == "den":
            f = self._den_integrand

            def bound(T: float) -> float:
                return math.exp(-alpha * log_sinh(T)) / alpha

        else:
            f = self._num_integrand
            a1 = alpha + 1.0

            def bound(T: float) -> float:
                return math.exp(-a1 * log_sinh(T) - T) / (a1 + 1.0)

        T = r + (math.log(1.0 / self.node_tol) + 5.0) / alpha + 1.0
        res = integrate_interval(
            f, r, T, 0.0, rel_tol=self.node_tol, vectorized=True,
            breakpoints=_geometric_marks(r, T),
            max_subdivisions=20000,
        )
        return res.value, res.error_estimate + bound(T)

    def _cached(self, which: str, r: float) -> tuple[float, float]:
        anchors = self._den_anchors if which == "den" else self._num_anchors
        f = self._den_integrand if which == "den" else self._num_integrand
        with self._lock:
            if r in anchors:
                return anchors[r]
            larger = [a for a in anchors if a > r]
            if larger:
                a0 = min(larger)
                base, base_err = anchors[a0]
                seg = integrate_interval(
                    f, r, a0, 0.0, rel_tol=self.node_tol, vectorized=True,
                    breakpoints=_geometric_marks(r, a0),
                    max_subdivisions=20000,
                )
                val, err = base + seg.value, base_err + seg.error_estimate
            else:
                val, err = self._tail(which, r)
            anchors[r] = (val, err)
            return anchors[r]

    def zeta(self, r: float) -> tuple[float, float]:
        """zeta(r) > 0 and an absolute error bound."""
        if not (r > 0.0):
            raise ValueError(f"radius must be positive, got {r}")
        num, num_err = self._cached("num", r)
        den, den_err = self._cached("den", r)
        z = num / den
        err = (num_err + z * den_err) / den
        return z, err

    def green(self, r: float) -> tuple[float, float]:
        """G_p(r) and an absolute error bound (cached)."""
        return self._cached("den", r)

    def w(self, r: float) -> tuple[float, float]:
        """W(r) and an absolute error bound."""
        z, dz = self.zeta(r)
        lam = self.params.lambda_p
        p = self.params.p
        val = lam * math.expm1(p * math.log1p(z))
        deriv = lam * p * (1.0 + z) ** (p - 1.0)
        return val, deriv * dz

    def w_array(self, radii) -> tuple[np.ndarray, np.ndarray]:
        vals, errs = [], []
        # Seed the cache from the largest radius down so every smaller
        # radius only pays for a local segment.
        for r in sorted(set(float(x) for x in radii), reverse=True):
            self.w(r)
        for r in radii:
            v, e = self.w(float(r))
            vals.append(v)
            errs.append(e)
        return np.array(vals), np.array(errs)


_WEIGHT_CACHE: dict[tuple[int, float], GreenWeight] = {}
_WEIGHT_CACHE_LOCK = threading.Lock()


def green_weight_for(params: Params) -> GreenWeight:
    """Shared memoized W evaluator for (N, p)."""
    key = (params.N, params.p)
    with _WEIGHT_CACHE_LOCK:
        ev = _WEIGHT_CACHE.get(key)
        if ev is None:
            ev = GreenWeight(params)
            _WEIGHT_CACHE[key] = ev
        return ev


def weight_w(params: Params, r: float, tol: float = 1e-10) -> float:
    """The improved-Poincare weight W(r); strictly positive for r > 0."""
    val, err = green_weight_for(params).w(r)
    if err > tol * max(1.0, abs(val)):
        raise QuadratureError(
            f"W({r}) error bound {err:.3e} exceeds tol {tol:.3e}"
        )
    return val


# ---------------------------------------------------------------------------
# The bounded weight H_p and the shape function h.
# ---------------------------------------------------------------------------


def hp_base(params: Params, r):
    """coth r - ((p-1)/(N-1))/r, the base of H_p.

    Assembled as (coth r - 1/r) + (1 - (p-1)/(N-1))/r so the two O(1/r)
    pieces never meet; positive for all r > 0 whenever p - 1 <= N - 1.
    """
    r = np.asarray(r, dtype=float)
    c = 1.0 - (params.p - 1.0) / (params.N - 1.0)
    out = coth_minus_inv(r) + c / r
    return out if out.ndim else float(out)


def weight_hp(params: Params, r):
    """H_p(r) = (coth r - ((p-1)/(N-1))/r)**(p-2).

    For p = 2 the exponent vanishes and the value is exactly 1 by branch
    (the degenerate case of the weighted inequality).  Raises
    :class:`HypothesisError` when the base is nonpositive, which signals
    parameters outside p - 1 <= N - 1.
    """
    if params.p < 2.0:
        raise HypothesisError(f"weight H_p needs p >= 2, got p={params.p}")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0.0):
        raise ValueError("H_p needs r > 0")
    if params.p == 2.0:
        out = np.ones_like(r_arr)
        return out if out.ndim else 1.0
    base = np.asarray(hp_base(params, r_arr))
    if np.any(base <= 0.0):
        raise HypothesisError(
            f"H_p base nonpositive at some r (N={params.N}, p={params.p}); "
            "parameters violate p - 1 <= N - 1"
        )
    out = base ** (params.p - 2.0)
    return out if out.ndim else float(out)


def h_func(params: Params, r):
    """h(r) = -(N-1) r^2 + (p-1) sinh^2 r (sign gives the slope of H_p)."""
    r = np.asarray(r, dtype=float)
    out = -(params.N - 1) * r * r + (params.p - 1.0) * np.sinh(r) ** 2
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Half-space weight V and geodesic distance from the base point (0, 1).
# ---------------------------------------------------------------------------


def weight_v(pt: HalfSpacePoint) -> float:
    """Bounded weight y / sqrt(y^2 + x1^2) in (0, 1]; equals 1 iff x1 = 0."""
    return pt.y / math.hypot(pt.y, pt.x1)


def geodesic_distance(pt: HalfSpacePoint) -> float:
    """Geodesic distance to the base point (x=0, y=1).

    cosh(r) = 1 + ((y-1)^2 + x1^2 + rho^2) / (2y); evaluated through
    arcosh(1 + z) = log1p(z + sqrt(z(z+2))) for accuracy near the pole.
    """
    z = ((pt.y - 1.0) ** 2 + pt.x1 ** 2 + pt.rho ** 2) / (2.0 * pt.y)
    return acosh1p(z)
