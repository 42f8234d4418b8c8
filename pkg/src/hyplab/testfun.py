"""Test-function families: radial bumps, the 1D Hardy extremal profiles,
and the half-space near-extremal family for the Poincare quotient.

All constructors return immutable function objects carrying analytic
derivatives, their breakpoint list (so quadrature panels can split there
exactly) and, where relevant, the power behaviour at the origin that the
singular-integral machinery needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "RadialTestFunction",
    "HalfSpaceFunction",
    "make_bump",
    "make_veps",
    "make_ueps",
]


@dataclass(frozen=True)
class RadialTestFunction:
    """Compactly supported (or decaying) radial profile with derivative.

    ``origin_power`` is the exponent lam with u(r) ~ origin_coeff * r^lam
    as r -> 0+ when the support starts at 0; quadrature against singular
    weights splits that pure power off analytically.
    """

    value: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    support: tuple[float, float]
    smoothness: str  # "piecewise-C1" | "C-inf"
    breakpoints: tuple[float, ...] = ()
    origin_power: float | None = None
    origin_coeff: float | None = None
    label: str = "radial"

    def __call__(self, r):
        return self.value(np.asarray(r, dtype=float))

    def check_derivative(self, rng: np.random.Generator, n: int = 32,
                         rel_tol: float = 1e-6) -> None:
        """Central finite-difference consistency check away from kinks."""
        lo, hi = self.support
        hi_eff = min(hi, lo + 50.0) if math.isinf(hi) else hi
        pts = rng.uniform(lo, hi_eff, size=4 * n)
        guard = 1e-3 * (hi_eff - lo)
        for b in (lo, hi_eff, *self.breakpoints):
            pts = pts[np.abs(pts - b) > guard]
        pts = pts[:n]
        h = 1e-6 * (hi_eff - lo)
        fd = (self.value(pts + h) - self.value(pts - h)) / (2.0 * h)
        an = self.derivative(pts)
        scale = np.maximum(np.abs(an), 1e-3 * np.max(np.abs(an) + 1e-300))
        bad = np.abs(fd - an) > rel_tol * np.maximum(scale, 1e-12)
        if np.any(bad):
            worst = pts[bad][0]
            raise AssertionError(
                f"derivative inconsistent at r={worst}: fd={fd[bad][0]} "
                f"analytic={an[bad][0]}"
            )


@dataclass(frozen=True)
class HalfSpaceFunction:
    """Function on the upper half-space reduced to (x1, rho, y).

    ``gradient_norm`` is |grad u| in flat coordinates.  ``support`` is a
    compact box ((x1_lo, x1_hi), (rho_lo, rho_hi), (y_lo, y_hi)) or None
    for functions with unbounded support, in which case ``decay_envelope``
    = (rate, constant) describes the |u|^p y^{-N} volume-integrand decay
    e^{-rate * t} along the logarithmic vertical axis t = |log y| used by
    the tail bounds.
    """

    value: Callable
    gradient_norm: Callable
    support: tuple[tuple[float, float], tuple[float, float], tuple[float, float]] | None
    decay_envelope: tuple[float, float] | None = None
    even_in_x1: bool = False
    label: str = "halfspace"

    def __call__(self, x1, rho, y):
        return self.value(
            np.asarray(x1, dtype=float),
            np.asarray(rho, dtype=float),
            np.asarray(y, dtype=float),
        )

    def check_gradient(self, rng: np.random.Generator, n: int = 32,
                       rel_tol: float = 1e-5) -> None:
        """FD check of the gradient norm at random points of the support."""
        if self.support is not None:
            (x1l, x1h), (rl, rh), (yl, yh) = self.support
            margin = 0.05
            x1 = rng.uniform(x1l + margin * (x1h - x1l), x1h - margin * (x1h - x1l), n)
            rho = rng.uniform(rl + margin * (rh - rl + 1e-9), max(rl + 1e-9, rh - margin * (rh - rl)), n)
            y = rng.uniform(yl + margin * (yh - yl), yh - margin * (yh - yl), n)
        else:
            x1 = rng.uniform(-2.0, 2.0, n)
            rho = rng.uniform(0.1, 2.0, n)
            y = rng.uniform(0.3, 3.0, n)
        h = 1e-6
        gx = (self(x1 + h, rho, y) - self(x1 - h, rho, y)) / (2 * h)
        gr = (self(x1, rho + h, y) - self(x1, rho - h, y)) / (2 * h)
        gy = (self(x1, rho, y + h) - self(x1, rho, y - h)) / (2 * h)
        fd = np.sqrt(gx**2 + gr**2 + gy**2)
        an = np.asarray(self.gradient_norm(x1, rho, y), dtype=float)
        scale = np.maximum(np.abs(an), 1e-6 * (np.max(np.abs(an)) + 1e-300))
        bad = np.abs(fd - an) > rel_tol * np.maximum(scale, 1e-10)
        if np.any(bad):
            i = int(np.argmax(np.abs(fd - an)))
            raise AssertionError(
                f"gradient norm inconsistent at ({x1[i]}, {rho[i]}, {y[i]}): "
                f"fd={fd[i]} analytic={an[i]}"
            )


def make_bump(r_lo: float, r_hi: float, shape: str = "mollifier") -> RadialTestFunction:
    """Radial bump supported on [r_lo, r_hi].

    shape="mollifier": exp(-1/(1-t^2)) in the normalized coordinate
    t = (2r - (r_lo + r_hi)) / (r_hi - r_lo), a C-infinity function whose
    center value is exp(-1).  shape="tent": the piecewise-linear hat.
    """
    if not (0.0 <= r_lo < r_hi < math.inf):
        raise ValueError(f"need 0 <= r_lo < r_hi < inf, got [{r_lo}, {r_hi}]")
    mid = 0.5 * (r_lo + r_hi)
    half = 0.5 * (r_hi - r_lo)

    if shape == "mollifier":

        def value(r):
            r = np.asarray(r, dtype=float)
            t = (r - mid) / half
            inside = np.abs(t) < 1.0
            ts = np.where(inside, t, 0.0)
            out = np.where(inside, np.exp(-1.0 / (1.0 - ts * ts)), 0.0)
            return out

        def derivative(r):
            r = np.asarray(r, dtype=float)
            t = (r - mid) / half
            inside = np.abs(t) < 1.0
            ts = np.where(inside, t, 0.0)
            om = 1.0 - ts * ts
            out = np.where(
                inside, np.exp(-1.0 / om) * (-2.0 * ts / om**2) / half, 0.0
            )
            return out

        return RadialTestFunction(
            value, derivative, (r_lo, r_hi), "C-inf",
            breakpoints=(r_lo, r_hi), label=f"mollifier[{r_lo:g},{r_hi:g}]",
        )

    if shape == "tent":

        def value(r):
            r = np.asarray(r, dtype=float)
            return np.maximum(0.0, 1.0 - np.abs(r - mid) / half)

        def derivative(r):
            r = np.asarray(r, dtype=float)
            inside = np.abs(r - mid) < half
            return np.where(inside, -np.sign(r - mid) / half, 0.0)

        return RadialTestFunction(
            value, derivative, (r_lo, r_hi), "piecewise-C1",
            breakpoints=(r_lo, mid, r_hi), label=f"tent[{r_lo:g},{r_hi:g}]",
        )

    raise ValueError(f"unknown bump shape {shape!r}")


def make_veps(p: float, eps: float, delta: float) -> RadialTestFunction:
    """Extremal family for the sharp 1D weighted Hardy inequality.

    Four pieces: r^a on (0, eps) with a = (p-1+delta)/p, the constant
    eps^a on [eps, 1), the linear ramp eps^a (2 - r) on [1, 2), and 0
    beyond.  Exactly two kinks carry nonzero one-sided derivatives
    (r = eps and r = 1); the profile is in W^{1,p}(0, inf).
    """
    if not (0.0 < eps < 1.0):
        raise ValueError(f"need 0 < eps < 1, got {eps}")
    if not (delta > 0.0):
        raise ValueError(f"need delta > 0, got {delta}")
    if not (p > 1.0):
        raise ValueError(f"need p > 1, got {p}")
    a = (p - 1.0 + delta) / p
    cap = eps**a

    def value(r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        m1 = (r > 0.0) & (r < eps)
        m2 = (r >= eps) & (r < 1.0)
        m3 = (r >= 1.0) & (r < 2.0)
        out[m1] = r[m1] ** a
        out[m2] = cap
        out[m3] = cap * (2.0 - r[m3])
        return out

    def derivative(r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        m1 = (r > 0.0) & (r < eps)
        m3 = (r >= 1.0) & (r < 2.0)
        out[m1] = a * r[m1] ** (a - 1.0)
        out[m3] = -cap
        return out

    return RadialTestFunction(
        value, derivative, (0.0, 2.0), "piecewise-C1",
        breakpoints=(eps, 1.0, 2.0),
        origin_power=a, origin_coeff=1.0,
        label=f"veps[p={p:g},eps={eps:g},delta={delta:g}]",
    )


def make_ueps(params, eps: float) -> HalfSpaceFunction:
    """Near-extremal family for the hyperbolic Poincare quotient.

    U(x, y) = (y / ((1+y)^2 + |x|^2))^k with k = (N-1+eps)/p and
    |x|^2 = x1^2 + rho^2.  The flat gradient norm is
    k U sqrt((1-y^2+|x|^2)^2 + 4 y^2 |x|^2) / (y A) with
    A = (1+y)^2 + |x|^2; the algebraic identity A^2 - (...) = 4 y A makes
    the bracket equal to A^2 (1 - 4y/A), so the gradient factor
    sqrt(1 - 4y/A) is manifestly <= 1 and the energy-to-mass quotient is
    at most k^p.  The |u|^p volume integrand decays like y^{eps-1} at the
    bottom, which is rate eps on the logarithmic vertical axis.
    """
    if not (eps > 0.0):
        raise ValueError(f"need eps > 0, got {eps}")
    k = (params.N - 1 + eps) / params.p

    def value(x1, rho, y):
        A = (1.0 + y) ** 2 + x1 * x1 + rho * rho
        return (y / A) ** k

    def gradient_norm(x1, rho, y):
        A = (1.0 + y) ** 2 + x1 * x1 + rho * rho
        factor = np.sqrt(np.maximum(0.0, 1.0 - 4.0 * y / A))
        return k * (y / A) ** k * factor / y

    return HalfSpaceFunction(
        value, gradient_norm, support=None,
        decay_envelope=(eps, 1.0), even_in_x1=True,
        label=f"ueps[N={params.N},p={params.p:g},eps={eps:g}]",
    )
