"""Inequality verifiers.

Each supported inequality gets a fixed LHS/RHS recipe; a report carries
both sides, the slack, and the accumulated quadrature error.  The pass
criterion is always ``slack >= -quad_error``: the inequalities are exact
theorems, so only integration error may push the slack negative.

Also here: the proof-step checkers (the scalar convexity bound, the
cosh/sinh positivity profile, the supersolution identities) and the
sharpness scans driving the near-extremal families.
"""

from __future__ import annotations

import enum
import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .constants import c_np
from .core import HypothesisError, Params, coth, log_sinh
from .integrals import (
    HalfSpaceIntegrand,
    halfspace_integral,
    hardy1d_energy,
    hardy1d_mass,
    radial_energy,
    radial_weighted_mass,
    ueps_energy_mass,
)
from .rp import solve_rp
from .testfun import HalfSpaceFunction, RadialTestFunction, make_bump, make_veps

__all__ = [
    "InequalityKind",
    "InequalityReport",
    "SupportViolation",
    "verify",
    "sharpness_scan",
    "check_pconvexity",
    "check_ftilde",
    "supersolution_residual",
    "batch_verify",
    "random_bump",
    "random_halfspace_product",
    "halfspace_pair_reports",
]


class SupportViolation(ValueError):
    """Test-function support violates the inequality's domain."""


class InequalityKind(str, enum.Enum):
    """Tags binding a fixed LHS/RHS recipe and a hypothesis predicate."""

    PGAP = "pgap"                  # p-Poincare gap, sharp constant Lambda_p
    GREEN_WEIGHT = "green-weight"  # Green's-function weight W improvement
    BOUNDED_V = "bounded-v"        # bounded weight V improvement (hyperbolic form)
    HARDY = "hardy"                # Hardy 1/r^p improvement
    UNCERTAINTY = "uncertainty"    # uncertainty principle for the shifted form
    HP_WEIGHTED = "hp-weighted"    # H_p-weighted form with two remainders
    MAZYA = "mazya"                # half-space Maz'ya form of BOUNDED_V
    BALL = "ball"                  # Hardy improvement on the critical ball
    HARDY1D = "hardy1d"            # sharp 1D weighted Hardy inequality

    @property
    def needs_hardy_hypothesis(self) -> bool:
        return self in (
            InequalityKind.HARDY,
            InequalityKind.UNCERTAINTY,
            InequalityKind.HP_WEIGHTED,
            InequalityKind.BALL,
        )

    @property
    def admissible_class(self) -> str:
        if self in (InequalityKind.BOUNDED_V, InequalityKind.MAZYA):
            return "halfspace"
        if self is InequalityKind.HARDY1D:
            return "profile-1d"
        return "radial"


@dataclass(frozen=True)
class InequalityReport:
    kind: InequalityKind
    N: int
    p: float
    test_function: str
    lhs: float
    rhs: float
    quad_error: float
    l: float | None = None

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.slack >= -self.quad_error

    def as_row(self) -> dict:
        return {
            "kind": self.kind.value,
            "N": self.N,
            "p": self.p,
            "l": self.l if self.l is not None else "",
            "test_function": self.test_function,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "quad_error": self.quad_error,
            "passed": self.passed,
        }


def hardy_constant(params: Params) -> float:
    """(p-1)((N-1)/p)^(p-2)((p-1)/p)^2, the 1/r^p improvement constant."""
    N, p = params.N, params.p
    return (p - 1.0) * ((N - 1) / p) ** (p - 2.0) * ((p - 1.0) / p) ** 2


def ball_constants(params: Params) -> tuple[float, float]:
    """Constants of the two remainders in the H_p-weighted inequality."""
    N, p = params.N, params.p
    c_r = (p - 1.0) ** (p - 1.0) * (N * (p - 2.0) + 1.0) / p**p
    c_sinh = (N - 1) * (N - 1 - p * (p - 1.0)) * (p - 1.0) ** (p - 2.0) / p**p
    return c_r, c_sinh


def _require_hypothesis(kind: InequalityKind, params: Params) -> None:
    if kind.needs_hardy_hypothesis and not params.hardy_hypothesis:
        raise HypothesisError(
            f"{kind.value} requires p >= 2 and N >= 1 + p(p-1); "
            f"got N={params.N}, p={params.p}"
        )


def verify(
    kind: InequalityKind,
    params: Params,
    u,
    tol: float = 1e-9,
    l: float | None = None,
) -> InequalityReport:
    """Assemble and check one inequality instance.

    ``u`` is a :class:`RadialTestFunction` for the radial kinds and the 1D
    Hardy kind, a :class:`HalfSpaceFunction` with compact support for the
    half-space kinds.  ``l`` selects the mixed exponent of the 1D Hardy
    inequality (defaults to p).
    """
    kind = InequalityKind(kind)
    _require_hypothesis(kind, params)
    if kind.admissible_class == "halfspace":
        if not isinstance(u, HalfSpaceFunction):
            raise TypeError(f"{kind.value} needs a half-space test function")
        return _verify_halfspace(kind, params, u, tol)
    if not isinstance(u, RadialTestFunction):
        raise TypeError(f"{kind.value} needs a radial test function")
    if kind is InequalityKind.HARDY1D:
        return _verify_hardy1d(params, u, tol, l)
    return _verify_radial(kind, params, u, tol)


def _verify_radial(
    kind: InequalityKind, params: Params, u: RadialTestFunction, tol: float
) -> InequalityReport:
    lam = params.lambda_p
    ep, mp = radial_energy(params, u, tol)

    if kind is InequalityKind.PGAP:
        lhs, rhs = ep.value, lam * mp.value
        err = ep.error_estimate + lam * mp.error_estimate
    elif kind is InequalityKind.GREEN_WEIGHT:
        wmass = radial_weighted_mass(params, u, "W", tol)
        lhs = ep.value - lam * mp.value
        rhs = wmass.value
        err = ep.error_estimate + lam * mp.error_estimate + wmass.error_estimate
    elif kind is InequalityKind.HARDY:
        hmass = radial_weighted_mass(params, u, "1/r^p", tol)
        lhs = ep.value - lam * mp.value
        rhs = hardy_constant(params) * hmass.value
        err = (
            ep.error_estimate
            + lam * mp.error_estimate
            + hardy_constant(params) * hmass.error_estimate
        )
    elif kind is InequalityKind.UNCERTAINTY:
        # product form: (gap) * (r^{p'} mass)^(p/p') >= c * (mass)^p
        rmass = radial_weighted_mass(params, u, "r^pprime", tol)
        gap = ep.value - lam * mp.value
        gap_err = ep.error_estimate + lam * mp.error_estimate
        expo = params.p / params.p_prime
        lhs = gap * rmass.value**expo
        rhs = hardy_constant(params) * mp.value**params.p
        err = (
            gap_err * rmass.value**expo
            + abs(gap) * expo * rmass.value ** (expo - 1.0) * rmass.error_estimate
            + hardy_constant(params)
            * params.p
            * mp.value ** (params.p - 1.0)
            * mp.error_estimate
        )
    elif kind is InequalityKind.HP_WEIGHTED:
        hpmass = radial_weighted_mass(params, u, "Hp", tol)
        rmass = radial_weighted_mass(params, u, "1/r^p", tol)
        smass = radial_weighted_mass(params, u, "1/sinh^p", tol)
        c_r, c_sinh = ball_constants(params)
        lhs = ep.value - lam * hpmass.value
        rhs = c_r * rmass.value + c_sinh * smass.value
        err = (
            ep.error_estimate
            + lam * hpmass.error_estimate
            + c_r * rmass.error_estimate
            + c_sinh * smass.error_estimate
        )
    elif kind is InequalityKind.BALL:
        if params.p > 2.0:
            rp = solve_rp(params).root
            if not (u.support[1] <= rp):
                raise SupportViolation(
                    f"support [{u.support[0]:g}, {u.support[1]:g}] must sit "
                    f"inside the ball of radius r_p = {rp:.6g}"
                )
        c_r, c_sinh = ball_constants(params)
        rmass = radial_weighted_mass(params, u, "1/r^p", tol)
        smass = radial_weighted_mass(params, u, "1/sinh^p", tol)
        lhs = ep.value - lam * mp.value
        rhs = c_r * rmass.value + c_sinh * smass.value
        err = (
            ep.error_estimate
            + lam * mp.error_estimate
            + c_r * rmass.error_estimate
            + c_sinh * smass.error_estimate
        )
    else:  # pragma: no cover
        raise ValueError(f"unhandled radial kind {kind}")
    return InequalityReport(
        kind, params.N, params.p, u.label, lhs, rhs, err
    )


def _verify_hardy1d(
    params: Params, u: RadialTestFunction, tol: float, l: float | None
) -> InequalityReport:
    p = params.p
    l_eff = p if l is None else float(l)
    if not (1.0 < l_eff <= p):
        raise HypothesisError(f"hardy1d requires 1 < l <= p, got l={l_eff}")
    lhs_q = hardy1d_energy(p, l_eff, u, tol)
    rhs_q = hardy1d_mass(p, u, tol)
    c = ((p - 1.0) / p) ** l_eff
    return InequalityReport(
        InequalityKind.HARDY1D, params.N, p, u.label,
        lhs_q.value, c * rhs_q.value,
        lhs_q.error_estimate + c * rhs_q.error_estimate,
        l=l_eff,
    )


def _verify_halfspace(
    kind: InequalityKind, params: Params, u: HalfSpaceFunction, tol: float
) -> InequalityReport:
    if u.support is None:
        raise SupportViolation(f"{kind.value} verification needs compact support")
    N, p = params.N, params.p
    lam = params.lambda_p
    const = ((N - 1) / p) ** (p - 2.0) * c_np(params).value

    if kind is InequalityKind.BOUNDED_V:
        # hyperbolic assembly: |grad_H u|^p dv and |u|^p dv
        def e_f(x1, rho, y):
            return (y * u.gradient_norm(x1, rho, y)) ** p * y ** (-N)

        def m_f(x1, rho, y):
            return np.abs(u.value(x1, rho, y)) ** p * y ** (-N)

        def v_f(x1, rho, y):
            v = y / np.sqrt(y * y + x1 * x1)
            return v * np.abs(u.value(x1, rho, y)) ** p * y ** (-N)

    else:  # Maz'ya-form assembly
        def e_f(x1, rho, y):
            return u.gradient_norm(x1, rho, y) ** p * y ** (p - N)

        def m_f(x1, rho, y):
            return np.abs(u.value(x1, rho, y)) ** p / y**N

        def v_f(x1, rho, y):
            return (
                np.abs(u.value(x1, rho, y)) ** p
                / (y ** (N - 1) * np.sqrt(y * y + x1 * x1))
            )

    box = u.support
    energy = halfspace_integral(params, HalfSpaceIntegrand(e_f, support=box), tol)
    mass = halfspace_integral(params, HalfSpaceIntegrand(m_f, support=box), tol)
    vmass = halfspace_integral(params, HalfSpaceIntegrand(v_f, support=box), tol)
    lhs = energy.value - lam * mass.value
    rhs = const * vmass.value
    err = (
        energy.error_estimate
        + lam * mass.error_estimate
        + const * vmass.error_estimate
    )
    return InequalityReport(kind, N, p, u.label, lhs, rhs, err)


# ---------------------------------------------------------------------------
# Sharpness scans.
# ---------------------------------------------------------------------------


def sharpness_scan(
    kind: InequalityKind,
    params: Params,
    schedule,
    tol: float = 1e-5,
    l: float | None = None,
) -> list[dict]:
    """Quotients of the near-extremal families along a shrinking schedule.

    PGAP: for each eps, the hyperbolic p-energy / p-mass quotient of the
    half-space family, bracketed by [Lambda_p, ((N-1+eps)/p)^p].
    HARDY1D: for each (eps, delta), the weighted quotient of the
    four-piece profile, with the matching analytic upper bound
    ((p-1+delta)/p)^l (cosh eps)^(p-l) + c delta eps^(p-1) where c is the
    ramp-piece constant computed by quadrature.
    """
    kind = InequalityKind(kind)
    if kind is InequalityKind.PGAP:
        eps_list = [float(e) for e in schedule]
        if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
            raise ValueError("schedule must be strictly decreasing")
        rows = []
        for eps in eps_list:
            energy, mass = ueps_energy_mass(params, eps, tol)
            q = energy.value / mass.value
            qerr = (
                energy.error_estimate + q * mass.error_estimate
            ) / mass.value
            rows.append(
                {
                    "eps": eps,
                    "quotient": q,
                    "quad_error": qerr,
                    "lower": params.lambda_p,
                    "upper": ((params.N - 1 + eps) / params.p) ** params.p,
                }
            )
        return rows
    if kind is InequalityKind.HARDY1D:
        p = params.p
        l_eff = p if l is None else float(l)
        pairs = [(float(e), float(d)) for e, d in schedule]
        if any(
            (e2 >= e1 or d2 > d1)
            for (e1, d1), (e2, d2) in zip(pairs, pairs[1:])
        ):
            raise ValueError("schedule must be strictly decreasing")
        rows = []
        for eps, delta in pairs:
            v = make_veps(p, eps, delta)
            lhs = hardy1d_energy(p, l_eff, v, tol)
            rhs = hardy1d_mass(p, v, tol)
            q = lhs.value / rhs.value
            qerr = (lhs.error_estimate + q * rhs.error_estimate) / rhs.value
            rows.append(
                {
                    "eps": eps,
                    "delta": delta,
                    "quotient": q,
                    "quad_error": qerr,
                    "lower": ((p - 1.0) / p) ** l_eff,
                    "upper": _hardy1d_upper(p, l_eff, eps, delta),
                }
            )
        return rows
    raise ValueError(f"sharpness scans exist for pgap and hardy1d, not {kind.value}")


def _hardy1d_upper(p: float, l: float, eps: float, delta: float) -> float:
    from .quadrature import integrate_interval

    def ramp(r):
        if l == p:
            return np.ones_like(r)
        return (2.0 - r) ** (p - l) * coth(r) ** (p - l)

    c = integrate_interval(ramp, 1.0, 2.0, 1e-12, vectorized=True).value
    return ((p - 1.0 + delta) / p) ** l * math.cosh(eps) ** (
        p - l
    ) + c * delta * eps ** (p - 1.0)


# ---------------------------------------------------------------------------
# Proof-step checkers.
# ---------------------------------------------------------------------------


def check_pconvexity(p: float, xi: float, eta: float) -> float:
    """Slack of the scalar convexity bound used in the radial proofs.

    (xi - eta)^p + p xi^(p-1) eta - xi^p  >=
        max{(p-1) eta^2 xi^(p-2), |eta|^p}          if p >= 2,
        p(p-1)/2 * eta^2 / (xi + |eta|)^(2-p)        if 1 <= p <= 2,
    for xi >= 0 and xi - eta >= 0.  The LHS is assembled in the scaled
    form xi^p (expm1(p log1p(-t)) + p t), t = eta/xi, which keeps the
    O(t^2) cancellation exact to machine precision.
    """
    if p < 1.0:
        raise ValueError(f"need p >= 1, got {p}")
    if xi < 0.0 or xi - eta < 0.0:
        raise ValueError("need xi >= 0 and xi - eta >= 0")
    if eta == 0.0:
        return 0.0
    # Scale the larger of xi, |eta| out of both sides so every
    # intermediate is O(1) times scale^p and the near-equality
    # cancellations happen between O(1) quantities.
    if abs(eta) <= xi:
        t = eta / xi  # in [-1, 1]
        lhs_s = (p - 1.0) if t == 1.0 else math.expm1(p * math.log1p(-t)) + p * t
        if p >= 2.0:
            rhs_s = max((p - 1.0) * t * t, abs(t) ** p)
        else:
            rhs_s = 0.5 * p * (p - 1.0) * t * t / (1.0 + abs(t)) ** (2.0 - p)
        return xi**p * (lhs_s - rhs_s)
    # here eta < -xi <= 0: scale by |eta|, u = xi/|eta| in [0, 1)
    u = xi / abs(eta)
    lhs_s = (1.0 + u) ** p - u ** (p - 1.0) * (u + p)
    if p >= 2.0:
        first = (p - 1.0) * (u ** (p - 2.0) if (u > 0.0 or p == 2.0) else 0.0)
        rhs_s = max(first, 1.0)
    else:
        rhs_s = 0.5 * p * (p - 1.0) / (1.0 + u) ** (2.0 - p)
    return abs(eta) ** p * (lhs_s - rhs_s)


def check_ftilde(params: Params, r_grid) -> float:
    """min over the grid of (N-1)cosh^p r - (N-1)sinh^p r - p(p-1)cosh^(p-2) r.

    Assembled as cosh^(p-2) r [(N-1) cosh^2 r (1 - tanh^p r) - p(p-1)]
    with 1 - tanh^p r = -expm1(p log tanh r), which survives the large-r
    cancellation.  Nonnegative on (0, inf) exactly when N >= 1 + p(p-1).
    """
    r = np.asarray(r_grid, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("grid must lie in (0, inf)")
    N, p = params.N, params.p
    # log(tanh r) = log1p(-2/(e^{2r}+1)) never rounds to 0 for r <= 350
    log_tanh = np.log1p(-2.0 / (np.exp(2.0 * r) + 1.0))
    one_minus_tanh_p = -np.expm1(p * log_tanh)
    vals = np.cosh(r) ** (p - 2.0) * (
        (N - 1) * np.cosh(r) ** 2 * one_minus_tanh_p - p * (p - 1.0)
    )
    return float(np.min(vals))


def _gtilde(params: Params, r):
    r = np.asarray(r, dtype=float)
    N, p = params.N, params.p
    return np.exp((p - 1.0) / p * np.log(r) - (N - 1) / p * log_sinh(r))


def _gtilde_prime_closed(params: Params, r: float) -> float:
    N, p = params.N, params.p
    return (
        -(1.0 / p)
        * ((N - 1) / math.tanh(r) - (p - 1.0) / r)
        * float(_gtilde(params, r))
    )


def _lp_rhs_closed(params: Params, r: float) -> float:
    N, p = params.N, params.p
    g = float(_gtilde(params, r))
    bracket = (
        ((N - 1) / p) ** 2
        + (p - 1.0) ** 2 / (p * p * r * r)
        + (p - 1.0) * (p - 2.0) * (N - 1) / (p * p) / (r * math.tanh(r))
        + (N - 1) * (N - 1 - p * (p - 1.0)) / (p * p * math.sinh(r) ** 2)
    )
    return -bracket * g


def supersolution_residual(
    params: Params, r: float, fd_step: float = 1e-5
) -> tuple[float, float]:
    """(identity_residual, derivative_residual) of the supersolution profile.

    The profile (r/sinh r)^((N-1)/p) r^((p-N)/p) satisfies a first-order
    closed form for its derivative and a closed form for its radial
    p-Laplacian precursor L g = (p-1) g'' + (N-1) coth r g'.  Both are
    checked against Richardson-extrapolated central differences; relative
    residuals are returned.  Warns if halving the step moves the FD value
    by more than 10x the expected truncation tolerance.
    """
    if not (r > 0.0) or not (fd_step > 0.0) or fd_step >= 0.25 * r:
        raise ValueError("need 0 < fd_step << r")
    g = lambda x: float(_gtilde(params, x))

    def d1(h):
        return (g(r + h) - g(r - h)) / (2.0 * h)

    def d2(h):
        return (g(r + h) - 2.0 * g(r) + g(r - h)) / (h * h)

    h = fd_step
    d1_r = (4.0 * d1(h / 2.0) - d1(h)) / 3.0
    # second differences divide rounding error by h^2; eps^(1/6) r is the
    # optimal step for the Richardson-extrapolated rule
    h2 = max(fd_step, 2.5e-3 * r)
    d2_r = (4.0 * d2(h2 / 2.0) - d2(h2)) / 3.0
    if abs(d1(h) - d1(h / 2.0)) > 10.0 * 1e-6 * max(1.0, abs(d1_r)):
        warnings.warn(
            f"finite-difference step {h} looks too large at r={r}",
            RuntimeWarning,
            stacklevel=2,
        )
    closed_d1 = _gtilde_prime_closed(params, r)
    derivative_residual = abs(d1_r - closed_d1) / abs(closed_d1)
    N, p = params.N, params.p
    lp_fd = (p - 1.0) * d2_r + (N - 1) / math.tanh(r) * d1_r
    rhs = _lp_rhs_closed(params, r)
    identity_residual = abs(lp_fd - rhs) / abs(rhs)
    return identity_residual, derivative_residual


# ---------------------------------------------------------------------------
# Seeded random families and batch verification.
# ---------------------------------------------------------------------------


def random_bump(
    rng: np.random.Generator,
    r_min: float = 0.1,
    r_max: float = 20.0,
    allow_origin: bool = False,
) -> RadialTestFunction:
    """Mollifier bump with support drawn log-uniformly inside [r_min, r_max]."""
    lo_range = (math.log(r_min), math.log(r_max / 2.0))
    r_lo = math.exp(rng.uniform(*lo_range))
    width = math.exp(rng.uniform(math.log(0.2), math.log(min(10.0, r_max - r_lo))))
    r_hi = min(r_lo + width, r_max)
    if allow_origin and rng.uniform() < 0.2:
        r_lo = 0.0
    return make_bump(r_lo, r_hi, "mollifier")


def random_halfspace_product(
    rng: np.random.Generator, N: int
) -> HalfSpaceFunction:
    """Separable compact product bump phi(x1) psi(rho) chi(y), y-support > 0."""
    x_lo = rng.uniform(-3.0, 0.5)
    x_hi = x_lo + rng.uniform(0.8, 3.0)
    y_lo = rng.uniform(0.25, 1.2)
    y_hi = y_lo + rng.uniform(0.6, 2.5)
    rho_hi = rng.uniform(0.8, 2.5) if N >= 3 else 1.0
    phi = make_bump(0.0, x_hi - x_lo, "mollifier")
    chi = make_bump(y_lo, y_hi, "mollifier")

    def parts(x1, rho, y):
        px = phi.value(x1 - x_lo)
        dx = phi.derivative(x1 - x_lo)
        if N >= 3:
            t = rho / rho_hi
            inside = np.abs(t) < 1.0
            ts = np.where(inside, t, 0.0)
            om = 1.0 - ts * ts
            pr = np.where(inside, np.exp(-1.0 / om), 0.0)
            dr = np.where(inside, np.exp(-1.0 / om) * (-2.0 * ts / om**2) / rho_hi, 0.0)
        else:
            pr = np.ones_like(np.asarray(rho, dtype=float))
            dr = np.zeros_like(pr)
        py = chi.value(y)
        dy = chi.derivative(y)
        return px, dx, pr, dr, py, dy

    def value(x1, rho, y):
        px, _, pr, _, py, _ = parts(x1, rho, y)
        return px * pr * py

    def gradient_norm(x1, rho, y):
        px, dx, pr, dr, py, dy = parts(x1, rho, y)
        return np.sqrt(
            (dx * pr * py) ** 2 + (px * dr * py) ** 2 + (px * pr * dy) ** 2
        )

    box = ((x_lo, x_hi), (0.0, rho_hi), (y_lo, y_hi))
    return HalfSpaceFunction(
        value, gradient_norm, support=box,
        label=f"product[{x_lo:.3g},{x_hi:.3g}]x[0,{rho_hi:.3g}]x[{y_lo:.3g},{y_hi:.3g}]",
    )


def _bump_spec_for_trial(
    kind: InequalityKind,
    params: Params,
    seed: int,
    index: int,
    allow_origin: bool = False,
) -> tuple[float, float]:
    rng = np.random.default_rng([seed, index])
    if kind is InequalityKind.BALL and params.p > 2.0:
        rp = solve_rp(params).root
        r_lo = rng.uniform(0.03, 0.4) * rp
        r_hi = r_lo + rng.uniform(0.1, 0.55) * rp
        r_hi = min(r_hi, 0.98 * rp)
        return r_lo, r_hi
    u = random_bump(rng, allow_origin=allow_origin)
    return u.support


def _trial_job(args):
    kind_value, N, p, l, r_lo, r_hi, tol, label_index = args
    params = Params(N, p)
    u = make_bump(r_lo, r_hi, "mollifier")
    rep = verify(InequalityKind(kind_value), params, u, tol, l=l)
    return label_index, rep


def batch_verify(
    kind: InequalityKind,
    params_grid,
    trials: int,
    seed: int,
    tol: float = 1e-9,
    l: float | None = None,
    workers: int | None = None,
    allow_origin: bool = False,
) -> list[InequalityReport]:
    """Seeded battery of radial/1D verifications, ordered by trial index.

    Trials round-robin over ``params_grid``.  Supports are drawn from the
    per-trial generator default_rng([seed, index]), so results do not
    depend on the worker count (set via HYPLAB_WORKERS or ``workers``).
    ``allow_origin`` lets a fraction of supports touch r = 0; it is
    rejected for the Green's-function weight, whose node evaluation needs
    r_lo > 0.
    """
    kind = InequalityKind(kind)
    if kind.admissible_class == "halfspace":
        raise ValueError("use halfspace_pair_reports for the half-space battery")
    if allow_origin and kind is InequalityKind.GREEN_WEIGHT:
        raise HypothesisError(
            "supports touching the origin are not allowed for the "
            "Green's-function weight battery"
        )
    grid = list(params_grid)
    jobs = []
    for i in range(trials):
        params = grid[i % len(grid)]
        r_lo, r_hi = _bump_spec_for_trial(kind, params, seed, i, allow_origin)
        jobs.append((kind.value, params.N, params.p, l, r_lo, r_hi, tol, i))
    if workers is None:
        workers = int(os.environ.get("HYPLAB_WORKERS", "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial_job, jobs))
    else:
        results = [_trial_job(j) for j in jobs]
    results.sort(key=lambda t: t[0])
    return [rep for _, rep in results]


def halfspace_pair_reports(
    params: Params, trials: int, seed: int, tol: float = 1e-7
) -> list[tuple[InequalityReport, InequalityReport]]:
    """Paired (hyperbolic-form, Maz'ya-form) reports per test function."""
    out = []
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        u = random_halfspace_product(rng, params.N)
        r_hyp = verify(InequalityKind.BOUNDED_V, params, u, tol)
        r_maz = verify(InequalityKind.MAZYA, params, u, tol)
        out.append((r_hyp, r_maz))
    return out
