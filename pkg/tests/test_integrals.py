"""Radial and half-space integral assembly against independent oracles."""

import math

import numpy as np
import pytest

from hyplab.core import Params
from hyplab.integrals import (
    HalfSpaceIntegrand,
    envelope_total,
    halfspace_integral,
    hardy1d_energy,
    hardy1d_mass,
    radial_energy,
    radial_weighted_mass,
    ueps_energy_mass,
)
from hyplab.quadrature import NonIntegrableSingularity
from hyplab.testfun import make_bump, make_veps


class TestRadialEnergy:
    def test_zero_function(self):

        u = make_bump(1.0, 2.0)
        zero = type(u)(
            value=lambda r: np.zeros_like(r),
            derivative=lambda r: np.zeros_like(r),
            support=(1.0, 2.0),
            smoothness="C-inf",
        )
        ep, mp = radial_energy(Params(3, 2.0), zero, 1e-10)
        assert ep.value == 0.0 and mp.value == 0.0

    def test_homogeneity_under_scaling(self):
        pr = Params(4, 2.5)
        u = make_bump(0.5, 2.5)
        c = 3.7
        cu = type(u)(
            value=lambda r: c * u.value(r),
            derivative=lambda r: c * u.derivative(r),
            support=u.support,
            smoothness=u.smoothness,
            breakpoints=u.breakpoints,
        )
        ep1, mp1 = radial_energy(pr, u, 1e-11)
        ep2, mp2 = radial_energy(pr, cu, 1e-11)
        assert ep2.value == pytest.approx(c**pr.p * ep1.value, rel=1e-9)
        assert mp2.value == pytest.approx(c**pr.p * mp1.value, rel=1e-9)

    def test_tent_mass_closed_form(self):
        # N = 2, p = 2, tent on [1, 3]:
        # int_1^3 (1-|r-2|)^2 sinh r dr = 2 cosh 3 - 4 sinh 2 - 2 cosh 1
        pr = Params(2, 2.0)
        u = make_bump(1.0, 3.0, "tent")
        _, mp = radial_energy(pr, u, 1e-12)
        exact = 2 * math.cosh(3.0) - 4 * math.sinh(2.0) - 2 * math.cosh(1.0)
        assert mp.value == pytest.approx(exact, rel=1e-11)
        assert abs(mp.value - exact) <= mp.error_estimate + 1e-12 * abs(exact)

    def test_large_dimension_no_overflow(self):
        pr = Params(13, 4.0)
        u = make_bump(15.0, 20.0)
        ep, mp = radial_energy(pr, u, 1e-9)
        assert math.isfinite(ep.value) and ep.value > 0
        assert mp.value > 1e80  # sinh(20)^12-scale volume


class TestWeightedMass:
    def test_weight_bounds_on_support(self):
        pr = Params(3, 2.0)
        u = make_bump(1.0, 2.0)
        _, mp = radial_energy(pr, u, 1e-11)
        w = radial_weighted_mass(pr, u, "1/r^p", 1e-11)
        assert 2.0**-pr.p * mp.value <= w.value <= mp.value

    def test_sinh_weight_below_r_weight(self):
        pr = Params(4, 3.0)
        u = make_bump(0.7, 1.9)
        wr = radial_weighted_mass(pr, u, "1/r^p", 1e-11)
        ws = radial_weighted_mass(pr, u, "1/sinh^p", 1e-11)
        assert ws.value < wr.value

    def test_hp_weight_at_p2_equals_plain_mass(self):
        pr = Params(5, 2.0)
        u = make_bump(0.4, 1.4)
        _, mp = radial_energy(pr, u, 1e-11)
        wh = radial_weighted_mass(pr, u, "Hp", 1e-11)
        assert wh.value == pytest.approx(mp.value, rel=1e-10)

    def test_nonintegrable_origin_rejected(self):
        # bounded profile at r = 0 with p >= N: 1/r^p mass diverges
        pr = Params(2, 2.0)
        u = make_veps(2.0, 0.5, 1e-3)
        const_at_zero = type(u)(
            value=lambda r: np.where(r < 2.0, 1.0, 0.0),
            derivative=lambda r: np.zeros_like(r),
            support=(0.0, 2.0),
            smoothness="piecewise-C1",
            breakpoints=(2.0,),
            origin_power=0.0,
            origin_coeff=1.0,
        )
        with pytest.raises(NonIntegrableSingularity):
            radial_weighted_mass(pr, const_at_zero, "1/r^p", 1e-9)

    def test_green_weight_mass_positive(self):
        pr = Params(5, 2.0)
        u = make_bump(0.5, 3.0)
        w = radial_weighted_mass(pr, u, "W", 1e-9)
        assert w.value > 0
        assert w.error_estimate < 1e-6 * w.value

    def test_unknown_weight_rejected(self):
        with pytest.raises(ValueError):
            radial_weighted_mass(Params(3, 2.0), make_bump(1.0, 2.0), "bogus", 1e-9)


class TestHardy1D:
    def test_profile_mass_exact_first_piece(self):
        # int_0^eps r^{delta-1} dr = eps^delta/delta dominates for small eps
        p, eps, delta = 2.0, 1e-2, 1e-3
        v = make_veps(p, eps, delta)
        rhs = hardy1d_mass(p, v, 1e-10)
        first = eps**delta / delta
        a = (p - 1 + delta) / p
        middle = eps ** (a * p) * (eps ** (1.0 - p) - 1.0) / (p - 1.0)
        # the [1, 2) ramp piece is O(eps^(p-1+delta)); bounded crudely by
        # eps^(a p) * int_1^2 (2-r)^p dr
        ramp_bound = eps ** (a * p) / (p + 1.0)
        assert rhs.value > first
        assert first + middle <= rhs.value <= first + middle + ramp_bound + 1e-9

    def test_l_equals_p_is_plain_derivative_energy(self):
        p = 3.0
        v = make_bump(0.5, 2.0)
        lhs = hardy1d_energy(p, p, v, 1e-11)
        from hyplab.quadrature import integrate_interval

        direct = integrate_interval(
            lambda r: np.abs(v.derivative(r)) ** p, 0.5, 2.0, 0.0, rel_tol=1e-11,
            vectorized=True,
        )
        assert lhs.value == pytest.approx(direct.value, rel=1e-9)

    def test_finite_mixed_energies(self):
        # finite for every 1 < l <= p (profile stays in the admissible class)
        p = 3.0
        v = make_veps(p, 0.3, 0.05)
        for l in (1.5, 2.0, 3.0):
            e = hardy1d_energy(p, l, v, 1e-9)
            assert math.isfinite(e.value) and e.value > 0


class TestHalfSpace:
    def test_indicator_n2(self):
        f = HalfSpaceIntegrand(
            lambda x1, rho, y: np.ones_like(x1),
            support=((0.0, 1.0), (0.0, 1.0), (1.0, 2.0)),
        )
        r = halfspace_integral(Params(2, 2.0), f, 1e-10)
        assert r.value == pytest.approx(1.0, abs=1e-9)

    def test_gaussian_n3_tensor_oracle(self):
        # oracle: product of 1D integrals, pi^(3/2) (1 + erf 1)/2
        f = HalfSpaceIntegrand(
            lambda x1, rho, y: np.exp(-x1 * x1 - rho * rho - (y - 1.0) ** 2),
            support=((-6.0, 6.0), (0.0, 6.0), (1e-9, 8.0)),
        )
        r = halfspace_integral(Params(3, 2.0), f, 1e-8)
        exact = math.pi**1.5 * (1.0 + math.erf(1.0)) / 2.0
        assert r.value == pytest.approx(exact, rel=1e-7)

    def test_rho_factor_n4(self):
        # omega_1 rho integrand: volume of unit box times 2 pi int rho drho
        f = HalfSpaceIntegrand(
            lambda x1, rho, y: np.ones_like(x1),
            support=((0.0, 1.0), (0.0, 1.0), (1.0, 2.0)),
        )
        r = halfspace_integral(Params(4, 2.0), f, 1e-9)
        assert r.value == pytest.approx(2.0 * math.pi * 0.5, rel=1e-8)

    def test_unreduced_dependence_rejected(self):
        f = HalfSpaceIntegrand(
            lambda x1, rho, y: np.ones_like(x1),
            support=((0.0, 1.0), (0.0, 1.0), (1.0, 2.0)),
            depends_reduced=False,
        )
        with pytest.raises(ValueError):
            halfspace_integral(Params(3, 2.0), f, 1e-8)

    def test_mass_of_decaying_family_matches_beta_closed_form(self):
        # int (y/A)^sigma y^-N dx dy has an exact Beta-function value
        for N, p, eps in [(2, 2.0, 0.1), (2, 2.0, 1e-3), (3, 3.0, 1e-2)]:
            pr = Params(N, p)
            sigma = N - 1 + eps
            _, mass = ueps_energy_mass(pr, eps, tol=1e-6)
            if N == 2:
                xint = math.sqrt(math.pi) * math.gamma(sigma - 0.5) / math.gamma(sigma)
            else:
                xint = math.pi / (sigma - 1.0)
            yint = math.gamma(eps) * math.gamma(sigma) / math.gamma(eps + sigma)
            exact = xint * yint
            assert mass.value == pytest.approx(exact, rel=3e-5)
            assert abs(mass.value - exact) <= 2.0 * mass.error_estimate

    def test_quotient_matches_radial_oracle(self):
        # the family is radial: quotient = k^p <tanh^p(r/2)> via 1D integrals
        from hyplab.quadrature import integrate_interval

        pr = Params(2, 2.0)
        eps = 0.01
        energy, mass = ueps_energy_mass(pr, eps, tol=1e-6)
        q = energy.value / mass.value
        # closed form for N = p = 2: quotient = (1 + eps)/4
        assert q == pytest.approx((1.0 + eps) / 4.0, rel=1e-5)

    def test_envelope_total_bounds_mass(self):
        pr = Params(3, 2.0)
        eps = 0.05
        _, mass = ueps_energy_mass(pr, eps, tol=1e-5)
        assert mass.value <= envelope_total(3, 2 + eps, 1.0)
