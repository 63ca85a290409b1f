import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import erf, i0e

from clpair import (
    BeamParams,
    DomainError,
    EmptyFilterError,
    ScatteredState,
    SingularPointError,
    SpectrumModel,
    ZeroPhase,
    apply_filter,
    derive_kinematics,
    eval_psi_ini,
    eval_psi_sc,
    spectrum_normalization,
    wavelength_to_wavenumbers,
)
from clpair.constants import ELECTRON_REST_KEV, HBARC_KEV_UM
from clpair.model import (
    PolarLinearPhase,
    QuadratureSpec,
    RadialDkPhase,
    RadialKcPhase,
    eval_eta,
    eval_f,
    eval_g,
    eval_gamma,
    eval_gamma_cartesian,
    eta_transverse_gradient_sq,
    gamma_cartesian_derivatives,
    psi_ini_x_sq,
)
from clpair.quadrature import gauss_legendre_panels, integrate_1d

from conftest import DQ_PAR, K_C
from reference_tables import ERF_TABLE, I0E_TABLE


class TestSpecialFunctionPins:
    """The package leans on scipy's erf and i0e; pin them to frozen
    mpmath values so a broken environment fails loudly."""

    def test_erf_table(self):
        for x, ref in ERF_TABLE:
            assert erf(x) == pytest.approx(ref, rel=1e-14, abs=1e-15)

    def test_i0e_table(self):
        for b, ref in I0E_TABLE:
            assert i0e(b) == pytest.approx(ref, rel=1e-13)


class TestKinematics:
    def test_200_kev_values(self):
        q0, c_over_vz = derive_kinematics(200.0)
        assert q0 == pytest.approx(2.5054e6, rel=1e-4)
        assert c_over_vz == pytest.approx(1.4382, rel=1e-4)

    def test_de_broglie_cross_check(self):
        # published 200 keV de Broglie wavelength ~ 2.51 pm
        q0, _ = derive_kinematics(200.0)
        lam_pm = 2.0 * math.pi / q0 * 1e6
        assert lam_pm == pytest.approx(2.51, rel=2e-3)

    def test_rest_energy_point(self):
        q0, c_over_vz = derive_kinematics(ELECTRON_REST_KEV)
        assert q0 == pytest.approx(math.sqrt(3.0) * ELECTRON_REST_KEV / HBARC_KEV_UM, rel=1e-12)
        assert c_over_vz == pytest.approx(2.0 / math.sqrt(3.0), rel=1e-12)

    def test_nonrelativistic_divergence_guarded(self):
        q0, c_over_vz = derive_kinematics(1e-12)
        assert math.isfinite(q0) and c_over_vz > 1e4

    def test_rejects_nonpositive_energy(self):
        with pytest.raises(DomainError):
            derive_kinematics(0.0)
        with pytest.raises(DomainError):
            derive_kinematics(-5.0)

    @given(st.floats(min_value=1.0, max_value=1e4))
    @settings(max_examples=50, deadline=None)
    def test_monotonic_in_energy(self, k):
        q0_a, cv_a = derive_kinematics(k)
        q0_b, cv_b = derive_kinematics(k * 1.01)
        assert q0_b > q0_a
        assert 1.0 < cv_b < cv_a


class TestWavelengthConversion:
    def test_fig_params(self):
        # dk = 2 pi dlambda / lambda^2; dlambda ~ 0.0119 um gives the
        # reference width 0.3 um^-1
        k_c, dk = wavelength_to_wavenumbers(0.5, 0.0119)
        assert k_c == pytest.approx(12.566370614359172, rel=1e-12)
        assert dk == pytest.approx(0.3, rel=0.01)

    def test_two_pi_identity(self):
        k_c, _ = wavelength_to_wavenumbers(2.0 * math.pi, 0.1)
        assert k_c == pytest.approx(1.0, rel=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            wavelength_to_wavenumbers(-0.5, 0.1)
        with pytest.raises(DomainError):
            wavelength_to_wavenumbers(0.5, 0.0)


class TestSpectrumNormalization:
    @pytest.mark.parametrize("dk", [0.1, 1.0, 10.0, 30.0])
    def test_radial_quadrature_unity(self, dk, make_spectrum):
        s = make_spectrum(dk)
        res = integrate_1d(
            lambda k: k**2 * eval_g(s, k),
            *s.radial_support(10.0),
            QuadratureSpec(rel_tol=1e-12, abs_tol=1e-14),
            vectorized=True,
        )
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_narrow_limit(self):
        k_c = 12.566
        dk = k_c / 100.0
        limit = 1.0 / (math.sqrt(2.0 * math.pi) * dk * k_c**2)
        assert spectrum_normalization(k_c, dk) == pytest.approx(limit, rel=1e-3)

    def test_matches_independent_quadrature_inverse(self):
        k_c, dk = 12.566, 1.0
        raw = lambda k: k**2 * np.exp(-((k - k_c) ** 2) / (2.0 * dk**2))
        res = integrate_1d(raw, 0.0, k_c + 12.0 * dk, QuadratureSpec(rel_tol=1e-12), vectorized=True)
        assert spectrum_normalization(k_c, dk) == pytest.approx(1.0 / res.value, rel=1e-9)


class TestSpectrumModel:
    def test_gamma_zeros_and_peak(self, make_spectrum):
        s = make_spectrum(1.0)
        assert eval_gamma(s, s.k_c, 0.0) == 0.0
        assert eval_gamma(s, s.k_c, math.pi / 2.0) == pytest.approx(0.0, abs=1e-30)
        assert eval_gamma(s, s.k_c, math.pi / 4.0) == pytest.approx(s.n_g * 15.0 / (32.0 * math.pi), rel=1e-12)

    def test_full_3d_normalization(self, make_spectrum):
        s = make_spectrum(1.0)
        kn, kw = gauss_legendre_panels(*s.radial_support(10.0), 16, 16)
        tn, tw = gauss_legendre_panels(0.0, math.pi, 8, 16)
        total = 2.0 * math.pi * np.einsum(
            "i,j,ij->", kw * kn**2, tw * np.sin(tn), eval_gamma(s, kn[:, None], tn[None, :])
        )
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_angular_profile_normalized(self):
        tn, tw = gauss_legendre_panels(0.0, math.pi, 8, 16)
        assert 2.0 * math.pi * np.sum(tw * np.sin(tn) * eval_f(tn)) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_bad_params(self):
        with pytest.raises(DomainError):
            SpectrumModel.create(-1.0, 0.3)
        with pytest.raises(DomainError):
            SpectrumModel.create(12.0, 0.0)


class TestGammaDerivatives:
    def test_matches_finite_differences(self, make_spectrum):
        s = make_spectrum(1.0)
        rng = np.random.default_rng(7)
        pts = rng.uniform(-14.0, 14.0, size=(50, 3))
        step = 1e-5 * s.k_c
        gam, gx, gy, gxx, gyy = gamma_cartesian_derivatives(s, pts)
        for axis, (d1, d2) in enumerate([(gx, gxx), (gy, gyy)]):
            e = np.zeros(3)
            e[axis] = step
            up = eval_gamma_cartesian(s, pts + e)
            dn = eval_gamma_cartesian(s, pts - e)
            fd1 = (up - dn) / (2.0 * step)
            fd2 = (up - 2.0 * gam + dn) / step**2
            assert np.max(np.abs(fd1 - d1)) < 1e-6 * np.max(np.abs(d1))
            assert np.max(np.abs(fd2 - d2)) < 1e-5 * np.max(np.abs(d2))

    def test_parity(self, make_spectrum):
        s = make_spectrum(1.0)
        p = np.array([[3.0, 1.0, 9.0]])
        m = np.array([[-3.0, 1.0, 9.0]])
        _, gx_p, _, gxx_p, _ = gamma_cartesian_derivatives(s, p)
        _, gx_m, _, gxx_m, _ = gamma_cartesian_derivatives(s, m)
        assert gx_m[0] == pytest.approx(-gx_p[0], rel=1e-12)
        assert gxx_m[0] == pytest.approx(gxx_p[0], rel=1e-12)

    def test_on_axis_transverse_laplacian(self, make_spectrum):
        # on the polar axis the density vanishes quadratically; the
        # transverse Laplacian limit is 4 g(k) C / k^2 with C = 15/8pi
        s = make_spectrum(1.0)
        kz = s.k_c
        _, gx, gy, gxx, gyy = gamma_cartesian_derivatives(s, np.array([[0.0, 0.0, kz]]))
        expected = 4.0 * float(eval_g(s, kz)) * 15.0 / (8.0 * math.pi) / kz**2
        assert gx[0] == pytest.approx(0.0, abs=1e-12)
        assert gxx[0] + gyy[0] == pytest.approx(expected, rel=1e-6)

    def test_singular_at_origin(self, make_spectrum):
        with pytest.raises(SingularPointError):
            gamma_cartesian_derivatives(make_spectrum(1.0), np.array([[0.0, 0.0, 0.0]]))

    def test_filtered_rejected(self, make_spectrum):
        s = apply_filter(make_spectrum(1.0), lambda k, th: np.ones(np.broadcast(k, th).shape))
        with pytest.raises(DomainError):
            gamma_cartesian_derivatives(s, np.array([[1.0, 1.0, 1.0]]))


class TestBeam:
    def test_create_consistency(self):
        b = BeamParams.create(200.0, 4.0, 4.8)
        q0, cv = derive_kinematics(200.0)
        assert b.q0 == q0 and b.c_over_vz == cv

    def test_coherence_lengths(self):
        b = BeamParams.from_coherence_lengths(200.0, 1.5, 1.3)
        assert b.dq_perp == pytest.approx(2.0 * math.pi / 1.5, rel=1e-12)
        assert b.dq_par == pytest.approx(2.0 * math.pi / 1.3, rel=1e-12)

    def test_inconsistent_q0_rejected(self):
        with pytest.raises(DomainError):
            BeamParams(200.0, 1.0, 1.4382, 1.0, 1.0)

    def test_small_recoil_guard(self):
        q0, _ = derive_kinematics(200.0)
        with pytest.raises(DomainError):
            BeamParams.create(200.0, q0 * 1.5, 1.0)
        with pytest.warns(UserWarning):
            BeamParams.create(200.0, q0 / 5.0, 1.0)

    def test_psi_ini_normalized(self):
        b = BeamParams.create(200.0, 2.0, 3.0)
        qx, wx = gauss_legendre_panels(-8.0 * b.dq_perp, 8.0 * b.dq_perp, 8, 16)
        qz, wz = gauss_legendre_panels(b.q0 - 8.0 * b.dq_par, b.q0 + 8.0 * b.dq_par, 8, 16)
        grid = np.stack(np.meshgrid(qx, qx, qz, indexing="ij"), axis=-1)
        vals = eval_psi_ini(b, grid) ** 2
        total = np.einsum("ijk,i,j,k->", vals, wx, wx, wz)
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_psi_ini_peak_and_parity(self):
        b = BeamParams.create(200.0, 2.0, 3.0)
        peak = (2.0 * math.pi) ** (-0.75) / (b.dq_perp * math.sqrt(b.dq_par))
        assert eval_psi_ini(b, [0.0, 0.0, b.q0]) == pytest.approx(peak, rel=1e-12)
        assert eval_psi_ini(b, [1.0, -2.0, b.q0]) == eval_psi_ini(b, [-1.0, 2.0, b.q0])

    def test_psi_x_sq_normalized(self):
        b = BeamParams.create(200.0, 2.0, 3.0)
        qx, wx = gauss_legendre_panels(-16.0, 16.0, 8, 16)
        assert np.sum(wx * psi_ini_x_sq(b, qx)) == pytest.approx(1.0, abs=1e-12)


class TestPhases:
    def test_xi1_for_linear_eta(self):
        phase = PolarLinearPhase.from_eta(lambda t: t)
        assert phase.xi1 == pytest.approx(3.0 / 14.0, abs=1e-10)

    def test_radial_kc_substitution(self, make_spectrum):
        from clpair.measures import d_eta

        s = SpectrumModel.create(12.566, 0.3)
        assert d_eta(RadialKcPhase(100.0), s) == pytest.approx(200.0 / (7.0 * 12.566**2), rel=1e-10)
        assert d_eta(RadialDkPhase(5.0), s) == pytest.approx(10.0 / (7.0 * 0.09), rel=1e-10)

    def test_eval_eta_variants(self, make_spectrum):
        s = make_spectrum(0.3)
        k = np.array([10.0, 12.0])
        th = np.array([0.5, 1.0])
        assert np.all(eval_eta(ZeroPhase(), s, k, th) == 0.0)
        np.testing.assert_allclose(eval_eta(PolarLinearPhase(lambda t: 2 * t, 0.1), s, k, th), 2 * th)
        np.testing.assert_allclose(eval_eta(RadialKcPhase(4.0), s, k, th), 2.0 * k / s.k_c)
        np.testing.assert_allclose(eval_eta(RadialDkPhase(9.0), s, k, th), 3.0 * k / s.dk_ph)

    def test_transverse_gradient_sq(self, make_spectrum):
        s = make_spectrum(0.3)
        k, th = 10.0, 0.7
        got = eta_transverse_gradient_sq(RadialKcPhase(4.0), s, k, th)
        assert got == pytest.approx(4.0 / s.k_c**2 * math.sin(th) ** 2, rel=1e-10)
        got = eta_transverse_gradient_sq(PolarLinearPhase(lambda t: t, 3.0 / 14.0), s, k, th)
        assert got == pytest.approx((math.cos(th) / k) ** 2, rel=1e-4)


class TestFilter:
    def test_identity_filter(self, make_spectrum):
        s = apply_filter(make_spectrum(0.5), lambda k, th: np.ones(np.broadcast(k, th).shape))
        assert s.filter.n_f == pytest.approx(1.0, abs=1e-8)

    def test_band_indicator(self, make_spectrum):
        s0 = make_spectrum(0.5)
        ind = lambda k, th: ((np.abs(k - s0.k_c) <= s0.dk_ph) * np.ones(np.broadcast(k, th).shape)).astype(float)
        s = apply_filter(s0, ind)
        band = integrate_1d(
            lambda k: k**2 * eval_g(s0, k),
            s0.k_c - s0.dk_ph,
            s0.k_c + s0.dk_ph,
            QuadratureSpec(rel_tol=1e-10),
            vectorized=True,
        )
        assert 1.0 / s.filter.n_f == pytest.approx(band.value, rel=1e-6)

    def test_gaussian_filter_narrows_spectrum(self, make_spectrum):
        s0 = make_spectrum(1.0)
        w = lambda k, th: np.exp(-((k - s0.k_c) ** 2) / (2.0 * 0.5**2)) * np.ones(np.broadcast(k, th).shape)
        s1 = apply_filter(s0, w)

        def k_variance(spec):
            kn, kw = gauss_legendre_panels(*s0.radial_support(10.0), 16, 16)
            tn, tw = gauss_legendre_panels(0.0, math.pi, 8, 16)
            dens = 2.0 * math.pi * np.einsum(
                "j,ij->i", tw * np.sin(tn), eval_gamma(spec, kn[:, None], tn[None, :])
            ) * kn**2
            m0 = np.sum(kw * dens)
            m1 = np.sum(kw * dens * kn) / m0
            return np.sum(kw * dens * (kn - m1) ** 2) / m0

        assert k_variance(s1) < k_variance(s0)

    def test_empty_filter(self, make_spectrum):
        with pytest.raises(EmptyFilterError):
            apply_filter(make_spectrum(0.5), lambda k, th: np.zeros(np.broadcast(k, th).shape))


class TestScatteredState:
    def test_amplitude_factorization(self, make_beam, make_spectrum):
        b = make_beam(3.0)
        s = make_spectrum(0.5)
        state = ScatteredState(b, s, RadialKcPhase(4.0))
        q = np.array([1.0, -0.5, b.q0])
        kv = np.array([2.0, 1.0, 8.0])
        k = float(np.linalg.norm(kv))
        theta = math.acos(kv[2] / k)
        shifted = np.array([q[0] + kv[0], q[1] + kv[1], q[2] + b.c_over_vz * k])
        expect = (
            float(eval_psi_ini(b, shifted))
            * math.sqrt(float(eval_gamma(s, k, theta)))
            * np.exp(1j * 2.0 * k / s.k_c)
        )
        assert complex(eval_psi_sc(state, q, kv)) == pytest.approx(expect, rel=1e-12)
