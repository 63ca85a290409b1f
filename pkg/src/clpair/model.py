"""Domain model: electron beam, luminescence spectrum, and photonic phase.

Working units throughout: lengths in um, wavenumbers in um^-1, energies
in keV. The luminescence spectrum is a Gaussian in |k| centered at k_c
with width dk_ph, times the transition-radiation angular profile
(15/8pi) (sin(theta) cos(theta))^2, normalized so that the full 3D
integral of the density is one.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
from scipy.special import erf

from .constants import ELECTRON_REST_KEV, HBARC_KEV_UM
from .errors import DomainError, EmptyFilterError, SingularPointError

TWO_PI = 2.0 * math.pi
ANGULAR_NORM = 15.0 / (8.0 * math.pi)


# ---------------------------------------------------------------------------
# kinematics and unit conversions

def derive_kinematics(kinetic_energy_kev: float) -> tuple[float, float]:
    """Central electron wavenumber q0 (um^-1) and c/v_z from kinetic energy.

    Relativistic kinematics: the momentum satisfies
    (pc)^2 = K^2 + 2 mc^2 K and c/v = (K + mc^2) / (pc).
    """
    if not kinetic_energy_kev > 0.0:
        raise DomainError(f"kinetic energy must be positive, got {kinetic_energy_kev}")
    pc = math.sqrt(kinetic_energy_kev**2 + 2.0 * ELECTRON_REST_KEV * kinetic_energy_kev)
    q0 = pc / HBARC_KEV_UM
    c_over_vz = (kinetic_energy_kev + ELECTRON_REST_KEV) / pc
    return q0, c_over_vz


def wavelength_to_wavenumbers(lambda_c: float, dlambda: float) -> tuple[float, float]:
    """Convert central wavelength and spectral width (um) to k_c, dk_ph (um^-1)."""
    if not (lambda_c > 0.0 and dlambda > 0.0):
        raise DomainError("wavelength and width must be positive")
    k_c = TWO_PI / lambda_c
    dk_ph = TWO_PI * dlambda / lambda_c**2
    return k_c, dk_ph


def spectrum_normalization(k_c: float, dk_ph: float) -> float:
    """Normalization N_g (um^3) ensuring int_0^inf k^2 g(k) dk = 1."""
    if not (k_c > 0.0 and dk_ph > 0.0):
        raise DomainError("k_c and dk_ph must be positive")
    z = k_c / (math.sqrt(2.0) * dk_ph)
    inv = (
        math.sqrt(math.pi / 2.0) * dk_ph * (dk_ph**2 + k_c**2) * (erf(z) + 1.0)
        + k_c * dk_ph**2 * math.exp(-(z**2))
    )
    return 1.0 / inv


# ---------------------------------------------------------------------------
# beam

@dataclass(frozen=True)
class BeamParams:
    """Electron kinematics plus transverse/longitudinal wavenumber widths.

    `q0` and `c_over_vz` are derived from the kinetic energy; use
    `BeamParams.create` (or `from_coherence_lengths`) instead of the raw
    constructor so they stay consistent.
    """

    kinetic_energy_kev: float
    q0: float
    c_over_vz: float
    dq_perp: float
    dq_par: float

    def __post_init__(self):
        for name in ("kinetic_energy_kev", "q0", "c_over_vz", "dq_perp", "dq_par"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be positive")
        q0_check, _ = derive_kinematics(self.kinetic_energy_kev)
        if not math.isclose(q0_check, self.q0, rel_tol=1e-9):
            raise DomainError("q0 inconsistent with kinetic energy")
        # Small-recoil admissibility: dq << q0. Warn if dq exceeds q0/10,
        # reject outright if it exceeds q0 itself.
        for name in ("dq_perp", "dq_par"):
            dq = getattr(self, name)
            if dq >= self.q0:
                raise DomainError(f"{name} = {dq} violates small-recoil assumption (q0 = {self.q0})")
            if dq > self.q0 / 10.0:
                warnings.warn(
                    f"{name} = {dq} is not small compared with q0 = {self.q0}; "
                    "small-recoil approximation is marginal",
                    stacklevel=2,
                )

    @classmethod
    def create(cls, kinetic_energy_kev: float, dq_perp: float, dq_par: float) -> "BeamParams":
        q0, c_over_vz = derive_kinematics(kinetic_energy_kev)
        return cls(kinetic_energy_kev, q0, c_over_vz, dq_perp, dq_par)

    @classmethod
    def from_coherence_lengths(cls, kinetic_energy_kev: float, l_perp: float, l_par: float) -> "BeamParams":
        """Build from coherence lengths (um) via dq = 2 pi / L."""
        if not (l_perp > 0.0 and l_par > 0.0):
            raise DomainError("coherence lengths must be positive")
        return cls.create(kinetic_energy_kev, TWO_PI / l_perp, TWO_PI / l_par)


def eval_psi_ini(beam: BeamParams, q_vec) -> np.ndarray:
    """Initial electron amplitude (um^{3/2}) at wavevector(s) q.

    Real product of three Gaussians centered at (0, 0, q0), widths
    (dq_perp, dq_perp, dq_par). `q_vec` has shape (..., 3).
    """
    q = np.asarray(q_vec, dtype=float)
    qx, qy, qz = q[..., 0], q[..., 1], q[..., 2]
    norm = (TWO_PI) ** (-0.75) / (beam.dq_perp * math.sqrt(beam.dq_par))
    expo = (
        -(qx**2 + qy**2) / (4.0 * beam.dq_perp**2)
        - (qz - beam.q0) ** 2 / (4.0 * beam.dq_par**2)
    )
    return norm * np.exp(expo)


def psi_ini_x_sq(beam: BeamParams, qx) -> np.ndarray:
    """|psi_ini^(x)(qx)|^2, the 1D transverse momentum density (um)."""
    qx = np.asarray(qx, dtype=float)
    return np.exp(-(qx**2) / (2.0 * beam.dq_perp**2)) / (math.sqrt(TWO_PI) * beam.dq_perp)


# ---------------------------------------------------------------------------
# spectrum

@dataclass(frozen=True)
class SpectrumFilter:
    """Multiplicative photonic filter weight w(k, theta) >= 0.

    `bound` is a sup bound for w over the spectrum support, used for
    rejection sampling; `n_f` renormalizes the filtered density.
    """

    weight: Callable[[np.ndarray, np.ndarray], np.ndarray]
    n_f: float
    bound: float


@dataclass(frozen=True)
class SpectrumModel:
    """Parametric luminescence spectrum Gamma(k) = g(k) f(theta).

    Optionally carries a multiplicative filter; the filtered density is
    n_f * w(k, theta) * Gamma(k) and integrates to one.
    """

    k_c: float
    dk_ph: float
    n_g: float = field(default=0.0)
    filter: Optional[SpectrumFilter] = None

    def __post_init__(self):
        if not (self.k_c > 0.0 and self.dk_ph > 0.0):
            raise DomainError("k_c and dk_ph must be positive")
        if self.n_g == 0.0:
            object.__setattr__(self, "n_g", spectrum_normalization(self.k_c, self.dk_ph))

    @classmethod
    def create(cls, k_c: float, dk_ph: float) -> "SpectrumModel":
        return cls(k_c, dk_ph)

    @classmethod
    def from_wavelength(cls, lambda_c: float, dlambda: float) -> "SpectrumModel":
        return cls(*wavelength_to_wavenumbers(lambda_c, dlambda))

    def radial_support(self, sigmas: float = 8.0) -> tuple[float, float]:
        """Truncated radial window [max(0, k_c - s dk), k_c + s dk]."""
        return max(0.0, self.k_c - sigmas * self.dk_ph), self.k_c + sigmas * self.dk_ph


def eval_g(spectrum: SpectrumModel, k) -> np.ndarray:
    """Radial factor g(k) = N_g exp(-(k - k_c)^2 / (2 dk^2)) (um^3)."""
    k = np.asarray(k, dtype=float)
    return spectrum.n_g * np.exp(-((k - spectrum.k_c) ** 2) / (2.0 * spectrum.dk_ph**2))


def eval_f(theta) -> np.ndarray:
    """Angular profile f(theta) = (15/8pi) (sin theta cos theta)^2 (sr^-1)."""
    theta = np.asarray(theta, dtype=float)
    return ANGULAR_NORM * (np.sin(theta) * np.cos(theta)) ** 2


def eval_gamma(spectrum: SpectrumModel, k, theta) -> np.ndarray:
    """Spectral density Gamma(k, theta) (um^3), including any filter."""
    out = eval_g(spectrum, k) * eval_f(theta)
    if spectrum.filter is not None:
        out = out * spectrum.filter.n_f * spectrum.filter.weight(np.asarray(k, dtype=float), np.asarray(theta, dtype=float))
    return out


def eval_gamma_cartesian(spectrum: SpectrumModel, k_vec) -> np.ndarray:
    """Gamma evaluated at Cartesian wavevector(s), shape (..., 3)."""
    k_vec = np.asarray(k_vec, dtype=float)
    kx, ky, kz = k_vec[..., 0], k_vec[..., 1], k_vec[..., 2]
    k = np.sqrt(kx**2 + ky**2 + kz**2)
    theta = np.arctan2(np.sqrt(kx**2 + ky**2), kz)
    return eval_gamma(spectrum, k, theta)


def gamma_cartesian_derivatives(spectrum: SpectrumModel, k_vec):
    """Gamma and its transverse Cartesian partials at wavevector(s).

    Returns (Gamma, dGx, dGy, d2Gxx, d2Gyy), each of the input's batch
    shape. Analytic chain rule through (k, theta); exact on the model
    family. Filters are not supported here (no analytic weight partials).
    """
    if spectrum.filter is not None:
        raise DomainError("analytic derivatives are only defined for the unfiltered model")
    k_vec = np.asarray(k_vec, dtype=float)
    kx, ky, kz = (np.array(k_vec[..., i], dtype=float) for i in range(3))
    k = np.sqrt(kx**2 + ky**2 + kz**2)
    if np.any(k == 0.0):
        raise SingularPointError("Gamma derivatives are singular at k = 0")
    kperp = np.sqrt(kx**2 + ky**2)
    # On the polar axis the transverse partials have a direction-dependent
    # limit; nudge kx so the (kx, 0) approach is used, which reproduces the
    # correct transverse Laplacian.
    on_axis = kperp == 0.0
    if np.any(on_axis):
        kx = np.where(on_axis, 1e-9 * k, kx)
        kperp = np.sqrt(kx**2 + ky**2)
        k = np.sqrt(kx**2 + ky**2 + kz**2)

    # arctan2 keeps full precision for small polar angles, where
    # arccos(kz/k) loses half the mantissa
    theta = np.arctan2(kperp, kz)
    g = eval_g(spectrum, k)
    dk2 = spectrum.dk_ph**2
    gp = -(k - spectrum.k_c) / dk2 * g
    gpp = (((k - spectrum.k_c) / dk2) ** 2 - 1.0 / dk2) * g
    c4 = ANGULAR_NORM
    f = 0.25 * c4 * np.sin(2.0 * theta) ** 2
    fp = 0.5 * c4 * np.sin(4.0 * theta)
    fpp = 2.0 * c4 * np.cos(4.0 * theta)

    gam = g * f
    out_dg = []
    out_d2g = []
    for ka in (kx, ky):
        dk_dka = ka / k
        dth_dka = ka * kz / (k**2 * kperp)
        d2k_dka2 = 1.0 / k - ka**2 / k**3
        d2th_dka2 = (
            kz / (k**2 * kperp)
            - 2.0 * ka**2 * kz / (k**4 * kperp)
            - ka**2 * kz / (k**2 * kperp**3)
        )
        out_dg.append(gp * f * dk_dka + g * fp * dth_dka)
        out_d2g.append(
            gpp * f * dk_dka**2
            + gp * f * d2k_dka2
            + 2.0 * gp * fp * dk_dka * dth_dka
            + g * fpp * dth_dka**2
            + g * fp * d2th_dka2
        )
    return gam, out_dg[0], out_dg[1], out_d2g[0], out_d2g[1]


# ---------------------------------------------------------------------------
# phase models

@dataclass(frozen=True)
class ZeroPhase:
    """eta(k) identically zero; D_eta = 0 exactly."""


@dataclass(frozen=True)
class PolarLinearPhase:
    """eta depends on the polar angle only: eta(k) = eta1(theta).

    `xi1` is the dimensionless angular integral
    pi * int sin(theta) cos^2(theta) f(theta) eta1'(theta)^2 dtheta,
    precomputed at construction (3/14 for eta1(theta) = theta).
    """

    eta1: Callable[[np.ndarray], np.ndarray]
    xi1: float

    @classmethod
    def from_eta(cls, eta1: Callable[[np.ndarray], np.ndarray]) -> "PolarLinearPhase":
        from .quadrature import gauss_legendre_panels

        nodes, wts = gauss_legendre_panels(0.0, math.pi, 24, 16)
        h = 1e-6
        deta = (eta1(nodes + h) - eta1(nodes - h)) / (2.0 * h)
        xi1 = math.pi * float(
            np.sum(wts * np.sin(nodes) * np.cos(nodes) ** 2 * eval_f(nodes) * deta**2)
        )
        return cls(eta1, xi1)


@dataclass(frozen=True)
class RadialKcPhase:
    """eta(k) = sqrt(xi2) k / k_c."""

    xi2: float


@dataclass(frozen=True)
class RadialDkPhase:
    """eta(k) = sqrt(xi2) k / dk_ph."""

    xi2: float


PhaseModel = Union[ZeroPhase, PolarLinearPhase, RadialKcPhase, RadialDkPhase]


def eval_eta(phase: PhaseModel, spectrum: SpectrumModel, k, theta) -> np.ndarray:
    """Phase eta at (k, theta); independent of azimuth by symmetry."""
    k = np.asarray(k, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if isinstance(phase, ZeroPhase):
        return np.zeros(np.broadcast(k, theta).shape)
    if isinstance(phase, PolarLinearPhase):
        return np.broadcast_to(np.asarray(phase.eta1(theta), dtype=float), np.broadcast(k, theta).shape).copy()
    if isinstance(phase, RadialKcPhase):
        return np.broadcast_to(math.sqrt(phase.xi2) * k / spectrum.k_c, np.broadcast(k, theta).shape).copy()
    if isinstance(phase, RadialDkPhase):
        return np.broadcast_to(math.sqrt(phase.xi2) * k / spectrum.dk_ph, np.broadcast(k, theta).shape).copy()
    raise TypeError(f"unknown phase model {phase!r}")


def eta_transverse_gradient_sq(phase: PhaseModel, spectrum: SpectrumModel, k, theta) -> np.ndarray:
    """(d eta/d k_x)^2 + (d eta/d k_y)^2 at (k, theta).

    Equals (eta_k sin(theta) + eta_theta cos(theta) / k)^2 for an
    azimuth-independent phase.
    """
    k = np.asarray(k, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if isinstance(phase, ZeroPhase):
        return np.zeros(np.broadcast(k, theta).shape)
    if isinstance(phase, PolarLinearPhase):
        h = 1e-6
        deta = (np.asarray(phase.eta1(theta + h)) - np.asarray(phase.eta1(theta - h))) / (2.0 * h)
        return (deta * np.cos(theta) / k) ** 2 + 0.0 * k
    if isinstance(phase, RadialKcPhase):
        return np.broadcast_to((phase.xi2 / spectrum.k_c**2) * np.sin(theta) ** 2, np.broadcast(k, theta).shape).copy()
    if isinstance(phase, RadialDkPhase):
        return np.broadcast_to((phase.xi2 / spectrum.dk_ph**2) * np.sin(theta) ** 2, np.broadcast(k, theta).shape).copy()
    raise TypeError(f"unknown phase model {phase!r}")


# ---------------------------------------------------------------------------
# scattered state and quadrature control

@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for the numeric integrators."""

    rel_tol: float = 1e-6
    abs_tol: float = 1e-9
    max_evals: int = 2_000_000
    truncation_sigmas: float = 8.0
    mc_samples: int = 100_000
    mc_seed: int = 20260824

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise DomainError("rel_tol must be positive")
        if self.truncation_sigmas < 5.0:
            raise DomainError("truncation_sigmas must be at least 5")


@dataclass(frozen=True)
class ScatteredState:
    """Full electron-photon scattered state: beam + spectrum + phase."""

    beam: BeamParams
    spectrum: SpectrumModel
    phase: PhaseModel = field(default_factory=ZeroPhase)


def eval_psi_sc(state: ScatteredState, q_vec, k_vec) -> np.ndarray:
    """Scattered amplitude psi_sc(q, k) (complex, um^3).

    psi_ini evaluated at (q_perp + k_perp, q_z + (c/v_z) k) times
    sqrt(Gamma(k)) exp(i eta(k)).
    """
    q = np.asarray(q_vec, dtype=float)
    kv = np.asarray(k_vec, dtype=float)
    shifted = np.stack(
        [
            q[..., 0] + kv[..., 0],
            q[..., 1] + kv[..., 1],
            q[..., 2] + state.beam.c_over_vz * np.sqrt(np.sum(kv**2, axis=-1)),
        ],
        axis=-1,
    )
    k = np.sqrt(np.sum(kv**2, axis=-1))
    theta = np.arctan2(np.sqrt(kv[..., 0] ** 2 + kv[..., 1] ** 2), kv[..., 2])
    amp = eval_psi_ini(state.beam, shifted) * np.sqrt(eval_gamma(state.spectrum, k, theta))
    return amp * np.exp(1j * eval_eta(state.phase, state.spectrum, k, theta))


def apply_filter(
    spectrum: SpectrumModel,
    weight: Callable[[np.ndarray, np.ndarray], np.ndarray],
    quad: QuadratureSpec = QuadratureSpec(),
    bound: Optional[float] = None,
) -> SpectrumModel:
    """Attach a multiplicative filter weight and renormalize numerically.

    n_f^-1 = int d3k w(k, theta) Gamma(k); composing onto an existing
    filter multiplies the weights. Raises EmptyFilterError if the weight
    vanishes (numerically) on the support of Gamma.
    """
    from .quadrature import gauss_legendre_panels, integrate_1d

    if spectrum.filter is not None:
        prev = spectrum.filter

        def total_weight(k, theta, _w=weight, _p=prev.weight):
            return _w(k, theta) * _p(k, theta)

        base_nf = prev.n_f
    else:
        total_weight = weight
        base_nf = 1.0

    kmin, kmax = spectrum.radial_support(quad.truncation_sigmas)
    th_nodes, th_wts = gauss_legendre_panels(0.0, math.pi, 12, 16)
    ang = th_wts * np.sin(th_nodes) * eval_f(th_nodes)

    def radial_integrand(k):
        k = np.atleast_1d(np.asarray(k, dtype=float))
        w = total_weight(k[:, None], th_nodes[None, :])
        inner = np.sum(np.broadcast_to(w, (k.size, th_nodes.size)) * ang[None, :], axis=1)
        return TWO_PI * k**2 * eval_g(spectrum, k) * base_nf * inner

    res = integrate_1d(radial_integrand, kmin, kmax, quad, vectorized=True)
    if res.value <= 1e-12:
        raise EmptyFilterError("filter weight vanishes on the spectrum support")
    n_f = 1.0 / res.value

    if bound is None:
        kk = np.linspace(kmin, kmax, 513)
        tt = np.linspace(0.0, math.pi, 257)
        bound = float(np.max(total_weight(kk[:, None], tt[None, :]))) * 1.0000001

    return SpectrumModel(
        spectrum.k_c,
        spectrum.dk_ph,
        spectrum.n_g,
        SpectrumFilter(weight=total_weight, n_f=n_f, bound=bound),
    )
