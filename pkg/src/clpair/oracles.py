"""Independent brute-force validators for the closed-form machinery.

Each oracle recomputes a quantity by a method sharing no code path with
the primary implementation (Monte Carlo sampling, dense SVD, discrete
grid moments, finite differences) and reports the discrepancy against
the primary value with an explicit tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .distributions import JointGrid, joint_position, momentum_grid, photon_marginal_kx
from .errors import DomainError, ResolutionError
from .measures import purity_sc, rel_pos_variance_closed, total_wavevector_variance
from .model import (
    BeamParams,
    QuadratureSpec,
    SpectrumModel,
    eval_gamma_cartesian,
    gamma_cartesian_derivatives,
    psi_ini_x_sq,
)
from .quadrature import GammaSampler, gauss_legendre_panels


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    value: float
    oracle_value: float
    discrepancy: float
    tolerance: float
    passed: bool
    metadata: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, quantity: str, value: float, oracle_value: float, tolerance: float, **metadata) -> "OracleReport":
        disc = abs(value - oracle_value)
        return cls(quantity, value, oracle_value, disc, tolerance, disc <= tolerance, metadata)


# ---------------------------------------------------------------------------
# Monte Carlo purity

def mc_purity(
    beam: BeamParams,
    spectrum: SpectrumModel,
    n: int = 1_000_000,
    seed: int = 20260824,
    quad: QuadratureSpec = QuadratureSpec(),
) -> OracleReport:
    """Purity as a sampled expectation over independent photon pairs.

    Draws k, k' i.i.d. from the spectral density and averages the
    double-Gaussian overlap factor; agrees with the quadrature purity
    within 3 standard errors by construction of the estimator.
    """
    if n < 10_000:
        raise DomainError("mc_purity requires at least 10^4 sample pairs")
    sampler = GammaSampler(spectrum, quad)
    rng = np.random.default_rng(seed)
    k1 = sampler.sample_cartesian(n, rng)
    k2 = sampler.sample_cartesian(n, rng)
    dperp2 = (k1[:, 0] - k2[:, 0]) ** 2 + (k1[:, 1] - k2[:, 1]) ** 2
    r1 = np.linalg.norm(k1, axis=1)
    r2 = np.linalg.norm(k2, axis=1)
    vals = np.exp(
        -dperp2 / (4.0 * beam.dq_perp**2)
        - beam.c_over_vz**2 * (r1 - r2) ** 2 / (4.0 * beam.dq_par**2)
    )
    estimate = float(np.mean(vals))
    stderr = float(np.std(vals, ddof=1) / math.sqrt(n))
    primary = purity_sc(beam, spectrum)
    return OracleReport.compare(
        "purity_sc_mc", primary, estimate, 3.0 * stderr, n=n, seed=seed, stderr=stderr
    )


# ---------------------------------------------------------------------------
# 1D Schmidt / SVD purity

def schmidt_purity_1d(
    dq_perp: float,
    g_kx: Callable[[np.ndarray], np.ndarray],
    kx_grid: np.ndarray,
    qx_grid: np.ndarray,
) -> OracleReport:
    """SVD purity of the 1D amplitude psi(q, k) = psi_x(q + k) sqrt(G(k)).

    Compares the singular-value purity sum(s^4)/sum(s^2)^2 against the
    overlap formula int int G(k) G(k') exp(-(k - k')^2 / (4 dq_perp^2)).
    `g_kx` must be a normalized 1D density on the k axis.
    """
    kx = np.asarray(kx_grid, dtype=float)
    qx = np.asarray(qx_grid, dtype=float)
    if kx.size < 16 or qx.size < 16:
        raise ResolutionError("grids must have at least 16 points")
    dk = float(kx[1] - kx[0])
    dq = float(qx[1] - qx[0])
    gk = np.asarray(g_kx(kx), dtype=float)
    # resolution contract: >= 8 points per Gaussian width on both axes
    if dq > dq_perp / 8.0:
        raise ResolutionError("q grid under-resolves the electron width")
    mk = np.sum(gk * kx) * dk
    sig_g = math.sqrt(max(np.sum(gk * (kx - mk) ** 2) * dk, 0.0))
    if sig_g > 0.0 and dk > sig_g / 8.0:
        raise ResolutionError("k grid under-resolves the spectral marginal")

    # electron factor shares the transverse-envelope convention
    beam_env = np.sqrt(psi_ini_x_sq_1d(dq_perp, qx[:, None] + kx[None, :]))
    amp = beam_env * np.sqrt(np.maximum(gk, 0.0))[None, :] * math.sqrt(dq * dk)
    s = np.linalg.svd(amp, compute_uv=False)
    s2 = s**2
    svd_purity = float(np.sum(s2**2) / np.sum(s2) ** 2)

    overlap = float(
        np.sum(
            gk[:, None]
            * gk[None, :]
            * np.exp(-((kx[:, None] - kx[None, :]) ** 2) / (4.0 * dq_perp**2))
        )
        * dk
        * dk
    )
    return OracleReport.compare(
        "schmidt_purity_1d", overlap, svd_purity, 1e-3, n_q=qx.size, n_k=kx.size
    )


def psi_ini_x_sq_1d(dq_perp: float, qx) -> np.ndarray:
    """Normalized 1D transverse momentum density with width dq_perp."""
    qx = np.asarray(qx, dtype=float)
    return np.exp(-(qx**2) / (2.0 * dq_perp**2)) / (math.sqrt(2.0 * math.pi) * dq_perp)


def schmidt_gaussian_closed(sig_g: float, dq_perp: float) -> float:
    """Closed purity (1 + sig_g^2/dq_perp^2)^(-1/2) for a Gaussian marginal."""
    return 1.0 / math.sqrt(1.0 + sig_g**2 / dq_perp**2)


# ---------------------------------------------------------------------------
# grid moments

def variance_from_grid(
    grid: JointGrid,
    which: str,
    beam: BeamParams,
    spectrum: Optional[SpectrumModel] = None,
) -> OracleReport:
    """Discrete grid variance versus the corresponding closed form.

    `which` is "total_wavevector" (variance of q_x + k_x on a momentum
    grid, closed form dq_perp^2, 0.5%) or "relative_position" (variance
    of x_el - x_ph on a position grid, closed form with zero phase, 2%).
    """
    total = grid.integral()
    if abs(total - 1.0) > 0.01:
        raise DomainError(f"grid is not normalized (integral {total:.4f})")
    if which == "total_wavevector":
        mean, var = grid.moments(lambda a, b: a + b)
        ref = total_wavevector_variance(beam)
        rel_tol = 0.005
    elif which == "relative_position":
        if spectrum is None:
            raise DomainError("relative_position comparison needs the spectrum")
        mean, var = grid.moments(lambda a, b: a - b)
        ref = rel_pos_variance_closed(beam, spectrum)
        rel_tol = 0.02
    else:
        raise DomainError(f"unknown variance target {which!r}")
    return OracleReport.compare(
        f"variance_{which}", ref, var, rel_tol * abs(ref), mean=mean
    )


# ---------------------------------------------------------------------------
# finite differences

def fd_gradient_check(
    spectrum: SpectrumModel,
    points: np.ndarray,
    step: float = 1e-4,
) -> OracleReport:
    """Central differences of the spectral density vs analytic partials.

    Checks first and second transverse partials at the given Cartesian
    points; reports the maximum relative error against the local density
    scale.
    """
    if spectrum.filter is not None:
        raise DomainError("finite-difference check requires the unfiltered model")
    if not step < spectrum.dk_ph / 10.0:
        raise DomainError("step must be small compared with the spectral width")
    pts = np.asarray(points, dtype=float)
    gam, gx, gy, gxx, gyy = gamma_cartesian_derivatives(spectrum, pts)
    worst = 0.0
    for axis, (d1, d2) in enumerate([(gx, gxx), (gy, gyy)]):
        e = np.zeros(3)
        e[axis] = step
        up = eval_gamma_cartesian(spectrum, pts + e)
        dn = eval_gamma_cartesian(spectrum, pts - e)
        fd1 = (up - dn) / (2.0 * step)
        fd2 = (up - 2.0 * gam + dn) / step**2
        # relative to the characteristic magnitude of each derivative order
        worst = max(
            worst,
            float(np.max(np.abs(fd1 - d1))) / (float(np.max(np.abs(d1))) + 1e-300),
            float(np.max(np.abs(fd2 - d2))) / (float(np.max(np.abs(d2))) + 1e-300),
        )
    return OracleReport.compare(
        "gamma_partials_fd", 0.0, worst, 1e-6, n_points=pts.shape[0], step=step
    )


# ---------------------------------------------------------------------------
# closed-form identity for the longitudinal variance term

def longitudinal_term_identity(beam: BeamParams, spectrum: SpectrumModel, quad: QuadratureSpec = QuadratureSpec()) -> OracleReport:
    """(1/8) int (c/v)^2 kperp^2 Gamma / (dq_par^2 k^2) d3k = (c/v)^2 / (14 dq_par^2).

    The angular average of kperp^2/k^2 over the emission profile is 4/7;
    verified here by direct spherical quadrature.
    """
    kmin, kmax = spectrum.radial_support(quad.truncation_sigmas)
    kn, kw = gauss_legendre_panels(kmin, kmax, 8, 16)
    tn, tw = gauss_legendre_panels(0.0, math.pi, 8, 16)
    from .model import eval_f, eval_g

    radial = float(np.sum(kw * kn**2 * eval_g(spectrum, kn)))
    angular = 2.0 * math.pi * float(np.sum(tw * np.sin(tn) ** 3 * eval_f(tn)))
    lhs = beam.c_over_vz**2 / (8.0 * beam.dq_par**2) * radial * angular
    rhs = beam.c_over_vz**2 / (14.0 * beam.dq_par**2)
    return OracleReport.compare("longitudinal_variance_term", rhs, lhs, 1e-6 * abs(rhs))


# ---------------------------------------------------------------------------
# factorized momentum density vs direct marginalization

def momentum_factorization_check(
    beam: BeamParams,
    spectrum: SpectrumModel,
    quad: QuadratureSpec = QuadratureSpec(),
) -> OracleReport:
    """Factorized P(q_x, k_x) versus direct Cartesian (k_y, k_z) quadrature.

    The direct path integrates the spectral density over a fine Cartesian
    (k_y, k_z) tensor grid, independent of the polar reduction used by
    the marginal.
    """
    _, kmax = spectrum.radial_support(quad.truncation_sigmas)
    kx_pts = np.array([0.0, 0.35 * kmax, 0.8 * kmax])
    qx_pts = np.array([-0.5 * beam.dq_perp, 0.0, 1.5 * beam.dq_perp])
    n1d = int(np.clip(12.0 * kmax / spectrum.dk_ph, 256, 4096))
    yn, yw = gauss_legendre_panels(-kmax, kmax, max(16, n1d // 16), 16)
    worst = 0.0
    for kx in kx_pts:
        pts = np.stack(
            [
                np.full((yn.size, yn.size), kx),
                np.broadcast_to(yn[:, None], (yn.size, yn.size)),
                np.broadcast_to(yn[None, :], (yn.size, yn.size)),
            ],
            axis=-1,
        )
        g_direct = float(yw @ eval_gamma_cartesian(spectrum, pts) @ yw)
        g_primary = photon_marginal_kx(spectrum, kx, quad).item()
        for qx in qx_pts:
            direct = float(psi_ini_x_sq(beam, qx + kx)) * g_direct
            primary = float(psi_ini_x_sq(beam, qx + kx)) * g_primary
            if direct > 1e-12:
                worst = max(worst, abs(primary - direct) / direct)
    return OracleReport.compare("momentum_factorization", 0.0, worst, 1e-8, n_1d=yn.size)


# ---------------------------------------------------------------------------
# suite

def run_suite(
    beam: BeamParams,
    spectrum: SpectrumModel,
    quad: QuadratureSpec = QuadratureSpec(),
    seed: int = 20260824,
    mc_samples: int = 200_000,
) -> list[OracleReport]:
    """All oracles at one parameter point; deterministic for fixed inputs."""
    reports = [
        mc_purity(beam, spectrum, n=mc_samples, seed=seed, quad=quad),
        longitudinal_term_identity(beam, spectrum, quad),
        momentum_factorization_check(beam, spectrum, quad),
    ]

    rng = np.random.default_rng(seed)
    kmin, kmax = spectrum.radial_support(quad.truncation_sigmas)
    pts = np.stack(
        [
            rng.uniform(-kmax, kmax, 100),
            rng.uniform(-kmax, kmax, 100),
            rng.uniform(-kmax, kmax, 100),
        ],
        axis=-1,
    )
    reports.append(fd_gradient_check(spectrum, pts))

    mg = momentum_grid(beam, spectrum, quad)
    reports.append(variance_from_grid(mg, "total_wavevector", beam))
    if spectrum.filter is None:
        pg = joint_position(beam, spectrum, quad)
        reports.append(variance_from_grid(pg, "relative_position", beam, spectrum))

    # Schmidt oracle on the model's own transverse marginal
    kx = np.linspace(-kmax, kmax, 512)
    span = 6.0 * beam.dq_perp + kmax
    n_q = int(np.clip(math.ceil(2.0 * span / (beam.dq_perp / 9.0)), 64, 3000))
    qx = np.linspace(-span, span, n_q)
    reports.append(schmidt_purity_1d(beam.dq_perp, lambda k: photon_marginal_kx(spectrum, k, quad), kx, qx))
    return reports
