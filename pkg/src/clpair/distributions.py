"""Joint probability distributions along the transverse x direction.

Three observables:

* the photon transverse-momentum marginal G(k_x), the spectral density
  integrated over (k_y, k_z);
* the joint momentum density P(q_x, k_x), which factorizes into the
  initial electron momentum density at q_x + k_x times G(k_x);
* the joint position density P(x_el, x_ph), a Gaussian envelope in x_el
  times a Fourier-type transform over x_el - x_ph of the two-point
  spectral kernel M(k_x, k_x').

All densities integrate to one (checked by construction helpers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError, ResolutionError
from .measures import rel_pos_variance_closed
from .model import (
    BeamParams,
    QuadratureSpec,
    SpectrumModel,
    ZeroPhase,
    eval_g,
    eval_gamma,
    psi_ini_x_sq,
)
from .quadrature import gauss_legendre_panels

TWO_PI = 2.0 * math.pi
ANGULAR_NORM = 15.0 / (8.0 * math.pi)


@dataclass(frozen=True)
class JointGrid:
    """A 2D probability density sampled on a rectangular grid.

    `axis1`/`axis2` are sorted sample positions; `density[i, j]` is the
    density at (axis1[i], axis2[j]). Units: um^-1 axes give um^2
    density, um axes give um^-2 density.
    """

    axis1: np.ndarray
    axis2: np.ndarray
    density: np.ndarray
    axis1_name: str = "axis1"
    axis2_name: str = "axis2"

    def __post_init__(self):
        a1, a2, d = map(np.asarray, (self.axis1, self.axis2, self.density))
        if d.shape != (a1.size, a2.size):
            raise DomainError("density shape must be (len(axis1), len(axis2))")
        if np.any(np.diff(a1) <= 0) or np.any(np.diff(a2) <= 0):
            raise DomainError("grid axes must be strictly increasing")
        if np.any(d < 0.0):
            raise DomainError("density must be non-negative")

    def integral(self) -> float:
        """Trapezoidal double integral of the density."""
        return float(np.trapezoid(np.trapezoid(self.density, self.axis2, axis=1), self.axis1))

    def moments(self, combine) -> tuple[float, float]:
        """Mean and variance of combine(axis1, axis2) under the density."""
        v = combine(self.axis1[:, None], self.axis2[None, :])
        norm = self.integral()
        mean = float(np.trapezoid(np.trapezoid(self.density * v, self.axis2, axis=1), self.axis1)) / norm
        second = float(np.trapezoid(np.trapezoid(self.density * v**2, self.axis2, axis=1), self.axis1)) / norm
        return mean, second - mean**2


def _check_normalized(grid: JointGrid, what: str, tol: float = 0.01) -> JointGrid:
    total = grid.integral()
    if abs(total - 1.0) > tol:
        raise ConsistencyError(f"{what} integrates to {total:.6f}, outside 1 +/- {tol}")
    return grid


# ---------------------------------------------------------------------------
# photon transverse-momentum marginal

def photon_marginal_kx(spectrum: SpectrumModel, kx, quad: QuadratureSpec = QuadratureSpec()) -> np.ndarray:
    """Marginal G(k_x) (um) of the spectral density over (k_y, k_z).

    In polar coordinates (rho, beta) on the (k_y, k_z) plane the beta
    integral of the angular profile is elementary, leaving a 1D radial
    integral recast in k = sqrt(kx^2 + rho^2):

        G(kx) = (15/8) int k g(k) [p/k^2 - (3/4) p^2/k^4] dk,
        p = k^2 - kx^2.

    For a filtered spectrum the beta integral is done numerically.
    """
    kx = np.atleast_1d(np.asarray(kx, dtype=float))
    kmin, kmax = spectrum.radial_support(quad.truncation_sigmas)
    out = np.zeros_like(kx)
    live = np.abs(kx) < kmax
    if not np.any(live):
        return out if out.shape else float(out)
    kxl = np.abs(kx[live])
    lo = np.maximum(kmin, kxl)
    # per-point Gauss-Legendre nodes mapped onto [lo, kmax]
    base_n, base_w = gauss_legendre_panels(0.0, 1.0, 8, 16)
    kk = lo[:, None] + (kmax - lo)[:, None] * base_n[None, :]
    ww = (kmax - lo)[:, None] * base_w[None, :]
    p = kk**2 - kxl[:, None] ** 2
    if spectrum.filter is None:
        vals = (15.0 / 8.0) * kk * eval_g(spectrum, kk) * (p / kk**2 - 0.75 * p**2 / kk**4)
        out[live] = np.sum(ww * vals, axis=1)
    else:
        bn, bw = gauss_legendre_panels(0.0, math.pi / 2.0, 4, 16)
        rho = np.sqrt(np.maximum(p, 0.0))
        # theta from cos(theta) = rho sin(beta) / k; quadrant folded x4
        ct = np.clip(rho[:, :, None] * np.sin(bn)[None, None, :] / kk[:, :, None], -1.0, 1.0)
        theta = np.arccos(ct)
        gam = eval_gamma(spectrum, kk[:, :, None], theta)
        beta_int = 4.0 * np.sum(bw[None, None, :] * gam, axis=2)
        out[live] = np.sum(ww * kk * beta_int, axis=1)
    return out


# ---------------------------------------------------------------------------
# joint momentum distribution

def joint_momentum(beam: BeamParams, spectrum: SpectrumModel, qx, kx, quad: QuadratureSpec = QuadratureSpec()) -> np.ndarray:
    """Joint density P(q_x, k_x) (um^2): electron momentum envelope at
    q_x + k_x times the photon marginal; independent of the phase."""
    qx = np.asarray(qx, dtype=float)
    kxa = np.asarray(kx, dtype=float)
    return psi_ini_x_sq(beam, qx + kxa) * photon_marginal_kx(spectrum, kxa, quad)


def momentum_grid(
    beam: BeamParams,
    spectrum: SpectrumModel,
    quad: QuadratureSpec = QuadratureSpec(),
    n_kx: int = 512,
) -> JointGrid:
    """P(q_x, k_x) on a grid covering the support of both factors."""
    if n_kx < 64:
        raise ResolutionError("n_kx must be at least 64")
    _, kmax = spectrum.radial_support(quad.truncation_sigmas)
    kxg = np.linspace(-kmax, kmax, n_kx)
    sig = beam.dq_perp
    span = kmax + 6.0 * sig
    n_q = int(np.clip(math.ceil(2.0 * span / (sig / 8.0)), 65, 4001))
    qxg = np.linspace(-span, span, n_q)
    dens = joint_momentum(beam, spectrum, qxg[:, None], kxg[None, :], quad)
    return _check_normalized(
        JointGrid(qxg, kxg, dens, axis1_name="qx_um_inv", axis2_name="kx_um_inv"),
        "joint momentum grid",
    )


# ---------------------------------------------------------------------------
# joint position distribution

def _position_kernel(beam: BeamParams, spectrum: SpectrumModel, kxg: np.ndarray, quad: QuadratureSpec,
                     n_rho: int = 48, n_beta: int = 24) -> np.ndarray:
    """Symmetric kernel M(k_x, k_x') on the given k_x grid (um^2 entries).

    M = int dk_y dk_z sqrt(Gamma(k) Gamma(k')) exp(-(c/v)^2 (k-k')^2 /
    (8 dq_par^2)) with k' sharing (k_y, k_z). Evaluated per unordered
    pair of |k_x| values (M is even and symmetric) in polar (rho, beta)
    coordinates.
    """
    kmin, kmax = spectrum.radial_support(quad.truncation_sigmas)
    ax = np.unique(np.abs(kxg))
    na = ax.size
    ii, jj = np.triu_indices(na)
    a = ax[ii]  # |kx|  <= |kx'|
    b = ax[jj]
    lo2 = np.maximum(0.0, kmin**2 - a**2)
    hi2 = np.maximum(lo2, kmax**2 - b**2)
    rn, rw = gauss_legendre_panels(0.0, 1.0, max(1, n_rho // 16), 16)
    bn, bw = gauss_legendre_panels(0.0, math.pi / 2.0, max(1, n_beta // 8), 8)
    sb2 = np.sin(bn) ** 2
    vals = np.zeros(a.size)
    chunk = 4096
    for s in range(0, a.size, chunk):
        sl = slice(s, min(s + chunk, a.size))
        lo = np.sqrt(lo2[sl])[:, None]
        hi = np.sqrt(hi2[sl])[:, None]
        rho = lo + (hi - lo) * rn[None, :]
        wr = (hi - lo) * rw[None, :]
        k = np.sqrt(a[sl][:, None] ** 2 + rho**2)
        kp = np.sqrt(b[sl][:, None] ** 2 + rho**2)
        radial = (
            np.sqrt(eval_g(spectrum, k) * eval_g(spectrum, kp))
            * np.exp(-beam.c_over_vz**2 * (k - kp) ** 2 / (8.0 * beam.dq_par**2))
            * ANGULAR_NORM
            * rho**3
            / (k * kp)
        )
        c2 = (rho[:, :, None] / k[:, :, None]) ** 2 * sb2[None, None, :]
        c2p = (rho[:, :, None] / kp[:, :, None]) ** 2 * sb2[None, None, :]
        ang = 4.0 * np.sum(
            bw[None, None, :] * sb2[None, None, :] * np.sqrt(np.maximum((1.0 - c2) * (1.0 - c2p), 0.0)),
            axis=2,
        )
        vals[sl] = np.sum(wr * radial * ang, axis=1)
    msym = np.zeros((na, na))
    msym[ii, jj] = vals
    msym[jj, ii] = vals
    # expand from |kx| half-axis back to the signed grid
    idx = np.searchsorted(ax, np.abs(kxg))
    m = msym[np.ix_(idx, idx)]

    # diagonal consistency: M(kx, kx) must reproduce the marginal G(kx)
    diag = np.diagonal(m)
    g_ref = photon_marginal_kx(spectrum, kxg, quad)
    scale = float(np.max(g_ref))
    if scale > 0.0 and float(np.max(np.abs(diag - g_ref))) > 1e-8 * scale:
        raise ConsistencyError("position kernel diagonal disagrees with the photon marginal")
    if float(np.max(np.abs(m - m.T))) > 1e-10:
        raise ConsistencyError("position kernel is not symmetric")
    return m


def joint_position(
    beam: BeamParams,
    spectrum: SpectrumModel,
    quad: QuadratureSpec = QuadratureSpec(),
    n_kx: int = 512,
    n_x_el: int = 141,
) -> JointGrid:
    """P(x_el, x_ph) (um^-2) with the photonic phase neglected.

    Gaussian envelope (dq_perp / sqrt(2 pi^3)) exp(-2 dq_perp^2 x_el^2)
    times T(x_el - x_ph), the double cosine transform of the kernel
    M(k_x, k_x'). M is precomputed on a uniform k_x grid; T is summed
    over the kernel's anti-diagonals (uniform spacing makes k_x - k_x'
    take only 2 n - 1 values).
    """
    if spectrum.filter is not None:
        raise DomainError("joint position distribution requires the unfiltered model")
    _, kmax = spectrum.radial_support(quad.truncation_sigmas)
    # midpoint grid: symmetric, uniform, excludes the exact endpoints
    dkx = 2.0 * kmax / n_kx
    kxg = -kmax + (np.arange(n_kx) + 0.5) * dkx
    m = _position_kernel(beam, spectrum, kxg, quad)

    # anti-diagonal sums: T(s) = sum_m C_m cos(m dkx s)
    mw = m * dkx**2
    c = np.array([np.trace(mw, offset=off) for off in range(-(n_kx - 1), n_kx)])
    modes = np.arange(-(n_kx - 1), n_kx) * dkx

    sig_el = 1.0 / (2.0 * beam.dq_perp)
    sig_t = math.sqrt(rel_pos_variance_closed(beam, spectrum, ZeroPhase()))
    # both axes live on a common lattice of pitch h so every difference
    # x_el - x_ph is itself a lattice point; T is evaluated once per lag
    h = min(sig_el, sig_t) / 10.0
    m_el = max(1, int(sig_el / (10.0 * h)))
    m_ph = max(1, int(sig_t / (10.0 * h)))
    i_el = max(n_x_el // 2, math.ceil(7.0 * sig_el / (m_el * h)))
    i_ph = math.ceil((7.0 * sig_el + 7.0 * sig_t) / (m_ph * h))
    x_el = np.arange(-i_el, i_el + 1) * (m_el * h)
    x_ph = np.arange(-i_ph, i_ph + 1) * (m_ph * h)
    lag_max = i_el * m_el + i_ph * m_ph
    lags = np.arange(-lag_max, lag_max + 1)
    t_lat = np.cos(np.multiply.outer(lags * h, modes)) @ c
    lag_idx = (np.arange(-i_el, i_el + 1)[:, None] * m_el - np.arange(-i_ph, i_ph + 1)[None, :] * m_ph) + lag_max
    t = t_lat[lag_idx]
    dens = (beam.dq_perp / math.sqrt(2.0 * math.pi**3)) * np.exp(-2.0 * beam.dq_perp**2 * x_el[:, None] ** 2) * t
    floor = float(np.min(dens))
    if floor < -1e-9:
        raise ConsistencyError(f"joint position density has negative values down to {floor:.3e}")
    dens = np.maximum(dens, 0.0)
    return _check_normalized(
        JointGrid(x_el, x_ph, dens, axis1_name="x_el_um", axis2_name="x_ph_um"),
        "joint position grid",
    )
