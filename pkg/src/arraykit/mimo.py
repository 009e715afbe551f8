"""Log-det MIMO capacity and line-of-sight channels built from steering vectors."""

from dataclasses import dataclass

import numpy as np

from .em import determinant, hermitian_product, wavenumber
from .errors import DomainError, ShapeError

CAPACITY_CSV_HEADER = "theta_tx_deg,theta_rx_deg,capacity_bps_hz"


def snr_from_db(snr_db):
    """Linear SNR; ``-inf`` dB gives exactly 0."""
    return 0.0 if np.isneginf(snr_db) else float(10.0 ** (snr_db / 10.0))


def capacity_bits(h, rho):
    """Equal-power capacity ``log2 det(I + rho/Nt * H H^H)`` in bit/s/Hz.

    ``h`` is ``Nr x Nt`` (a 1-D input is a single-antenna receiver row) and
    ``rho`` the linear SNR.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim == 1:
        h = h[None, :]
    if h.ndim != 2 or 0 in h.shape:
        raise ShapeError(f"channel must be a non-empty Nr x Nt matrix, got {h.shape}")
    if not rho >= 0:
        raise DomainError(f"SNR must be non-negative, got {rho}")
    if not np.all(np.isfinite(h)):
        raise DomainError("channel entries must be finite")
    n_r, n_t = h.shape
    m = np.eye(n_r) + (rho / n_t) * hermitian_product(h)
    det = determinant(m).real
    # det(I + PSD) >= 1 analytically; clamp round-off below it
    return max(0.0, float(np.log2(det)))


def steering_vector(config, frequency, theta):
    """Unit-modulus phases ``exp(j n k d cos(theta))`` of a linear array."""
    n = np.arange(config.n_elements)
    return np.exp(1j * n * wavenumber(frequency) * config.spacing * np.cos(theta))


def los_channel(tx, rx, frequency, theta_tx, theta_rx):
    """Rank-one LoS channel ``a_rx(theta_rx) a_tx(theta_tx)^H`` with unit path gain."""
    a_t = steering_vector(tx, frequency, theta_tx)
    a_r = steering_vector(rx, frequency, theta_rx)
    return np.outer(a_r, a_t.conj())


def matched_beamforming_gain(config, frequency, theta, theta_weights=None):
    """Array power gain ``|a(theta)^H w|^2`` for unit-norm weights ``w = a(theta_w)/sqrt(N)``.

    With ``theta_weights`` omitted the weights are matched and the gain is N.
    """
    if not config.is_uniform:
        raise DomainError("matched beamforming gain is defined for uniform amplitudes")
    if theta_weights is None:
        theta_weights = theta
    a = steering_vector(config, frequency, theta)
    w = steering_vector(config, frequency, theta_weights) / np.sqrt(config.n_elements)
    return float(abs(np.vdot(a, w)) ** 2)


@dataclass(frozen=True)
class CapacityPoint:
    theta_tx_deg: float
    theta_rx_deg: float
    capacity: float


def capacity_sweep(tx, rx, frequency, theta_grid, rho):
    """LoS capacity for every (theta_tx, theta_rx) pair drawn from ``theta_grid`` (rad)."""
    out = []
    for t_tx in theta_grid:
        for t_rx in theta_grid:
            h = los_channel(tx, rx, frequency, t_tx, t_rx)
            out.append(CapacityPoint(float(np.degrees(t_tx)), float(np.degrees(t_rx)),
                                     capacity_bits(h, rho)))
    return out


def capacity_sweep_csv(points):
    lines = [CAPACITY_CSV_HEADER]
    lines += [f"{p.theta_tx_deg:.6f},{p.theta_rx_deg:.6f},{p.capacity:.6f}" for p in points]
    return "\n".join(lines) + "\n"
