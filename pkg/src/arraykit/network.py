"""Reflection coefficient, return-loss bandwidth and port isolation."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .em import db_amplitude
from .errors import ActiveNetworkError, DomainError, ShapeError, SingularityError

_PASSIVE_TOL = 1e-9


def reflection_coefficient(z_in, z0=50.0):
    """``Gamma = (Z_in - Z0) / (Z_in + Z0)``."""
    z_in = complex(z_in)
    denom = z_in + z0
    if denom == 0:
        raise SingularityError(f"Z_in = {z_in} is the negative of Z0 = {z0}")
    return (z_in - z0) / denom


def s11_db(gamma):
    """Return loss form ``20*log10|Gamma|``, floored at -200 dB."""
    mag = np.abs(np.asarray(gamma))
    if np.any(mag > 1.0 + _PASSIVE_TOL):
        raise ActiveNetworkError(f"|Gamma| = {np.max(mag):.6g} exceeds 1")
    return db_amplitude(mag)


@dataclass(frozen=True)
class Band:
    f_low: float
    f_high: float
    truncated_low: bool = False
    truncated_high: bool = False

    @property
    def width(self):
        return self.f_high - self.f_low

    @property
    def center(self):
        return 0.5 * (self.f_low + self.f_high)

    def contains(self, f):
        return self.f_low <= f <= self.f_high


@dataclass(frozen=True)
class BandReport:
    bands: tuple
    threshold_db: float

    def band_containing(self, f) -> Optional[Band]:
        for band in self.bands:
            if band.contains(f):
                return band
        return None


def extract_bands(frequencies, values_db, threshold_db=-10.0):
    """Maximal frequency intervals where the trace is strictly below ``threshold_db``.

    The trace is treated as piecewise linear between samples. A band that
    touches the first or last sample is clipped there and flagged as
    truncated, since the real band may extend beyond the sweep.
    """
    f = np.asarray(frequencies, dtype=float)
    y = np.asarray(values_db, dtype=float)
    if f.ndim != 1 or f.shape != y.shape:
        raise ShapeError("frequencies and values must be matching 1-D sequences")
    if f.size < 2:
        raise DomainError("need at least two sweep points")
    if np.any(np.diff(f) <= 0):
        raise DomainError("sweep frequencies must be strictly increasing")

    below = y < threshold_db
    bands = []
    i = 0
    n = len(f)
    while i < n:
        if not below[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and below[j + 1]:
            j += 1
        if i == 0:
            lo, trunc_lo = f[0], True
        else:
            lo = _crossing(f[i - 1], f[i], y[i - 1], y[i], threshold_db)
            trunc_lo = False
        if j == n - 1:
            hi, trunc_hi = f[-1], True
        else:
            hi = _crossing(f[j], f[j + 1], y[j], y[j + 1], threshold_db)
            trunc_hi = False
        bands.append(Band(float(lo), float(hi), trunc_lo, trunc_hi))
        i = j + 1
    return BandReport(tuple(bands), float(threshold_db))


def _crossing(f0, f1, y0, y1, level):
    return f0 + (level - y0) / (y1 - y0) * (f1 - f0)


@dataclass(frozen=True, eq=False)
class SParameterSet:
    """Multi-port scattering data: ``data[k, i, j]`` is S_(i+1)(j+1) at ``frequencies[k]``."""

    frequencies: np.ndarray  # Hz
    data: np.ndarray
    z0: float = 50.0

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        d = np.asarray(self.data, dtype=complex)
        if f.ndim != 1 or f.size == 0:
            raise ShapeError("frequencies must be a non-empty 1-D array")
        if d.ndim != 3 or d.shape[0] != f.size or d.shape[1] != d.shape[2]:
            raise ShapeError(f"data must have shape (n_freq, n, n), got {d.shape}")
        if np.any(np.diff(f) <= 0):
            raise DomainError("frequencies must be strictly increasing")
        if not np.all(np.isfinite(d)):
            raise DomainError("S-parameters must be finite")
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "data", d)

    @property
    def n_ports(self):
        return self.data.shape[1]

    def s(self, i, j):
        """Complex trace of S_ij, 1-based port numbers."""
        return self.data[:, i - 1, j - 1]

    def s_db(self, i, j):
        return db_amplitude(self.s(i, j))

    def bands(self, port=1, threshold_db=-10.0):
        return extract_bands(self.frequencies, self.s_db(port, port), threshold_db)


@dataclass(frozen=True)
class IsolationVerdict:
    port_i: int
    port_j: int
    band: tuple  # (f_low, f_high) in Hz
    worst_db: float
    worst_frequency: float
    passed: bool


def isolation_report(s, threshold_db=-25.0, bands=None):
    """Worst-case ``|S_ij|`` in dB for every ordered port pair ``i != j``.

    ``bands`` is an optional list of ``(f_low, f_high)`` windows; the whole
    sweep is used otherwise. A pair passes when its worst value is at or
    below ``threshold_db``.
    """
    if s.n_ports < 2:
        raise DomainError("isolation needs at least two ports")
    if bands is None:
        bands = [(float(s.frequencies[0]), float(s.frequencies[-1]))]
    out = []
    for lo, hi in bands:
        mask = (s.frequencies >= lo) & (s.frequencies <= hi)
        if not np.any(mask):
            raise DomainError(f"no sweep points inside band ({lo}, {hi})")
        freqs = s.frequencies[mask]
        for i in range(1, s.n_ports + 1):
            for j in range(1, s.n_ports + 1):
                if i == j:
                    continue
                vals = np.atleast_1d(s.s_db(i, j))[mask]
                k = int(np.argmax(vals))
                worst = float(vals[k])
                out.append(IsolationVerdict(i, j, (float(lo), float(hi)), worst,
                                            float(freqs[k]), worst <= threshold_db))
    return out

