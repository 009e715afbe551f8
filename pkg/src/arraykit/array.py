"""Linear and planar array factors, beam steering and pattern metrics.

All angles passed to the computational functions are in radians using the
from-array-axis convention (broadside at ``pi/2``), unless the name says
``_deg``. :class:`PatternTrace` stores its grid in degrees because that is
what the CSV/SVG outputs and the metric functions report.
"""

import enum
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .em import axis_to_broadside, broadside_to_axis, db_amplitude, wavelength, wavenumber
from .errors import BeamwidthUndefinedError, DegeneratePatternError, DomainError

HALF_POWER_DB = 10.0 * np.log10(0.5)  # -3.0103 dB
DEFAULT_GRID_STEP_DEG = 0.1


@dataclass(frozen=True)
class LinearArrayConfig:
    """Uniformly spaced linear array.

    ``beta`` is the progressive phase (rad) added per element step, so
    element ``n`` is excited with ``amplitudes[n] * exp(j*n*beta)``.
    """

    n_elements: int
    spacing: float  # metres
    amplitudes: Optional[tuple] = None
    beta: float = 0.0

    def __post_init__(self):
        if int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise DomainError(f"n_elements must be a positive integer, got {self.n_elements}")
        if not self.spacing > 0:
            raise DomainError(f"spacing must be positive, got {self.spacing}")
        amps = (1.0,) * self.n_elements if self.amplitudes is None else tuple(
            float(a) for a in self.amplitudes)
        if len(amps) != self.n_elements:
            raise DomainError(f"expected {self.n_elements} amplitudes, got {len(amps)}")
        if any(a < 0 or not np.isfinite(a) for a in amps):
            raise DomainError("amplitudes must be finite and non-negative")
        if not any(a > 0 for a in amps):
            raise DegeneratePatternError("all element amplitudes are zero")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def is_uniform(self):
        return len(set(self.amplitudes)) == 1

    def steered(self, frequency, theta0):
        """Copy of this config with ``beta`` set to steer the beam to ``theta0``."""
        return replace(self, beta=steering_phase(self.spacing, frequency, theta0))


@dataclass(frozen=True)
class PlanarArrayConfig:
    """Rectangular grid as the product of two linear arrays.

    ``cols`` runs along x (one element per column), ``rows`` along y.
    """

    rows: LinearArrayConfig
    cols: LinearArrayConfig

    @property
    def n_elements(self):
        return self.rows.n_elements * self.cols.n_elements


@dataclass(frozen=True)
class ElementPattern:
    """Element field magnitude ``cos(offset)**q`` where ``offset`` is the
    angle from the element's broadside, zero behind the ground plane.
    ``q = 0`` is the isotropic element."""

    q: float = 1.0

    def __post_init__(self):
        if not self.q >= 0:
            raise DomainError(f"element exponent must be >= 0, got {self.q}")

    @property
    def kind(self):
        return "isotropic" if self.q == 0 else "cosine_power"

    def magnitude_offset(self, offset):
        c = np.clip(np.cos(offset), 0.0, None)
        return c ** self.q

    def magnitude(self, theta):
        """Magnitude at from-array-axis angle ``theta``."""
        return self.magnitude_offset(axis_to_broadside(np.asarray(theta, dtype=float)))


ISOTROPIC = ElementPattern(0.0)
PATCH_ELEMENT = ElementPattern(1.0)


@dataclass(frozen=True, eq=False)
class PatternTrace:
    """Peak-normalised pattern cut over ``[0, 180]`` degrees from the array axis."""

    theta_deg: np.ndarray
    magnitude_db: np.ndarray
    frequency: Optional[float] = None
    description: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        th = np.asarray(self.theta_deg, dtype=float)
        db = np.asarray(self.magnitude_db, dtype=float)
        if th.ndim != 1 or th.shape != db.shape or th.size < 3:
            raise DomainError("trace needs matching 1-D angle and magnitude arrays (>= 3 points)")
        if np.any(np.diff(th) <= 0):
            raise DomainError("trace angles must be strictly increasing")
        if abs(th[0]) > 1e-9 or abs(th[-1] - 180.0) > 1e-9:
            raise DomainError("trace must cover [0, 180] degrees")
        if abs(db.max()) > 1e-9:
            raise DomainError("trace must be peak-normalised to 0 dB")
        object.__setattr__(self, "theta_deg", th)
        object.__setattr__(self, "magnitude_db", db)

    @classmethod
    def from_magnitude(cls, theta_deg, magnitude, **kwargs):
        """Build a trace from linear field magnitudes (any scale)."""
        mag = np.abs(np.asarray(magnitude, dtype=float))
        peak = mag.max() if mag.size else 0.0
        if not peak > 0:
            raise DegeneratePatternError("pattern is identically zero")
        return cls(np.asarray(theta_deg, dtype=float), db_amplitude(mag / peak), **kwargs)

    @property
    def step_deg(self):
        return float(np.median(np.diff(self.theta_deg)))

    @property
    def intensity(self):
        """Normalised radiation intensity (linear power, peak 1)."""
        return 10.0 ** (self.magnitude_db / 10.0)

    def to_csv(self):
        lines = ["theta_deg,magnitude_db"]
        lines += [f"{t:.6f},{m:.6f}" for t, m in zip(self.theta_deg, self.magnitude_db)]
        return "\n".join(lines) + "\n"


def angle_grid_deg(step_deg=DEFAULT_GRID_STEP_DEG):
    """Uniform grid over [0, 180] deg with spacing no larger than ``step_deg``."""
    if not 0 < step_deg <= 5.0:
        raise DomainError(f"grid step must be in (0, 5] degrees, got {step_deg}")
    n = int(np.ceil(180.0 / step_deg - 1e-9))
    return np.linspace(0.0, 180.0, n + 1)


def steering_phase(spacing, frequency, theta0):
    """Progressive phase ``beta = -k d cos(theta0)`` that puts the main lobe at ``theta0``."""
    return -(wavenumber(frequency) * spacing * np.cos(theta0))


def array_factor(config, frequency, theta):
    """Complex array factor ``sum_n a_n exp(j n (k d cos(theta) + beta))``.

    Vectorised over ``theta``.
    """
    theta = np.asarray(theta, dtype=float)
    psi = wavenumber(frequency) * config.spacing * np.cos(theta) + config.beta
    n = np.arange(config.n_elements)
    amps = np.asarray(config.amplitudes)
    af = np.exp(1j * np.multiply.outer(psi, n)) @ amps
    return complex(af) if af.ndim == 0 else af


def pattern_trace(config, frequency, element=PATCH_ELEMENT, grid_step=DEFAULT_GRID_STEP_DEG,
                  description=""):
    """Sample ``|AF| * element`` over [0, 180] deg and normalise the peak to 0 dB."""
    theta_deg = angle_grid_deg(grid_step)
    theta = np.radians(theta_deg)
    mag = np.abs(array_factor(config, frequency, theta)) * element.magnitude(theta)
    if not description:
        description = (f"N={config.n_elements} d={config.spacing / wavelength(frequency):.4g}lambda "
                       f"beta={config.beta:.6g}rad element={element.kind}(q={element.q:g})")
    return PatternTrace.from_magnitude(theta_deg, mag, frequency=float(frequency),
                                       description=description)


@dataclass(frozen=True)
class Lobe:
    index: int
    angle_deg: float
    level_db: float


def _refine(trace, i):
    # parabolic interpolation through the three samples around index i
    th, y = trace.theta_deg, trace.magnitude_db
    if i == 0 or i == len(y) - 1:
        return float(th[i]), float(y[i])
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom >= 0:
        return float(th[i]), float(y1)
    p = 0.5 * (y0 - y2) / denom
    half_step = 0.5 * (th[i + 1] - th[i - 1])
    return float(th[i] + p * half_step), float(y1 - 0.25 * (y0 - y2) * p)


def find_lobes(trace):
    """All local maxima of the trace, grid endpoints included, refined."""
    y = trace.magnitude_db
    idx = []
    if y[0] > y[1]:
        idx.append(0)
    inner = np.where((y[1:-1] >= y[:-2]) & (y[1:-1] > y[2:]))[0] + 1
    idx.extend(int(i) for i in inner)
    if y[-1] > y[-2]:
        idx.append(len(y) - 1)
    return [Lobe(i, *_refine(trace, i)) for i in idx]


def _main_lobe_span(trace):
    y = trace.magnitude_db
    peak = int(np.argmax(y))
    lo = peak
    while lo > 0 and y[lo - 1] <= y[lo]:
        lo -= 1
    hi = peak
    while hi < len(y) - 1 and y[hi + 1] <= y[hi]:
        hi += 1
    return peak, lo, hi


def main_lobe_direction(trace):
    """Direction (deg from the array axis) of the global maximum.

    Ties go to the smallest angle; the sample is then refined by a parabola.
    """
    peak = int(np.argmax(trace.magnitude_db))
    return _refine(trace, peak)[0]


def half_power_beamwidth(trace):
    """Width in degrees between the half-power crossings around the main lobe."""
    th, y = trace.theta_deg, trace.magnitude_db
    peak = int(np.argmax(y))
    level = y[peak] + HALF_POWER_DB

    j = peak
    while j > 0 and y[j] >= level:
        j -= 1
    if y[j] >= level:
        raise BeamwidthUndefinedError("main lobe reaches the lower grid boundary above -3 dB")
    left = th[j] + (level - y[j]) / (y[j + 1] - y[j]) * (th[j + 1] - th[j])

    j = peak
    while j < len(y) - 1 and y[j] >= level:
        j += 1
    if y[j] >= level:
        raise BeamwidthUndefinedError("main lobe reaches the upper grid boundary above -3 dB")
    right = th[j - 1] + (level - y[j - 1]) / (y[j] - y[j - 1]) * (th[j] - th[j - 1])
    return float(right - left)


def sidelobes(trace):
    """Lobes separated from the main lobe by a null or local minimum."""
    _, lo, hi = _main_lobe_span(trace)
    return [lobe for lobe in find_lobes(trace) if lobe.index < lo or lobe.index > hi]


def sidelobe_level(trace):
    """Highest sidelobe in dB relative to the peak, or ``None`` if there is none."""
    lobes = sidelobes(trace)
    if not lobes:
        return None
    return max(lobe.level_db for lobe in lobes)


class GratingVerdict(str, enum.Enum):
    SAFE = "safe"
    GRATING = "grating"


def grating_lobe_check(spacing, frequency, theta0):
    """``SAFE`` iff ``d/lambda < 1/(1 + |cos(theta0)|)``; equality counts as grating."""
    ratio = spacing / wavelength(frequency)
    limit = 1.0 / (1.0 + abs(np.cos(theta0)))
    return GratingVerdict.SAFE if ratio < limit else GratingVerdict.GRATING


def directivity_dbi(trace):
    """Directivity of a cut assumed rotationally symmetric about the array axis.

    ``D = 4*pi*U_max / (2*pi * int U sin(theta) dtheta)``. The isotropic
    reference integral is evaluated with the same trapezoid rule, so a flat
    trace gives exactly 0 dBi.
    """
    th = np.radians(trace.theta_deg)
    u = trace.intensity
    s = np.sin(th)
    total = np.trapezoid(u * s, th)
    if not total > 0:
        raise DegeneratePatternError("pattern has no power off the array axis")
    d = u.max() * np.trapezoid(s, th) / total
    return float(10.0 * np.log10(d))


def planar_pattern(config, frequency, element, theta, phi):
    """Field magnitude of a planar array, separable product model.

    Here ``theta`` is the polar angle from the array normal and ``phi`` the
    azimuth from the x (column) axis, both in radians. The element pattern
    is taken relative to the normal.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    cos_x = np.sin(theta) * np.cos(phi)
    cos_y = np.sin(theta) * np.sin(phi)
    af_x = np.abs(array_factor(config.cols, frequency, np.arccos(np.clip(cos_x, -1, 1))))
    af_y = np.abs(array_factor(config.rows, frequency, np.arccos(np.clip(cos_y, -1, 1))))
    out = af_x * af_y * element.magnitude_offset(theta)
    return float(out) if out.ndim == 0 else out


def planar_directivity_dbi(config, frequency, element=PATCH_ELEMENT, n_theta=721, n_phi=1441):
    """Directivity of a planar array by trapezoid integration over the sphere."""
    theta = np.linspace(0.0, np.pi, n_theta)
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    u = planar_pattern(config, frequency, element, tt, pp) ** 2
    inner = np.trapezoid(u, phi, axis=1)
    total = np.trapezoid(inner * np.sin(theta), theta)
    if not total > 0:
        raise DegeneratePatternError("planar pattern is identically zero")
    return float(10.0 * np.log10(4.0 * np.pi * u.max() / total))


@dataclass(frozen=True)
class ScanRow:
    theta0_deg: float
    offset_deg: float
    beta: float
    peak_deg: float
    peak_error_deg: float
    sll_db: Optional[float]
    hpbw_deg: Optional[float]
    grating: GratingVerdict


SCAN_CSV_HEADER = "theta0_deg,steer_offset_deg,beta_rad,peak_deg,peak_error_deg,sll_db,hpbw_deg,grating"


def scan_sweep(config, frequency, element, theta0_list, grid_step=DEFAULT_GRID_STEP_DEG):
    """Steer ``config`` to each target and tabulate the resulting pattern metrics.

    Targets are from-array-axis angles in radians. Missing sidelobes or an
    undefined beamwidth show up as ``None`` in the row.
    """
    rows = []
    for theta0 in theta0_list:
        if not 0.0 <= theta0 <= np.pi:
            raise DomainError(f"steering target {theta0} rad outside [0, pi]")
        steered = config.steered(frequency, theta0)
        trace = pattern_trace(steered, frequency, element, grid_step)
        peak = main_lobe_direction(trace)
        try:
            hpbw = half_power_beamwidth(trace)
        except BeamwidthUndefinedError:
            hpbw = None
        theta0_deg = float(np.degrees(theta0))
        rows.append(ScanRow(
            theta0_deg=theta0_deg,
            offset_deg=float(np.degrees(axis_to_broadside(theta0))),
            beta=float(steered.beta),
            peak_deg=peak,
            peak_error_deg=peak - theta0_deg,
            sll_db=sidelobe_level(trace),
            hpbw_deg=hpbw,
            grating=grating_lobe_check(config.spacing, frequency, theta0),
        ))
    return rows


def scan_rows_to_csv(rows):
    def fmt(v):
        return "" if v is None else f"{v:.6f}"

    lines = [SCAN_CSV_HEADER]
    for r in rows:
        lines.append(",".join([fmt(r.theta0_deg), fmt(r.offset_deg), fmt(r.beta), fmt(r.peak_deg),
                               fmt(r.peak_error_deg), fmt(r.sll_db), fmt(r.hpbw_deg),
                               r.grating.value]))
    return "\n".join(lines) + "\n"


def offsets_to_thetas(offsets_deg):
    """Broadside-offset steering angles in degrees to from-array-axis radians."""
    return [float(broadside_to_axis(np.radians(o))) for o in offsets_deg]
