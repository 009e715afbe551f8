"""Dual-band design targets, candidate synthesis, goal checking and
simulated-vs-measured comparison tables."""

import enum
import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .array import (
    DEFAULT_GRID_STEP_DEG,
    ISOTROPIC,
    PATCH_ELEMENT,
    GratingVerdict,
    LinearArrayConfig,
    PlanarArrayConfig,
    directivity_dbi,
    offsets_to_thetas,
    pattern_trace,
    planar_directivity_dbi,
    scan_sweep,
)
from .em import wavelength
from .network import isolation_report
from .patch import PatchGeometry, Substrate, synthesize_patch

SCHEMA_VERSION = 1

DSRC_BAND = 5.9e9
MMWAVE_BAND = 28e9

# per-band defaults: (rows, cols) layout and minimum gain in dBi
BAND_PROFILES = {
    DSRC_BAND: {"shape": (2, 2), "min_gain_dbi": 7.0, "steered": False},
    MMWAVE_BAND: {"shape": (1, 4), "min_gain_dbi": 10.0, "steered": True},
}


def _profile(frequency):
    for f, prof in BAND_PROFILES.items():
        if math.isclose(f, frequency, rel_tol=1e-9):
            return prof
    return {"shape": (1, 4), "min_gain_dbi": None, "steered": False}


@dataclass(frozen=True)
class BandGoal:
    frequency: float  # Hz
    min_gain_dbi: Optional[float] = None
    steered: bool = False

    def __post_init__(self):
        if not self.frequency > 0:
            raise ValueError(f"band frequency must be positive, got {self.frequency}")
        if self.min_gain_dbi is not None and not self.min_gain_dbi > 0:
            raise ValueError("gain goals must be positive dBi values")


@dataclass(frozen=True)
class DesignGoals:
    bands: tuple = (BandGoal(DSRC_BAND, 7.0, False), BandGoal(MMWAVE_BAND, 10.0, True))
    steering_range_deg: float = 30.0
    max_footprint_mm: tuple = (60.0, 60.0)
    min_isolation_db: float = 25.0

    def __post_init__(self):
        if not self.bands:
            raise ValueError("at least one band is required")
        if not (self.steering_range_deg > 0 and self.min_isolation_db > 0
                and all(v > 0 for v in self.max_footprint_mm)):
            raise ValueError("goal thresholds must be positive")

    @classmethod
    def for_bands(cls, frequencies, **kwargs):
        """Goals for arbitrary bands, filling per-band defaults where known."""
        bands = tuple(BandGoal(float(f), _profile(f)["min_gain_dbi"], _profile(f)["steered"])
                      for f in frequencies)
        return cls(bands=bands, **kwargs)

    def band(self, frequency):
        for b in self.bands:
            if math.isclose(b.frequency, frequency, rel_tol=1e-9):
                return b
        return None

    def to_dict(self):
        return {
            "bands": [{"frequency_hz": b.frequency, "min_gain_dbi": b.min_gain_dbi,
                       "steered": b.steered} for b in self.bands],
            "steering_range_deg": self.steering_range_deg,
            "max_footprint_mm": list(self.max_footprint_mm),
            "min_isolation_db": self.min_isolation_db,
        }

    @classmethod
    def from_dict(cls, d):
        bands = tuple(BandGoal(b["frequency_hz"], b.get("min_gain_dbi"), b.get("steered", False))
                      for b in d["bands"])
        return cls(bands=bands, steering_range_deg=d["steering_range_deg"],
                   max_footprint_mm=tuple(d["max_footprint_mm"]),
                   min_isolation_db=d["min_isolation_db"])


@dataclass(frozen=True)
class BandArray:
    """One band's patch array placed on the board.

    Columns run along x, rows along y. Each patch is ``width`` wide in x and
    ``length`` long in y. ``offset_mm`` is the lower-left corner of the
    array's element bounding box.
    """

    frequency: float
    patch: PatchGeometry
    rows: int
    cols: int
    spacing: float  # metres, centre to centre
    offset_mm: tuple = (0.0, 0.0)

    @property
    def n_elements(self):
        return self.rows * self.cols

    @property
    def is_linear(self):
        return self.rows == 1 or self.cols == 1

    def element_rects_mm(self):
        d = self.spacing * 1e3
        w = self.patch.width * 1e3
        l = self.patch.length * 1e3
        x0, y0 = self.offset_mm
        return [(x0 + c * d, y0 + r * d, x0 + c * d + w, y0 + r * d + l)
                for r in range(self.rows) for c in range(self.cols)]

    def extent_mm(self):
        rects = np.array(self.element_rects_mm())
        return (rects[:, 0].min(), rects[:, 1].min(), rects[:, 2].max(), rects[:, 3].max())

    def linear_config(self):
        """Linear array along the longer axis (x for a single row)."""
        return LinearArrayConfig(max(self.rows, self.cols), self.spacing)

    def planar_config(self):
        return PlanarArrayConfig(rows=LinearArrayConfig(self.rows, self.spacing),
                                 cols=LinearArrayConfig(self.cols, self.spacing))


@dataclass(frozen=True)
class DesignCandidate:
    substrate: Substrate
    arrays: tuple

    def footprint_mm(self):
        """(width, height) of the tight bounding box around every patch."""
        ext = np.array([a.extent_mm() for a in self.arrays])
        return (float(ext[:, 2].max() - ext[:, 0].min()), float(ext[:, 3].max() - ext[:, 1].min()))

    def to_dict(self):
        s = self.substrate
        w, h = self.footprint_mm()
        return {
            "schema_version": SCHEMA_VERSION,
            "substrate": {"epsilon_r": s.epsilon_r, "thickness_m": s.thickness,
                          "tan_delta": s.tan_delta, "mu_r": s.mu_r},
            "arrays": [{
                "frequency_hz": a.frequency,
                "patch_length_m": a.patch.length,
                "patch_width_m": a.patch.width,
                "rows": a.rows,
                "cols": a.cols,
                "spacing_m": a.spacing,
                "offset_mm": list(a.offset_mm),
            } for a in self.arrays],
            "footprint_mm": [w, h],
        }

    @classmethod
    def from_dict(cls, d):
        sd = d["substrate"]
        sub = Substrate(sd["epsilon_r"], sd["thickness_m"], sd.get("tan_delta", 0.0),
                        sd.get("mu_r", 1.0))
        arrays = tuple(BandArray(a["frequency_hz"], PatchGeometry(a["patch_length_m"],
                                                                  a["patch_width_m"], sub),
                                 a["rows"], a["cols"], a["spacing_m"], tuple(a["offset_mm"]))
                       for a in d["arrays"])
        return cls(sub, arrays)


def synthesize_candidate(goals, substrate, shapes=None, guard_gap_mm=5.0):
    """Patch and array layout for every goal band.

    Patches come from the cavity-model inverse, spacing is half a free-space
    wavelength at each band, and arrays are stacked upward in band order
    with ``guard_gap_mm`` between them. ``shapes`` maps band frequency to
    ``(rows, cols)``; unknown bands default to a 1x4 row. Compliance is not
    checked here.
    """
    if not isinstance(substrate, Substrate):
        raise TypeError("substrate must be a Substrate")
    shapes = shapes or {}
    arrays = []
    y = 0.0
    for band in goals.bands:
        f = band.frequency
        shape = next((v for k, v in shapes.items() if math.isclose(k, f, rel_tol=1e-9)),
                     _profile(f)["shape"])
        patch = synthesize_patch(f, substrate)
        arr = BandArray(f, patch, int(shape[0]), int(shape[1]), wavelength(f) / 2.0, (0.0, y))
        arrays.append(arr)
        y = arr.extent_mm()[3] + guard_gap_mm
    return DesignCandidate(substrate, tuple(arrays))


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_EVALUABLE = "not-evaluable"


@dataclass
class GoalVerdict:
    goal: str
    computed: object
    threshold: object
    verdict: Verdict
    note: str = ""

    def to_dict(self):
        d = {"goal": self.goal, "computed": self.computed, "threshold": self.threshold,
             "verdict": self.verdict.value}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class ComplianceReport:
    goals: DesignGoals
    verdicts: list = field(default_factory=list)

    @property
    def all_pass(self):
        """True when no evaluable goal failed."""
        return all(v.verdict is not Verdict.FAIL for v in self.verdicts)

    def verdict(self, goal):
        return next(v for v in self.verdicts if v.goal == goal)

    def to_dict(self):
        return {"schema_version": SCHEMA_VERSION, "goals": self.goals.to_dict(),
                "verdicts": [v.to_dict() for v in self.verdicts], "all_pass": self.all_pass}


def _band_tag(frequency):
    return f"{frequency / 1e9:g}GHz"


def steering_targets_deg(range_deg):
    return [-range_deg, -range_deg / 2, 0.0, range_deg / 2, range_deg]


def check_goals(candidate, goals, sparams=None, element=PATCH_ELEMENT,
                grid_step=DEFAULT_GRID_STEP_DEG):
    """Evaluate ``candidate`` against ``goals``.

    Gain uses lossless directivity as a proxy (rotationally symmetric cut
    for linear arrays, full-sphere integration for planar ones). Steering
    is judged on the array factor alone: every target in the range must be
    hit within one grid step with no grating lobe. Isolation can only be
    judged from measured or simulated S-parameters.
    """
    report = ComplianceReport(goals)

    w, h = candidate.footprint_mm()
    max_w, max_h = goals.max_footprint_mm
    report.verdicts.append(GoalVerdict(
        "footprint", [round(w, 6), round(h, 6)], [max_w, max_h],
        Verdict.PASS if (w <= max_w and h <= max_h) else Verdict.FAIL))

    for arr in candidate.arrays:
        band = goals.band(arr.frequency)
        if band is None:
            continue
        tag = _band_tag(arr.frequency)
        if band.min_gain_dbi is not None:
            if arr.is_linear:
                trace = pattern_trace(arr.linear_config(), arr.frequency, element, grid_step)
                d = directivity_dbi(trace)
                how = "directivity proxy, cut symmetric about the array axis"
            else:
                d = planar_directivity_dbi(arr.planar_config(), arr.frequency, element)
                how = "directivity proxy, full-sphere integration"
            report.verdicts.append(GoalVerdict(
                f"gain_{tag}", round(d, 6), band.min_gain_dbi,
                Verdict.PASS if d >= band.min_gain_dbi else Verdict.FAIL,
                f"{how}; lossless, excludes radiation efficiency"))
        if band.steered:
            config = arr.linear_config() if arr.is_linear else arr.planar_config().cols
            targets = steering_targets_deg(goals.steering_range_deg)
            rows = scan_sweep(config, arr.frequency, ISOTROPIC, offsets_to_thetas(targets),
                              grid_step)
            worst = max(abs(r.peak_error_deg) for r in rows)
            grating_free = all(r.grating is GratingVerdict.SAFE for r in rows)
            ok = worst <= grid_step and grating_free
            report.verdicts.append(GoalVerdict(
                f"steering_{tag}", round(worst, 6), grid_step,
                Verdict.PASS if ok else Verdict.FAIL,
                f"max peak error (deg) over offsets {targets}; grating-free={grating_free}"))

    if sparams is None:
        report.verdicts.append(GoalVerdict(
            "isolation", None, goals.min_isolation_db, Verdict.NOT_EVALUABLE,
            "no S-parameter data supplied"))
    else:
        rows = isolation_report(sparams, -goals.min_isolation_db)
        isolation = -max(r.worst_db for r in rows)
        report.verdicts.append(GoalVerdict(
            "isolation", round(isolation, 6), goals.min_isolation_db,
            Verdict.PASS if isolation >= goals.min_isolation_db else Verdict.FAIL,
            "worst |S_ij|, i != j, over the whole sweep"))
    return report


@dataclass(frozen=True)
class ComparisonRow:
    parameter: str
    simulated: float
    measured: float
    units: str
    delta: float  # measured - simulated


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple
    only_simulated: tuple = ()
    only_measured: tuple = ()

    def to_csv(self):
        lines = ["parameter,simulated,measured,units,delta"]
        for r in self.rows:
            lines.append(f"{r.parameter},{r.simulated:g},{r.measured:g},{r.units},{r.delta:g}")
        return "\n".join(lines) + "\n"


# tabulated values carry at most a few decimals
_DELTA_DECIMALS = 9


def _split(entry):
    if isinstance(entry, (tuple, list)):
        return float(entry[0]), str(entry[1])
    return float(entry), ""


def comparison_table(simulated, measured):
    """Join two labelled metric sets on their labels.

    Each set maps a label to ``value`` or ``(value, units)``. Rows keep the
    simulated set's order and report ``measured - simulated``.
    """
    common = [k for k in simulated if k in measured]
    if not common:
        warnings.warn("simulated and measured metric sets share no parameter", stacklevel=2)
    rows = []
    for k in common:
        sv, su = _split(simulated[k])
        mv, mu = _split(measured[k])
        rows.append(ComparisonRow(k, sv, mv, su or mu, round(mv - sv, _DELTA_DECIMALS)))
    return ComparisonTable(tuple(rows),
                           tuple(k for k in simulated if k not in measured),
                           tuple(k for k in measured if k not in simulated))


def load_metric_set(path):
    """Read ``{label: {"value": v, "units": u}}`` JSON into ``{label: (v, u)}``."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return {k: (float(v["value"]), str(v.get("units", ""))) for k, v in raw.items()}


def metrics_from_sparams(s, f_center, label, threshold_db=-10.0, port=1, decimals=6):
    """Return-loss, isolation and bandwidth figures around one band centre.

    Labels follow ``"<metric> @ <label>"``. Values are rounded to
    ``decimals`` places, the reporting precision of the tables.
    """
    s11 = np.atleast_1d(s.s_db(port, port))
    out = {f"Reflection Coefficient (S11) @ {label}":
           (round(float(np.interp(f_center, s.frequencies, s11)), decimals), "dB")}
    if s.n_ports >= 2:
        worst = max(float(np.max(s.s_db(i, j)))
                    for i in range(1, s.n_ports + 1) for j in range(1, s.n_ports + 1) if i != j)
        out[f"Isolation (S21) @ {label}"] = (round(worst, decimals), "dB")
    band = s.bands(port, threshold_db).band_containing(f_center)
    if band is not None:
        out[f"Bandwidth (-10dB) @ {label}"] = (round(band.width / 1e9, decimals), "GHz")
    return out


def _prototype_column(column):
    rows = {
        "Reflection Coefficient (S11)": ("dB", (-21.3, -20.7, -28.6, -27.9)),
        "Isolation (S21)": ("dB", (-36.8, -34.2, -38.5, -35.6)),
        "Gain": ("dBi", (7.4, 7.1, 10.8, 10.5)),
        "Radiation Efficiency": ("%", (89.0, 86.0, 91.0, 88.0)),
        "Beam Steering Range": ("deg", (30.0, 30.0, 30.0, 30.0)),
        "Bandwidth (-10dB)": ("GHz", (0.6, 0.58, 2.5, 2.45)),
    }
    out = {}
    for name, (units, vals) in rows.items():
        out[f"{name} @ 5.9 GHz"] = (vals[column], units)
        out[f"{name} @ 28 GHz"] = (vals[column + 2], units)
    return out


# Reported prototype figures, simulated and measured.
PROTOTYPE_SIMULATED = _prototype_column(0)
PROTOTYPE_MEASURED = _prototype_column(1)

# Literature comparison, kept as report metadata only.
LITERATURE_COMPARISON = {
    "columns": ["This Work", "Ref [2]", "Ref [6]", "Ref [7]"],
    "rows": {
        "Frequency Bands": ["5.9 & 28 GHz", "5.9 GHz", "5.9 GHz", "28 GHz"],
        "Bandwidth": ["500MHz(5.9 GHz); 2GHz (28GHz)", "400 MHz", "300 MHz", "1.5 GHz"],
        "Antenna Type": ["MIMO Dual-Band Array", "Single Band", "Single Band", "Phased Array"],
        "Substrate": ["Rogers RT5880", "FR4", "Rogers RT5880", "Rogers RO4003C"],
        "Beam Steering": ["Yes", "No", "Yes", ""],
        "Isolation": [">25 dB", "~20 dB", "18 dB", "22 dB"],
        "Gain": ["9.2 (5.9GHz); 14.8 dBi (28 GHz)", "6.5 dBi", "7 dBi", "8.5 dBi"],
        "Efficiency": [">85%", ">78%", ">80%", ">82%"],
        "Application": ["V2X", "DSRC V2V", "DSRC", "5G"],
    },
}
