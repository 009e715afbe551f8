"""``arraykit`` command line front end.

Exit codes: 0 success / all goals pass, 1 goal failure, 2 input error,
3 degenerate computation, 4 Touchstone parse error.
"""

import argparse
import json
import math
import os
import re
import sys
import tempfile
import time

import numpy as np

from . import __version__
from .array import (
    DEFAULT_GRID_STEP_DEG,
    ElementPattern,
    LinearArrayConfig,
    directivity_dbi,
    grating_lobe_check,
    half_power_beamwidth,
    main_lobe_direction,
    offsets_to_thetas,
    pattern_trace,
    scan_rows_to_csv,
    scan_sweep,
    sidelobe_level,
)
from .em import axis_to_broadside, wavelength
from .errors import (
    ArrayKitError,
    BeamwidthUndefinedError,
    DegeneratePatternError,
    TouchstoneParseError,
)
from .goals import DesignCandidate, DesignGoals, check_goals, synthesize_candidate
from .mimo import capacity_sweep, capacity_sweep_csv, snr_from_db
from .network import isolation_report
from .patch import Substrate
from .svg import polar_svg
from .touchstone import read_touchstone

EXIT_OK, EXIT_GOAL_FAIL, EXIT_INPUT, EXIT_DEGENERATE, EXIT_PARSE = 0, 1, 2, 3, 4
SCHEMA_VERSION = 1
GRID_ENV = "ARRAYKIT_GRID_STEP_DEG"


class InputError(Exception):
    pass


_QTY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([a-zA-Zλ]*)\s*$")
_FREQ_SCALE = {"": 1e9, "hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}
_LEN_SCALE = {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6}


def _split_qty(text):
    m = _QTY.match(str(text))
    if not m:
        raise InputError(f"cannot parse quantity {text!r}")
    return float(m.group(1)), m.group(2).lower()


def parse_frequency(text):
    """``'5.9GHz'``, ``'5900MHz'`` or a bare number in GHz, to Hz."""
    value, unit = _split_qty(text)
    if unit not in _FREQ_SCALE:
        raise InputError(f"unknown frequency unit in {text!r}")
    if not value > 0:
        raise InputError(f"frequency must be positive: {text!r}")
    return value * _FREQ_SCALE[unit]


def parse_length(text, lam=None, bare="lambda"):
    """Length in metres; accepts ``lambda``-relative or absolute units."""
    value, unit = _split_qty(text)
    unit = unit or bare
    if unit in ("lambda", "λ", "wl"):
        if lam is None:
            raise InputError(f"wavelength-relative length {text!r} needs a frequency")
        return value * lam
    if unit not in _LEN_SCALE:
        raise InputError(f"unknown length unit in {text!r}")
    return value * _LEN_SCALE[unit]


def parse_list(text, conv=float):
    if isinstance(text, (list, tuple)):
        return [conv(t) for t in text]
    return [conv(t) for t in str(text).split(",") if t.strip()]


def parse_shape(text):
    m = re.fullmatch(r"\s*(\d+)\s*[xX×]\s*(\d+)\s*", str(text))
    if not m:
        raise InputError(f"array shape must look like 2x2, got {text!r}")
    rows, cols = int(m.group(1)), int(m.group(2))
    if rows < 1 or cols < 1:
        raise InputError(f"array shape must be positive: {text!r}")
    return rows, cols


def _default_grid_step():
    raw = os.environ.get(GRID_ENV)
    if raw is None:
        return DEFAULT_GRID_STEP_DEG
    try:
        return float(raw)
    except ValueError:
        raise InputError(f"{GRID_ENV} must be a number, got {raw!r}") from None


def atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_outputs(args, files):
    for name, text in files.items():
        atomic_write(os.path.join(args.out, name), text)
    meta = {"command": args.command, "argv": sys.argv[1:], "version": __version__,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"), "outputs": sorted(files)}
    atomic_write(os.path.join(args.out, f"{args.command}.run.json"), _dump(meta))


def _element(args):
    if args.element == "isotropic":
        return ElementPattern(0.0)
    return ElementPattern(args.q)


def _linear_config(args, frequency):
    lam = wavelength(frequency)
    spacing = parse_length(args.d, lam)
    amps = parse_list(args.amplitudes) if args.amplitudes else None
    return LinearArrayConfig(args.n, spacing, amplitudes=amps)


def cmd_design(args):
    bands = parse_list(args.bands, parse_frequency)
    if not bands:
        raise InputError("--bands needs at least one frequency")
    try:
        substrate = Substrate(epsilon_r=args.substrate_er,
                              thickness=parse_length(args.substrate_h, bare="mm"),
                              tan_delta=args.substrate_tand)
    except ArrayKitError as exc:
        raise InputError(f"invalid substrate: {exc}") from None
    shapes = {}
    if args.array:
        given = parse_list(args.array, parse_shape)
        if len(given) != len(bands):
            raise InputError("--array needs one shape per band")
        shapes = dict(zip(bands, given))
    goals = DesignGoals.for_bands(bands)
    candidate = synthesize_candidate(goals, substrate, shapes,
                                     guard_gap_mm=parse_length(args.guard_gap, bare="mm") * 1e3)
    doc = candidate.to_dict()
    doc["goals"] = goals.to_dict()
    lines = [f"substrate eps_r={substrate.epsilon_r:g} h={substrate.thickness * 1e3:g} mm"]
    for a in candidate.arrays:
        lines.append(f"{a.frequency / 1e9:g} GHz: {a.rows}x{a.cols} patches "
                     f"L={a.patch.length * 1e3:.4f} mm W={a.patch.width * 1e3:.4f} mm "
                     f"d={a.spacing * 1e3:.4f} mm")
    w, h = candidate.footprint_mm()
    lines.append(f"footprint {w:.3f} x {h:.3f} mm")
    summary = "\n".join(lines) + "\n"
    _write_outputs(args, {"candidate.json": _dump(doc), "candidate_summary.txt": summary})
    print(summary, end="")
    return EXIT_OK


def _pattern_metrics(trace, config, frequency, offset_deg, theta0):
    try:
        hpbw, hpbw_status = half_power_beamwidth(trace), "ok"
    except BeamwidthUndefinedError:
        hpbw, hpbw_status = None, "beamwidth-undefined"
    sll = sidelobe_level(trace)
    peak = main_lobe_direction(trace)
    return {
        "schema_version": SCHEMA_VERSION,
        "frequency_hz": frequency,
        "n_elements": config.n_elements,
        "spacing_m": config.spacing,
        "spacing_wavelengths": config.spacing / wavelength(frequency),
        "steer_offset_deg": offset_deg,
        "steer_theta0_deg": math.degrees(theta0),
        "beta_rad": config.beta,
        "peak_deg": peak,
        "peak_offset_deg": float(np.degrees(axis_to_broadside(np.radians(peak)))),
        "hpbw_deg": hpbw,
        "hpbw_status": hpbw_status,
        "sll_db": sll,
        "sll_status": "ok" if sll is not None else "none-found",
        "directivity_dbi": directivity_dbi(trace),
        "directivity_assumption": "cut rotationally symmetric about the array axis",
        "grating": grating_lobe_check(config.spacing, frequency, theta0).value,
        "angle_convention": "theta from array axis; offsets from broadside (theta = 90 - offset)",
    }


def cmd_pattern(args):
    frequency = parse_frequency(args.freq)
    offset = float(args.steer_az)
    theta0 = offsets_to_thetas([offset])[0]
    config = _linear_config(args, frequency).steered(frequency, theta0)
    trace = pattern_trace(config, frequency, _element(args), args.grid_step)
    metrics = _pattern_metrics(trace, config, frequency, offset, theta0)
    files = {"pattern.csv": trace.to_csv(), "pattern_metrics.json": _dump(metrics)}
    if args.svg:
        files["pattern.svg"] = polar_svg(trace, f"{trace.description}, steer {offset:g} deg")
    _write_outputs(args, files)
    print(f"peak {metrics['peak_offset_deg']:.3f} deg from broadside, "
          f"SLL {metrics['sll_db']}, HPBW {metrics['hpbw_deg']}")
    return EXIT_OK


def cmd_sweep(args):
    frequency = parse_frequency(args.freq)
    offsets = parse_list(args.steer_az)
    if not offsets:
        raise InputError("--steer-az needs at least one angle")
    config = _linear_config(args, frequency)
    rows = scan_sweep(config, frequency, _element(args), offsets_to_thetas(offsets), args.grid_step)
    metrics = {
        "schema_version": SCHEMA_VERSION,
        "frequency_hz": frequency,
        "n_elements": config.n_elements,
        "spacing_wavelengths": config.spacing / wavelength(frequency),
        "element": {"kind": _element(args).kind, "q": _element(args).q},
        "rows": [{"steer_offset_deg": r.offset_deg, "theta0_deg": r.theta0_deg, "beta_rad": r.beta,
                  "peak_deg": r.peak_deg, "peak_error_deg": r.peak_error_deg, "sll_db": r.sll_db,
                  "hpbw_deg": r.hpbw_deg, "grating": r.grating.value} for r in rows],
    }
    _write_outputs(args, {"sweep.csv": scan_rows_to_csv(rows), "sweep_metrics.json": _dump(metrics)})
    for r in rows:
        print(f"offset {r.offset_deg:+.1f} deg: peak error {r.peak_error_deg:+.4f} deg, "
              f"grating={r.grating.value}")
    return EXIT_OK


def cmd_sparams(args):
    if not os.path.isfile(args.file):
        raise InputError(f"no such file: {args.file}")
    s = read_touchstone(args.file)
    ports = range(1, s.n_ports + 1)
    band_reports = {}
    for p in ports:
        rep = s.bands(p, args.threshold)
        band_reports[f"S{p}{p}"] = [
            {"f_low_hz": b.f_low, "f_high_hz": b.f_high, "width_hz": b.width,
             "truncated_low": b.truncated_low, "truncated_high": b.truncated_high}
            for b in rep.bands]
    iso = None
    if s.n_ports >= 2:
        iso = [{"i": v.port_i, "j": v.port_j, "worst_db": v.worst_db,
                "worst_frequency_hz": v.worst_frequency, "pass": v.passed}
               for v in isolation_report(s, args.isolation_threshold)]
    report = {"schema_version": SCHEMA_VERSION, "n_ports": s.n_ports, "z0": s.z0,
              "threshold_db": args.threshold, "bands": band_reports,
              "isolation_threshold_db": args.isolation_threshold, "isolation": iso}
    header = "frequency_hz," + ",".join(f"s{p}{p}_db" for p in ports)
    traces = [np.atleast_1d(s.s_db(p, p)) for p in ports]
    lines = [header] + [f"{f:.6f}," + ",".join(f"{t[k]:.6f}" for t in traces)
                        for k, f in enumerate(s.frequencies)]
    _write_outputs(args, {"sparams_report.json": _dump(report),
                          "s11.csv": "\n".join(lines) + "\n"})
    for name, bands in band_reports.items():
        print(f"{name}: {len(bands)} band(s) below {args.threshold:g} dB")
    if iso is not None:
        print(f"isolation: {'pass' if all(v['pass'] for v in iso) else 'fail'}")
    return EXIT_OK


def cmd_capacity(args):
    frequency = parse_frequency(args.freq)
    lam = wavelength(frequency)
    spacing = parse_length(args.d, lam)
    tx = LinearArrayConfig(args.ntx, spacing)
    rx = LinearArrayConfig(args.nrx, spacing)
    snr_db = float(args.snr_db)
    thetas = offsets_to_thetas(parse_list(args.angles))
    points = capacity_sweep(tx, rx, frequency, thetas, snr_from_db(snr_db))
    _write_outputs(args, {"capacity.csv": capacity_sweep_csv(points)})
    caps = [p.capacity for p in points]
    print(f"capacity {min(caps):.6f} .. {max(caps):.6f} bit/s/Hz over {len(points)} angle pairs")
    return EXIT_OK


def cmd_check(args):
    if not os.path.isfile(args.candidate):
        raise InputError(f"no such candidate file: {args.candidate}")
    with open(args.candidate, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
            candidate = DesignCandidate.from_dict(doc)
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"malformed candidate file: {exc}") from None
    goals = (DesignGoals.from_dict(doc["goals"]) if "goals" in doc
             else DesignGoals.for_bands([a.frequency for a in candidate.arrays]))
    overrides = {}
    if args.max_footprint:
        try:
            dims = [float(v) for v in re.split(r"[xX]", args.max_footprint)]
        except ValueError:
            dims = []
        if len(dims) != 2:
            raise InputError(f"--max-footprint must look like 60x60, got {args.max_footprint!r}")
        overrides["max_footprint_mm"] = dims
    if args.min_isolation is not None:
        overrides["min_isolation_db"] = args.min_isolation
    if args.steer_range is not None:
        overrides["steering_range_deg"] = args.steer_range
    if overrides:
        d = goals.to_dict()
        d.update(overrides)
        goals = DesignGoals.from_dict(d)
    sparams = read_touchstone(args.sparams) if args.sparams else None
    report = check_goals(candidate, goals, sparams, _element(args), args.grid_step)
    _write_outputs(args, {"compliance.json": _dump(report.to_dict())})
    for v in report.verdicts:
        print(f"{v.goal}: {v.verdict.value} (computed {v.computed}, threshold {v.threshold})")
    return EXIT_OK if report.all_pass else EXIT_GOAL_FAIL


def _add_array_options(p):
    p.add_argument("--n", type=int, default=4, help="number of elements")
    p.add_argument("--d", default="0.5lambda", help="spacing, e.g. 0.5lambda or 5.35mm")
    p.add_argument("--freq", default="28GHz", help="operating frequency (GHz if no unit)")
    p.add_argument("--amplitudes", default=None, help="comma-separated element amplitudes")
    _add_element_options(p)


def _add_element_options(p, default="isotropic"):
    p.add_argument("--element", choices=["isotropic", "cosine"], default=default,
                   help="element pattern model")
    p.add_argument("--q", type=float, default=1.0, help="cosine-power element exponent")
    p.add_argument("--grid-step", type=float, default=None, help="angle grid step in degrees")


def build_parser():
    parser = argparse.ArgumentParser(prog="arraykit", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="JSON file of option defaults (flags win)")
    parser.add_argument("--out", default=".", help="output directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="synthesize a dual-band array candidate")
    p.add_argument("--bands", default="5.9GHz,28GHz")
    p.add_argument("--substrate-er", type=float, default=2.2)
    p.add_argument("--substrate-h", default="0.787mm")
    p.add_argument("--substrate-tand", type=float, default=0.0009)
    p.add_argument("--array", default=None, help="shape per band, e.g. 2x2,1x4")
    p.add_argument("--guard-gap", default="5mm", help="gap between stacked arrays")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("pattern", help="pattern cut, metrics and optional polar SVG")
    _add_array_options(p)
    p.add_argument("--steer-az", type=float, default=0.0, help="steering offset from broadside, deg")
    p.add_argument("--svg", action="store_true", help="also write pattern.svg")
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("sweep", help="steering sweep table")
    _add_array_options(p)
    p.add_argument("--steer-az", default="0,15,30", help="comma-separated offsets from broadside, deg")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("sparams", help="return-loss bands and isolation from a Touchstone file")
    p.add_argument("file")
    p.add_argument("--threshold", type=float, default=-10.0, help="band threshold in dB")
    p.add_argument("--isolation-threshold", type=float, default=-25.0)
    p.set_defaults(func=cmd_sparams)

    p = sub.add_parser("capacity", help="LoS MIMO capacity sweep")
    p.add_argument("--ntx", type=int, default=4)
    p.add_argument("--nrx", type=int, default=4)
    p.add_argument("--snr-db", default="10", help="SNR in dB; -inf for zero")
    p.add_argument("--los", action="store_true", default=True,
                   help="line-of-sight rank-one channel (the only model)")
    p.add_argument("--freq", default="28GHz")
    p.add_argument("--d", default="0.5lambda")
    p.add_argument("--angles", default="-30,-15,0,15,30",
                   help="comma-separated offsets from broadside, deg")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("check", help="check a candidate against the design goals")
    p.add_argument("candidate")
    p.add_argument("--sparams", default=None, help="Touchstone file for isolation")
    p.add_argument("--max-footprint", default=None, help="e.g. 60x60 (mm)")
    p.add_argument("--min-isolation", type=float, default=None)
    p.add_argument("--steer-range", type=float, default=None)
    _add_element_options(p, default="cosine")
    p.set_defaults(func=cmd_check)
    return parser, sub


def _apply_config(parser, subparsers, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        with open(known.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {known.config}: {exc}") from None
    if not isinstance(cfg, dict):
        raise InputError("config file must hold a JSON object")
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    if "out" in cfg:
        parser.set_defaults(out=cfg["out"])
    for sp in subparsers.choices.values():
        dests = {a.dest for a in sp._actions}
        sp.set_defaults(**{k: v for k, v in cfg.items() if k in dests})


_NEGATIVE_VALUE = re.compile(r"^-(?:inf|\d|\.\d)", re.IGNORECASE)


def _glue_negative_values(argv):
    """Turn ``--flag -30,30`` into ``--flag=-30,30`` so argparse keeps the value."""
    out = []
    for tok in argv:
        prev = out[-1] if out else ""
        if _NEGATIVE_VALUE.match(tok) and prev.startswith("--") and "=" not in prev:
            out[-1] = f"{prev}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None):
    argv = _glue_negative_values(sys.argv[1:] if argv is None else argv)
    parser, subparsers = build_parser()
    try:
        _apply_config(parser, subparsers, argv)
        args = parser.parse_args(argv)
        if getattr(args, "grid_step", "absent") is None:
            args.grid_step = _default_grid_step()
        return args.func(args)
    except InputError as exc:
        print(f"arraykit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TouchstoneParseError as exc:
        print(f"arraykit: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegeneratePatternError as exc:
        print(f"arraykit: degenerate pattern: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ArrayKitError, ValueError, OSError) as exc:
        print(f"arraykit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
