"""Acceptance gate: one test and one printed PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines are
printed even when output capture is on.
"""

import json
import math
import os
import time

import numpy as np
import pytest

from arraykit.array import (
    ISOTROPIC,
    ElementPattern,
    GratingVerdict,
    LinearArrayConfig,
    array_factor,
    find_lobes,
    grating_lobe_check,
    main_lobe_direction,
    offsets_to_thetas,
    pattern_trace,
    sidelobe_level,
)
from arraykit.cli import main as cli_main
from arraykit.em import wavelength
from arraykit.errors import TouchstoneParseError
from arraykit.goals import comparison_table, load_metric_set, metrics_from_sparams
from arraykit.mimo import capacity_bits, los_channel, matched_beamforming_gain
from arraykit.network import SParameterSet, extract_bands, isolation_report, reflection_coefficient, s11_db
from arraykit.patch import ModeIndex, PatchGeometry, Substrate, resonant_frequency, synthesize_patch
from arraykit.touchstone import parse_touchstone, read_touchstone, write_touchstone

from conftest import FIXTURES
from oracles import dense_lobes, dense_pattern_db

SUITE_START = time.perf_counter()
F = 28e9
LAM = wavelength(F)
TARGETS = [-30.0, -15.0, 0.0, 15.0, 30.0]


@pytest.fixture
def verdict(capsys):
    def report(number, checks):
        """``checks`` is a list of (description, ok) pairs."""
        failed = [d for d, ok in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        detail = "; ".join(failed) if failed else f"{len(checks)} checks"
        with capsys.disabled():
            print(f"\nACCEPTANCE criterion {number}: {status} ({detail})")
        assert not failed, failed
    return report


def steered(n, d_over_lambda, offset_deg, amplitudes=None):
    theta0 = offsets_to_thetas([offset_deg])[0]
    return LinearArrayConfig(n, d_over_lambda * LAM, amplitudes).steered(F, theta0), theta0


def test_criterion_01_steering_exactness(verdict):
    start = time.perf_counter()
    checks = []
    for offset in TARGETS:
        config, theta0 = steered(4, 0.5, offset)
        peak = main_lobe_direction(pattern_trace(config, F, ISOTROPIC, 0.1))
        theta_d, db = dense_pattern_db(4, 0.5, math.degrees(theta0))
        brute = theta_d[np.argmax(db)]
        target = 90.0 - offset
        checks.append((f"offset {offset:+g}: peak {peak:.4f} vs {target}", abs(peak - target) <= 0.2))
        checks.append((f"offset {offset:+g}: brute-force {brute:.3f}", abs(brute - target) <= 0.2))
    elapsed = time.perf_counter() - start
    checks.append((f"runtime {elapsed:.3f}s", elapsed < 1.0))
    verdict(1, checks)


def test_criterion_02_coherent_sum(verdict):
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    checks = []
    worst = 0.0
    for n in range(1, 17):
        for _ in range(100):
            theta0 = rng.uniform(0.05, np.pi - 0.05)
            # grating-safe: d/lambda < 1/(1 + |cos theta0|)
            d = rng.uniform(0.05, 0.999 / (1 + abs(math.cos(theta0)))) * LAM
            config = LinearArrayConfig(n, d).steered(F, theta0)
            assert grating_lobe_check(d, F, theta0) is GratingVerdict.SAFE
            worst = max(worst, abs(abs(array_factor(config, F, theta0)) - n))
    checks.append((f"max | |AF(theta0)| - N | = {worst:.2e}", worst <= 1e-12))
    elapsed = time.perf_counter() - start
    checks.append((f"runtime {elapsed:.3f}s", elapsed < 1.0))
    verdict(2, checks)


def _dense_sll(n):
    theta_d, db = dense_pattern_db(n, 0.5, 90.0)
    lobes = sorted(dense_lobes(theta_d, db), key=lambda t: -t[1])
    return lobes[1][1]


def test_criterion_03_uniform_sll(verdict):
    checks = []
    for n, literal, tol in [(8, -12.95, 0.05), (4, -11.3, 0.1)]:
        config, _ = steered(n, 0.5, 0.0)
        sll = sidelobe_level(pattern_trace(config, F, ISOTROPIC, 0.1))
        oracle = _dense_sll(n)
        checks.append((f"N={n}: SLL {sll:.4f} dB vs dense oracle {oracle:.4f} dB",
                       abs(sll - oracle) <= 0.01))
        checks.append((f"N={n}: SLL {sll:.4f} dB vs stated {literal} +/- {tol} dB",
                       abs(sll - literal) <= tol))
    verdict(3, checks)


def test_criterion_04_element_rolloff_sll(verdict):
    checks = []
    for offset in TARGETS:
        config, _ = steered(4, 0.5, offset)
        sll = sidelobe_level(pattern_trace(config, F, ElementPattern(1.0), 0.1))
        checks.append((f"offset {offset:+g}: SLL {sll:.3f} dB", sll < -12.0))
    verdict(4, checks)


def test_criterion_05_grating_rule(verdict):
    checks = []
    for offset in TARGETS:
        config, theta0 = steered(4, 0.5, offset)
        sll = sidelobe_level(pattern_trace(config, F, ISOTROPIC, 0.1))
        theta_d, db = dense_pattern_db(4, 0.5, math.degrees(theta0))
        dense_secondary = sorted(v for _, v in dense_lobes(theta_d, db))[-2]
        checks.append((f"d=lambda/2 offset {offset:+g}: SLL {sll:.2f} dB", sll < -3.0))
        checks.append((f"d=lambda/2 offset {offset:+g}: dense {dense_secondary:.2f} dB",
                       dense_secondary < -3.0))
    config, theta0 = steered(4, 1.0, 0.0)
    trace = pattern_trace(config, F, ISOTROPIC, 0.1)
    peak = main_lobe_direction(trace)
    grating = [lb for lb in find_lobes(trace)
               if lb.level_db >= -0.5 and abs(lb.angle_deg - peak) > 1.0]
    checks.append((f"d=lambda broadside: {len(grating)} grating lobe(s) within 0.5 dB",
                   len(grating) >= 1))
    checks.append(("d=lambda broadside flagged by the spacing rule",
                   grating_lobe_check(LAM, F, theta0) is GratingVerdict.GRATING))
    theta_d, db = dense_pattern_db(4, 1.0, 90.0)
    checks.append(("dense oracle agrees",
                   sum(1 for t, v in dense_lobes(theta_d, db) if v >= -0.5 and abs(t - 90) > 1) >= 1))
    verdict(5, checks)


def test_criterion_06_patch_round_trip(verdict):
    checks = []
    worst = 0.0
    for f in (5.9e9, 28e9):
        for er in (1.0, 2.2, 4.4, 10.2):
            sub = Substrate(er, 0.787e-3)
            back = resonant_frequency(synthesize_patch(f, sub))
            worst = max(worst, abs(back - f) / f)
    checks.append((f"round-trip relative error {worst:.2e}", worst < 1e-9))
    square = PatchGeometry(4e-3, 4e-3, Substrate(2.2, 0.787e-3))
    ratio = resonant_frequency(square, ModeIndex(1, 1)) / resonant_frequency(square, ModeIndex(1, 0))
    checks.append((f"f11/f10 - sqrt2 = {ratio - math.sqrt(2):.1e}",
                   abs(ratio - math.sqrt(2)) <= 1e-12))
    verdict(6, checks)


def test_criterion_07_reflection_and_bandwidth(verdict):
    gamma = reflection_coefficient(100.0, 50.0)
    checks = [
        (f"Gamma(100, 50) = {gamma}", abs(gamma - 1 / 3) <= 1e-15),
        (f"S11 = {s11_db(gamma):.6f} dB", abs(s11_db(gamma) + 9.542) <= 1e-3),
    ]
    (band,) = extract_bands(np.array([27e9, 28e9, 29e9]), [-5.0, -30.0, -5.0]).bands
    checks.append((f"V-trace low edge {band.f_low / 1e9:.6f} GHz", abs(band.f_low - 27.2e9) <= 1e9))
    checks.append((f"V-trace high edge {band.f_high / 1e9:.6f} GHz", abs(band.f_high - 28.8e9) <= 1e9))
    checks.append(("V-trace edges exact", abs(band.f_low - 27.2e9) < 1.0
                   and abs(band.f_high - 28.8e9) < 1.0))
    fixture = read_touchstone(os.path.join(FIXTURES, "vtrace.s1p")).bands(1).bands[0]
    checks.append(("V-trace fixture file", abs(fixture.f_low - 27.2e9) < 1.0))
    verdict(7, checks)


def test_criterion_08_capacity(verdict):
    rng = np.random.default_rng(8)
    worst = 0.0
    for rho in (0.0, 1.0, 10.0, 100.0):
        for nr in range(1, 9):
            for nt in range(1, 9):
                h = los_channel(LinearArrayConfig(nt, LAM / 2), LinearArrayConfig(nr, LAM / 2), F,
                                *rng.uniform(0, np.pi, 2))
                worst = max(worst, abs(capacity_bits(h, rho) - math.log2(1 + rho * nr)))
    gain_err = max(abs(matched_beamforming_gain(LinearArrayConfig(n, LAM / 2), F, t) - n)
                   for n in range(1, 17) for t in rng.uniform(0, np.pi, 10))
    checks = [
        (f"rank-1 closed form worst error {worst:.2e}", worst <= 1e-9),
        ("H = I2, rho = 2 gives exactly 2.0", capacity_bits(np.eye(2), 2.0) == 2.0),
        (f"matched gain worst error {gain_err:.2e}", gain_err <= 1e-12),
    ]
    verdict(8, checks)


def test_criterion_09_touchstone(verdict):
    rng = np.random.default_rng(9)
    worst = 0.0
    for k in range(50):
        n = 1 + k % 4
        freqs = np.cumsum(rng.uniform(1e7, 1e9, 6)) + 1e9
        data = rng.uniform(1e-3, 1.0, (6, n, n)) * np.exp(1j * rng.uniform(-np.pi, np.pi, (6, n, n)))
        s = SParameterSet(freqs, data)
        for fmt in ("MA", "RI", "DB"):
            back = parse_touchstone(write_touchstone(s, fmt), filename=f"n.s{n}p")
            worst = max(worst, float(np.max(np.abs(back.data - s.data))))
    checks = [(f"round-trip worst entry error {worst:.2e} over 50 networks x 3 formats",
               worst <= 1e-6)]
    for name, line in [("bad_option.s2p", 3), ("bad_columns.s2p", 5), ("nonmonotonic.s1p", 4),
                       ("not_numeric.s1p", 3), ("z_params.s1p", 2), ("version2.s2p", 1)]:
        try:
            read_touchstone(os.path.join(FIXTURES, name))
            got = None
        except TouchstoneParseError as exc:
            got = exc.lineno
        checks.append((f"{name}: error at line {got}, expected {line}", got == line))
    verdict(9, checks)


def test_criterion_10_prototype_pipeline(verdict):
    sets = {}
    for which in ("sim", "meas"):
        metrics = load_metric_set(os.path.join(FIXTURES, f"prototype_{which}_metrics.json"))
        for tag, f, label in (("5g9", 5.9e9, "5.9 GHz"), ("28g", 28e9, "28 GHz")):
            s = read_touchstone(os.path.join(FIXTURES, f"prototype_{which}_{tag}.s2p"))
            metrics.update(metrics_from_sparams(s, f, label))
            if which == "meas":
                rep = isolation_report(s, -25.0)
                sets.setdefault("iso", []).extend(v.passed for v in rep)
        sets[which] = metrics
    rows = {r.parameter: r.delta for r in comparison_table(sets["sim"], sets["meas"]).rows}
    expected = {"Gain @ 5.9 GHz": -0.3, "Gain @ 28 GHz": -0.3,
                "Bandwidth (-10dB) @ 5.9 GHz": -0.02, "Bandwidth (-10dB) @ 28 GHz": -0.05}
    checks = [(f"{k}: delta {rows.get(k)} expected {v}", rows.get(k) == v) for k, v in expected.items()]
    checks.append(("isolation verdicts pass at -25 dB", bool(sets["iso"]) and all(sets["iso"])))
    verdict(10, checks)


def test_criterion_11_goal_check_end_to_end(verdict, tmp_path):
    out = str(tmp_path)
    checks = [("design exits 0", cli_main(["--out", out, "design"]) == 0)]
    code = cli_main(["--out", out, "check", os.path.join(out, "candidate.json")])
    with open(os.path.join(out, "compliance.json"), encoding="utf-8") as fh:
        verdicts = {v["goal"]: v["verdict"] for v in json.load(fh)["verdicts"]}
    checks.append((f"footprint {verdicts['footprint']}", verdicts["footprint"] == "pass"))
    checks.append((f"steering {verdicts['steering_28GHz']}", verdicts["steering_28GHz"] == "pass"))
    failing = [g for g, v in verdicts.items() if v == "fail"]
    checks.append((f"check exit {code} with failing goals {failing}", code == (1 if failing else 0)))
    checks.append(("tight footprint exits 1",
                   cli_main(["--out", out, "check", os.path.join(out, "candidate.json"),
                             "--max-footprint", "5x5"]) == 1))
    checks.append(("missing candidate exits 2",
                   cli_main(["--out", out, "check", os.path.join(out, "none.json")]) == 2))
    checks.append(("degenerate pattern exits 3",
                   cli_main(["--out", out, "pattern", "--amplitudes", "0,0,0,0"]) == 3))
    checks.append(("parse error exits 4",
                   cli_main(["--out", out, "sparams",
                             os.path.join(FIXTURES, "bad_columns.s2p")]) == 4))
    elapsed = time.perf_counter() - SUITE_START
    checks.append((f"acceptance suite runtime {elapsed:.2f}s", elapsed < 30.0))
    verdict(11, checks)
