import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from arraykit.em import SPEED_OF_LIGHT
from arraykit.errors import DomainError, InvalidModeError
from arraykit.patch import (
    RT5880,
    ModeIndex,
    PatchGeometry,
    Substrate,
    effective_permittivity,
    fringing_corrected_frequency,
    resonant_frequency,
    synthesize_patch,
)

VACUUM = Substrate(epsilon_r=1.0, thickness=1e-3)


def test_rt5880_values():
    assert (RT5880.epsilon_r, RT5880.thickness, RT5880.tan_delta) == (2.2, 0.787e-3, 0.0009)


@pytest.mark.parametrize("kwargs", [
    dict(epsilon_r=0.9, thickness=1e-3),
    dict(epsilon_r=2.2, thickness=0.0),
    dict(epsilon_r=2.2, thickness=1e-3, tan_delta=0.2),
])
def test_substrate_validation(kwargs):
    with pytest.raises(DomainError):
        Substrate(**kwargs)


def test_mode_validation():
    with pytest.raises(InvalidModeError):
        ModeIndex(0, 0)
    with pytest.raises(InvalidModeError):
        resonant_frequency(PatchGeometry(1e-2, 1e-2, RT5880), (0, 0))


def test_dsrc_patch_resonates_at_5p9():
    # L fixed to 9 significant digits from c / (2 f sqrt(eps_r))
    patch = PatchGeometry(17.1288164e-3, 20e-3, RT5880)
    assert resonant_frequency(patch) == pytest.approx(5.9e9, rel=1e-8)


def test_half_wave_in_vacuum_is_exact():
    f = 5.9e9
    patch = PatchGeometry(SPEED_OF_LIGHT / (2 * f), 1e-2, VACUUM)
    assert resonant_frequency(patch) == f


def test_square_patch_symmetry():
    patch = PatchGeometry(12e-3, 12e-3, RT5880)
    ratio = resonant_frequency(patch, (1, 1)) / resonant_frequency(patch, (1, 0))
    assert abs(ratio - math.sqrt(2)) <= 1e-12


def test_synthesize_examples():
    p = synthesize_patch(5.9e9, RT5880)
    assert p.length == pytest.approx(17.128816436e-3, rel=1e-9)
    p = synthesize_patch(28e9, RT5880)
    assert p.length * 1e3 == pytest.approx(3.610, abs=1e-3)
    assert p.width * 1e3 == pytest.approx(4.233, abs=1e-3)
    assert synthesize_patch(5.9e9, VACUUM).length == SPEED_OF_LIGHT / (2 * 5.9e9)


def test_synthesize_rejects_higher_modes():
    with pytest.raises(InvalidModeError):
        synthesize_patch(28e9, RT5880, (1, 1))


@given(st.floats(1e9, 60e9), st.floats(1.0, 12.0))
def test_round_trip(f, er):
    patch = synthesize_patch(f, Substrate(er, 0.787e-3))
    assert abs(resonant_frequency(patch) / f - 1) <= 1e-9


@given(st.floats(1e-3, 0.1), st.floats(1.01, 2.0))
def test_frequency_decreases_with_length(length, factor):
    a = resonant_frequency(PatchGeometry(length, 0.01, RT5880))
    b = resonant_frequency(PatchGeometry(length * factor, 0.01, RT5880))
    assert b < a


@given(st.floats(1.0, 10.0), st.floats(1.01, 2.0))
def test_frequency_decreases_with_permittivity(er, factor):
    geom = dict(length=0.01, width=0.012)
    a = resonant_frequency(PatchGeometry(**geom, substrate=Substrate(er, 1e-3)))
    b = resonant_frequency(PatchGeometry(**geom, substrate=Substrate(er * factor, 1e-3)))
    assert b < a


@given(st.integers(0, 4), st.integers(0, 4))
def test_mode_ordering(m, n):
    assume((m, n) != (0, 0))
    patch = PatchGeometry(17e-3, 21e-3, RT5880)
    f = resonant_frequency(patch, (m, n))
    assert resonant_frequency(patch, (m + 1, n)) > f
    assert resonant_frequency(patch, (m, n + 1)) > f


def test_fringing_thin_substrate_limit():
    patch = synthesize_patch(28e9, Substrate(2.2, 1e-9))
    assert fringing_corrected_frequency(patch) == pytest.approx(resonant_frequency(patch), rel=1e-6)


def test_vacuum_effective_permittivity():
    for w_over_h in (0.5, 1.0, 10.0, 100.0):
        assert effective_permittivity(w_over_h, 1.0, 1.0) == 1.0


def test_fringing_on_mmwave_patch():
    patch = synthesize_patch(28e9, RT5880)
    cavity = resonant_frequency(patch)
    corrected = fringing_corrected_frequency(patch)
    # Hammerstad relations evaluated at 30 digits with mpmath:
    # eps_eff = 1.933775046, dL = 0.394710748 mm
    assert corrected < cavity
    assert corrected == pytest.approx(24505446294.1963366, rel=1e-12)
    assert (cavity - corrected) / 1e9 == pytest.approx(3.4945537058, rel=1e-9)


def test_fringing_needs_thin_substrate():
    with pytest.raises(DomainError):
        fringing_corrected_frequency(PatchGeometry(3e-3, 1e-3, Substrate(2.2, 1.5e-3)))


@given(st.floats(1e9, 60e9), st.floats(1.01, 4.4), st.floats(0.1e-3, 1.6e-3))
def test_fringing_red_shift(f, er, h):
    patch = synthesize_patch(f, Substrate(er, h))
    assume(h < patch.width)
    assert fringing_corrected_frequency(patch) <= resonant_frequency(patch)
