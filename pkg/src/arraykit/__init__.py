"""arraykit: design and analysis of dual-band vehicular patch arrays.

Closed-form patch resonance, reflection and bandwidth, array factors and
beam steering, LoS MIMO capacity, Touchstone I/O and design-goal checks.
"""

__version__ = "0.1.0"

from .array import (  # noqa: E402
    ISOTROPIC,
    PATCH_ELEMENT,
    ElementPattern,
    GratingVerdict,
    LinearArrayConfig,
    PatternTrace,
    PlanarArrayConfig,
    array_factor,
    directivity_dbi,
    find_lobes,
    grating_lobe_check,
    half_power_beamwidth,
    main_lobe_direction,
    pattern_trace,
    planar_directivity_dbi,
    planar_pattern,
    scan_sweep,
    sidelobe_level,
    steering_phase,
)
from .em import (  # noqa: E402
    SPEED_OF_LIGHT,
    axis_to_broadside,
    broadside_to_axis,
    db_amplitude,
    db_power,
    determinant,
    hermitian_product,
    wavelength,
    wavenumber,
)
from .goals import (  # noqa: E402
    DesignCandidate,
    DesignGoals,
    check_goals,
    comparison_table,
    load_metric_set,
    synthesize_candidate,
)
from .mimo import (  # noqa: E402
    capacity_bits,
    capacity_sweep,
    los_channel,
    matched_beamforming_gain,
    steering_vector,
)
from .network import (  # noqa: E402
    SParameterSet,
    extract_bands,
    isolation_report,
    reflection_coefficient,
    s11_db,
)
from .patch import (  # noqa: E402
    RT5880,
    ModeIndex,
    PatchGeometry,
    Substrate,
    fringing_corrected_frequency,
    resonant_frequency,
    synthesize_patch,
)
from .touchstone import parse_touchstone, read_touchstone, write_touchstone  # noqa: E402

__all__ = [
    "array_factor",
    "axis_to_broadside",
    "broadside_to_axis",
    "capacity_bits",
    "capacity_sweep",
    "check_goals",
    "comparison_table",
    "db_amplitude",
    "db_power",
    "DesignCandidate",
    "DesignGoals",
    "determinant",
    "directivity_dbi",
    "ElementPattern",
    "extract_bands",
    "find_lobes",
    "fringing_corrected_frequency",
    "grating_lobe_check",
    "GratingVerdict",
    "half_power_beamwidth",
    "hermitian_product",
    "isolation_report",
    "ISOTROPIC",
    "LinearArrayConfig",
    "load_metric_set",
    "los_channel",
    "main_lobe_direction",
    "matched_beamforming_gain",
    "ModeIndex",
    "parse_touchstone",
    "PATCH_ELEMENT",
    "PatchGeometry",
    "pattern_trace",
    "PatternTrace",
    "planar_directivity_dbi",
    "planar_pattern",
    "PlanarArrayConfig",
    "read_touchstone",
    "reflection_coefficient",
    "resonant_frequency",
    "RT5880",
    "s11_db",
    "scan_sweep",
    "sidelobe_level",
    "SParameterSet",
    "SPEED_OF_LIGHT",
    "steering_phase",
    "steering_vector",
    "Substrate",
    "synthesize_candidate",
    "synthesize_patch",
    "wavelength",
    "wavenumber",
    "write_touchstone",
]
