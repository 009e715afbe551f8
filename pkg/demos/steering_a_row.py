"""
Steering a four-element row at 28 GHz
=====================================

Half-wavelength spacing, a progressive phase per element, and what the
pattern metrics look like as the beam moves off broadside.
"""

import numpy as np

from arraykit import LinearArrayConfig, pattern_trace, wavelength
from arraykit.array import (
    ISOTROPIC,
    PATCH_ELEMENT,
    half_power_beamwidth,
    main_lobe_direction,
    offsets_to_thetas,
    sidelobe_level,
)

f = 28e9
row = LinearArrayConfig(4, wavelength(f) / 2)

###############################################################################
# The phase step that points the beam is beta = -k d cos(theta0). Angles here
# are offsets from broadside, so +30 means theta0 = 60 degrees from the axis.

for offset, theta0 in zip([0, 15, 30], offsets_to_thetas([0, 15, 30])):
    steered = row.steered(f, theta0)
    trace = pattern_trace(steered, f, ISOTROPIC)
    print(f"offset {offset:>3} deg  beta {np.degrees(steered.beta):7.2f} deg  "
          f"peak {90 - main_lobe_direction(trace):6.2f}  "
          f"HPBW {half_power_beamwidth(trace):5.2f}  SLL {sidelobe_level(trace):6.2f} dB")

###############################################################################
# A patch element rolls off away from broadside. It lowers the far
# sidelobes but also drags a steered peak back toward broadside.

steered = row.steered(f, offsets_to_thetas([30])[0])
trace = pattern_trace(steered, f, PATCH_ELEMENT)
print(f"with cos element: peak {90 - main_lobe_direction(trace):.2f} deg, "
      f"SLL {sidelobe_level(trace):.2f} dB")
