"""
Line-of-sight capacity of two steered rows
==========================================

A pure LoS channel between two uniform rows is rank one, so spatial
multiplexing buys nothing. What the array buys is power gain.
"""

import numpy as np

from arraykit import LinearArrayConfig, capacity_bits, los_channel, wavelength
from arraykit.mimo import matched_beamforming_gain

f = 28e9
rho = 10.0  # 10 dB SNR
for n in (1, 2, 4, 8):
    tx = rx = LinearArrayConfig(n, wavelength(f) / 2)
    h = los_channel(tx, rx, f, np.radians(70), np.radians(100))
    print(f"{n}x{n}: rank {np.linalg.matrix_rank(h)}, C = {capacity_bits(h, rho):.3f} bit/s/Hz, "
          f"log2(1 + rho*N) = {np.log2(1 + rho * n):.3f}")

###############################################################################
# Compare with a rich channel of the same size, where every eigenmode helps.

rng = np.random.default_rng(0)
h = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))) / np.sqrt(2)
print(f"random 4x4: C = {capacity_bits(h, rho):.3f} bit/s/Hz")

###############################################################################
# Matched weights collect all N units of gain. Weights aimed 30 degrees off
# can cancel completely.

row = LinearArrayConfig(4, wavelength(f) / 2)
print("matched:", matched_beamforming_gain(row, f, np.radians(90)))
print("aimed at 60 deg, seen from 90:",
      round(matched_beamforming_gain(row, f, np.radians(90), np.radians(60)), 12))
