"""
Sizing patches and laying out both arrays
=========================================

Cavity-model patch sizes on a 0.787 mm PTFE board, then a 2x2 array at
5.9 GHz stacked under a 1x4 row at 28 GHz, checked against the targets.
"""

from arraykit import RT5880, DesignGoals, check_goals, resonant_frequency, synthesize_patch
from arraykit.patch import fringing_corrected_frequency

for f in (5.9e9, 28e9):
    patch = synthesize_patch(f, RT5880)
    print(f"{f / 1e9:>4} GHz: L = {patch.length * 1e3:.3f} mm, W = {patch.width * 1e3:.3f} mm, "
          f"back to {resonant_frequency(patch) / 1e9:.6f} GHz")

###############################################################################
# The plain cavity model ignores fringing. With the open-end extension the
# same patch resonates well below its target, about 12% low at 28 GHz, so
# a real layout would trim L to compensate.

patch = synthesize_patch(28e9, RT5880)
print(f"fringing-corrected: {fringing_corrected_frequency(patch) / 1e9:.3f} GHz")

###############################################################################
# The layout and the goal check. Gain here is lossless directivity, so it
# is an upper bound on what a fabricated board would measure.

from arraykit import synthesize_candidate  # noqa: E402

goals = DesignGoals()
candidate = synthesize_candidate(goals, RT5880)
w, h = candidate.footprint_mm()
print(f"footprint {w:.2f} x {h:.2f} mm")
for v in check_goals(candidate, goals).verdicts:
    print(f"  {v.goal:<16} {v.verdict.value:<14} computed={v.computed}")
