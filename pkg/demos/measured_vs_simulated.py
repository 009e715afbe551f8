"""
From Touchstone files to a comparison table
===========================================

Read simulated and measured two-port sweeps, pull out return loss,
isolation and -10 dB bandwidth near each band, and line them up.
"""

import os

from arraykit import comparison_table, read_touchstone
from arraykit.goals import load_metric_set, metrics_from_sparams
from arraykit.network import isolation_report

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "tests", "fixtures")

metric_sets = {}
for which in ("sim", "meas"):
    metrics = load_metric_set(os.path.join(FIXTURES, f"prototype_{which}_metrics.json"))
    for tag, f, label in (("5g9", 5.9e9, "5.9 GHz"), ("28g", 28e9, "28 GHz")):
        s = read_touchstone(os.path.join(FIXTURES, f"prototype_{which}_{tag}.s2p"))
        metrics.update(metrics_from_sparams(s, f, label))
    metric_sets[which] = metrics

###############################################################################
# Deltas are measured minus simulated, so a negative gain delta means the
# board came in below the model.

table = comparison_table(metric_sets["sim"], metric_sets["meas"])
print(table.to_csv())

###############################################################################
# Isolation against a -25 dB requirement, pair by pair.

s = read_touchstone(os.path.join(FIXTURES, "prototype_meas_28g.s2p"))
for v in isolation_report(s, -25.0):
    print(f"S{v.port_i}{v.port_j}: worst {v.worst_db:.1f} dB -> {'pass' if v.passed else 'fail'}")
