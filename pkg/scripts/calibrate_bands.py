"""One-off calibration of the frozen acceptance bands.

Runs a 1000-trial pilot per (family, n) configuration and freezes
[mean - 5*sd, mean + 5*sd] into src/treecompact/data/pilot_bands.json.
The bands are wide enough for any 200-trial mean and for a plausible
single sample from the same distribution.
"""
import json
import os
import statistics

from treecompact.experiments import compacted_size, _trial_seed

CALIBRATION_SEED = 0xC0FFEE
TRIALS = 1000

bands = {}
for family in ("recursive", "bst"):
    bands[family] = {}
    for n in (500, 5000):
        xs = [compacted_size(family, n, _trial_seed(CALIBRATION_SEED, family, n, t))
              for t in range(TRIALS)]
        mean = statistics.mean(xs)
        sd = statistics.stdev(xs)
        bands[family][str(n)] = [round(mean - 5 * sd, 1), round(mean + 5 * sd, 1)]
        print(family, n, "mean", round(mean, 1), "sd", round(sd, 2),
              "band", bands[family][str(n)])

out = {
    "comment": "frozen 1000-trial pilot bands (scripts/calibrate_bands.py, "
               f"seed {CALIBRATION_SEED:#x}); band = mean +/- 5 sd",
    "mean_bands": bands,
}
path = os.path.join(os.path.dirname(__file__), "..", "src", "treecompact",
                    "data", "pilot_bands.json")
with open(os.path.abspath(path), "w") as handle:
    json.dump(out, handle, indent=2)
    handle.write("\n")
