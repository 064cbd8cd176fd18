"""
Where broadcasting yields absolutely PPT outputs
================================================

Sample the (b, c) triangle uniformly, classify the nonlocal output, and plot
the result when matplotlib is available.  Takes a minute or two for 10^4
points; pass a smaller count on the command line for a quick look.
"""
import sys

import numpy as np

from qutrit_broadcast.analysis import scan_tpcs

n = int(sys.argv[1]) if len(sys.argv) > 1 else 10_000
records = scan_tpcs(n, seed=42)
bc = np.array([(r.point.params.b, r.point.params.c) for r in records])
ab = np.array([r.output_abppt for r in records])
npt = np.array([r.output_npt for r in records])
print(f"{n} samples: {ab.sum()} ABPPT outputs, {npt.sum()} NPT outputs, {(~ab & ~npt).sum()} neither")

try:
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit(0)

fig, ax = plt.subplots(figsize=(5, 5))
ax.scatter(*bc[ab].T, s=2, c="saddlebrown", label="output ABPPT")
ax.scatter(*bc[npt].T, s=2, c="tab:blue", label="output NPT")
ax.scatter(*bc[~ab & ~npt].T, s=2, c="0.7", label="neither")
ax.set_xlabel("b")
ax.set_ylabel("c")
ax.legend(markerscale=5)
fig.savefig("tpcs_abppt_scan.png", dpi=150, bbox_inches="tight")
print("saved tpcs_abppt_scan.png")
