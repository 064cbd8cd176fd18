"""
Isotropic states: NPT and absolute-PPT windows
==============================================
"""
import numpy as np

from qutrit_broadcast.analysis import find_threshold, scan_isotropic

npt = find_threshold("isotropic", "f", predicate="output_npt", tol=1e-10)
ab = find_threshold("isotropic", "f", predicate="output_abppt", tol=1e-10)
print(f"output NPT   for f > {npt.value:.10f}   (17/25   = {17 / 25:.10f})")
print(f"output ABPPT for f < {ab.value:.10f}   (433/825 = {433 / 825:.10f})")

# %% a coarse table over f
print(" f     in-NPT  out-NPT  out-ABPPT  min PT eig")
for r in scan_isotropic(np.linspace(0, 1, 11)):
    print(f" {r.point.params.f:.1f}   {r.input_npt!s:6}  {r.output_npt!s:7}  {r.output_abppt!s:9}  {r.min_pt_eig_output:+.5f}")
