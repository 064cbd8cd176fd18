"""
Broadcasting the two-parameter family
=====================================

Clone both halves of a TPCS state and ask whether the cross pairs (1,4) and
(2,3) are still NPT.
"""
import numpy as np

from qutrit_broadcast import broadcast, is_abppt, is_npt, nonlocal_bloch, tpcs
from qutrit_broadcast.analysis import find_threshold

for b, c in [(4 / 15, 1 / 15), (1 / 5, 0.0), (0.30, 0.01)]:
    rho = tpcs(b=b, c=c)
    out = broadcast(rho)
    print(f"b={b:.4f} c={c:.4f}: input NPT={is_npt(rho).is_npt}, "
          f"rho14 NPT={is_npt(out.rho14).is_npt}, rho14 ABPPT={is_abppt(out.rho14).is_abppt}")

# %% the output carries no local Bloch vectors and a diagonal correlation matrix
bd = nonlocal_bloch(tpcs(b=4 / 15, c=1 / 15))
print("x =", np.round(bd.x, 12))
print("diag(t) =", np.round(np.diag(bd.t), 6))
print("25(c-b)/64 =", 25 * (1 / 15 - 4 / 15) / 64, " 25(2-9b-9c)/192 =", 25 * (2 - 3) / 192)

# %% the output stays NPT only above b = 19/75, whatever c is
for c in (0.0, 0.03, 0.06):
    res = find_threshold("tpcs", "b", {"c": c}, "output_npt", tol=1e-9)
    print(f"c={c}: b* = {res.value:.9f}   (19/75 = {19 / 75:.9f})")
