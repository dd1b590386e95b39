"""Where the double limit property breaks: the c0 norm sequence.

In c0 take u_n = e_n and v_m = e_1 + ... + e_m. Then ||u_n + v_m||_sup is 2
when n <= m and 1 otherwise, so the two iterated limits differ. The same
engine applied to a reflexive pairing finds agreement.
"""

import numpy as np

from genheis import COL_THEN_ROW, ROW_THEN_COL, PairingSpace, c0_counterexample, dlp_check, iterated_limit
from genheis.dlp import pairing_sequence
from genheis.seeding import rng_for
from genheis.sequences import cluster_sequence

seq = c0_counterexample(200, 100)
print("corner of the array:\n", seq.block(6, 6))
print("lim_m lim_n =", iterated_limit(seq, ROW_THEN_COL, tol=1e-9).value)
print("lim_n lim_m =", iterated_limit(seq, COL_THEN_ROW, tol=1e-9).value)
v = dlp_check(seq, tol=1e-9)
print("verdict:", v.verdict, "on", len(v.witness.row_indices), "rows x", len(v.witness.col_indices), "columns")

space = PairingSpace.ell(4, 8, mode="float")
rng = rng_for(0, "demo")
xs = cluster_sequence(rng, 300, 8, 1.0, space.norm)
fs = cluster_sequence(rng, 300, 8, 1.0, space.dual_norm)
v = dlp_check(pairing_sequence(space, xs, fs, 1.0))
print(f"\nl_4 / l_4/3 pairing: {v.verdict}, c1 = {v.c1:.9f}, c2 = {v.c2:.9f}")
print("extracted rows:", np.asarray(v.witness.row_indices)[:10], "...")
