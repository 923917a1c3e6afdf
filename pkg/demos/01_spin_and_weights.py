"""
Spin matrices and highest weights
=================================

The fuzzy sphere at spin N is generated by the spin-N matrices X_a. A line
bundle is picked out inside [N] (x) [nu] by one of the two irreducible blocks
[N + nu] or [N - nu]; each block is generated by its highest-weight vector.
"""

import numpy as np

from fuzzybundle import Branch, highest_weight, make_spin_rep, schwinger_rep, total_raising

# spin 1: three states, ladder basis ordered m = 1, 0, -1
rep = make_spin_rep(2)
print("X3 =\n", rep.x3.real)
print("Casimir =\n", rep.casimir().real)

# the Schwinger (two-oscillator) construction gives the same rep up to a basis reversal
sch, u = schwinger_rep(2)
print("Schwinger matches ladder:", np.allclose(u @ sch.x3 @ u.conj().T, rep.x3))

# highest weight of the [N - nu] block for N = 1, nu = 1/2
h = highest_weight(2, 1, Branch.MINUS).coefficients
print("minus-branch highest weight:", np.round(h, 6))
print("killed by J_+:", np.linalg.norm(total_raising(2, 1) @ h) < 1e-12)
