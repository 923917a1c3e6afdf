"""
Equivariant projectors and their charges
========================================

Build the projector three ways (Casimir interpolation, lowering orbit, and a
Haar Monte-Carlo average), then read off f, q and c1 from the curvature.
"""

import numpy as np

from fuzzybundle import (
    charge_report,
    projector_haar_mc,
    projector_orbit,
    projector_spectral,
)

p_spec = projector_spectral(2, 1, "plus")
p_orb = projector_orbit(2, 1, "plus")
p_mc = projector_haar_mc(2, 1, "plus", samples=200_000, seed=42)

print("spectral vs orbit:", np.abs(p_spec.matrix - p_orb.matrix).max())
print("spectral vs Haar MC (Frobenius):", np.linalg.norm(p_spec.matrix - p_mc.matrix))
print("residuals:", p_spec.residuals())

for branch in ("plus", "minus"):
    rep = charge_report(2, 1, branch)
    print(f"{branch:5s} f = {rep.f_numeric:.6f}  q = {rep.q:+.7f}  c1 = {rep.c1:+.7f}")

# exact values at N = 1, nu = 1/2
print("80 sqrt(2) / 81 =", 80 * np.sqrt(2) / 81)
print("-32 sqrt(2) / 81 =", -32 * np.sqrt(2) / 81)
