"""
Approach to the commutative limit
=================================

As N grows, c1 tends to -2 nu on the plus branch and +2 nu on the minus
branch. The error roughly halves each time N doubles. Plots c1 against 1/N
when matplotlib is available.
"""

import numpy as np

from fuzzybundle import SweepConfig, run_sweep

records = run_sweep(SweepConfig(two_nu_list=(1, 2, 3, 4), two_N_max=60))

for two_nu in (1, 2, 3, 4):
    for branch in ("plus", "minus"):
        rows = [r for r in records if r.two_nu == two_nu and r.branch.value == branch]
        last = rows[-1]
        print(f"nu={two_nu / 2:3.1f} {branch:5s} k={last.k_limit:+d}  c1(N={last.two_N / 2:g}) = {last.c1:+.5f}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for two_nu in (1, 2, 3, 4):
        for branch, marker in (("plus", "o"), ("minus", "s")):
            rows = [r for r in records if r.two_nu == two_nu and r.branch.value == branch]
            ax.plot([r.inv_N for r in rows], [r.c1 for r in rows], marker, ms=3,
                    label=f"nu={two_nu / 2:g} {branch}")
    ax.axhline(0, color="k", lw=0.5)
    ax.set_xlabel("1/N")
    ax.set_ylabel("c1")
    ax.legend(fontsize=6, ncol=2)
    fig.tight_layout()
    fig.savefig("continuum_limit.png", dpi=120)
    print("wrote continuum_limit.png")
