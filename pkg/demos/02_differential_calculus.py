"""
Derivation-based calculus on the fuzzy sphere
=============================================

Forms are evaluated on the three derivations e_a = [X_a, .]. The Maurer-Cartan
form Theta(e_a) = -X_a generates everything, and the SU(2)-invariant volume
form omega integrates to one.
"""

import numpy as np

from fuzzybundle import exterior_d, fuzzy_context, nc_integral, theta, volume_form, wedge
from fuzzybundle.calculus import FiberForm, two_form_coefficient

ctx = fuzzy_context(4)  # N = 2, 5x5 matrices
th = theta(ctx)

# dTheta + Theta ^ Theta = 0
print("Maurer-Cartan residual:", (exterior_d(ctx, th) + wedge(th, th)).max_abs())

# d^2 = 0 on a random function
rng = np.random.default_rng(0)
phi = FiberForm.function(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
print("d^2 phi:", exterior_d(ctx, exterior_d(ctx, phi)).max_abs())

# the volume form is normalized
omega = volume_form(ctx)
lam, _ = two_form_coefficient(omega, omega)
print("integral of omega:", lam * nc_integral(ctx, np.eye(ctx.dim)))
