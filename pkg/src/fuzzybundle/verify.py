"""Aggregated invariant checks for a single ``(N, nu, branch)`` point."""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import calculus as calc
from .chern import (
    charge_report,
    connection_consistency,
    curvature_two_form,
    d_projector,
    lambda_mu_check,
    lemma3_check,
    trace_identity_residual,
)
from .projectors import projector_haar_mc, projector_spectral
from .su2 import Branch, binomial_identity, highest_weight, total_raising, total_x3

HAAR_TOL = 0.05
HAAR_REFERENCE_SAMPLES = 200_000


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tol


def haar_tolerance(samples: int) -> float:
    """0.05 at 2e5 samples, widened like the 1/sqrt(samples) MC error below that."""
    return HAAR_TOL * max(1.0, sqrt(HAAR_REFERENCE_SAMPLES / samples))


def _random_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def calculus_checks(ctx: calc.FuzzyContext, rng: np.random.Generator) -> dict[str, float]:
    n = ctx.dim
    phi = calc.FiberForm.function(_random_matrix(rng, n))
    one_form = calc.FiberForm(1, tuple(_random_matrix(rng, n) for _ in range(3)), n)
    th = calc.theta(ctx)
    d_phi = calc.exterior_d(ctx, phi)
    omega = calc.volume_form(ctx)
    N2 = ctx.N * (ctx.N + 1)
    kappa = (0.5 - N2) / N2 ** 1.5
    omega_line, omega_res = calc.two_form_coefficient(omega, calc.invariant_two_form(ctx))
    alphas = [calc.FiberForm(1, tuple(_random_matrix(rng, n) for _ in range(3)), n) for _ in range(3)]
    left = calc.wedge(calc.wedge(alphas[0], alphas[1]), alphas[2])
    right = calc.wedge(alphas[0], calc.wedge(alphas[1], alphas[2]))
    lam, _ = calc.two_form_coefficient(omega, omega)
    return {
        "calculus.d_squared_0form": calc.exterior_d(ctx, d_phi).max_abs(),
        "calculus.d_squared_1form": calc.exterior_d(ctx, calc.exterior_d(ctx, one_form)).max_abs(),
        "calculus.maurer_cartan": (calc.exterior_d(ctx, th) + calc.wedge(th, th)).max_abs(),
        "calculus.d_is_theta_commutator": (d_phi + calc.graded_commutator(th, phi)).max_abs(),
        "calculus.volume_integral": abs(lam * calc.nc_integral(ctx, np.eye(n)) - 1),
        "calculus.volume_form_line": abs(omega_line - kappa / (8 * np.pi)) + omega_res,
        "calculus.wedge_associativity": (left - right).max_abs(),
    }


def run_checks(
    two_N: int,
    two_nu: int,
    branch: Branch | str,
    suite: str = "core",
    tol: float = 1e-9,
    seed: int = 0,
    samples: int = HAAR_REFERENCE_SAMPLES,
) -> list[Check]:
    """Every invariant for one point; ``suite='full'`` adds the Haar-MC oracle."""
    branch = Branch.parse(branch)
    rng = np.random.default_rng(seed)
    ctx = calc.fuzzy_context(two_N)
    p = projector_spectral(two_N, two_nu, branch)
    res: dict[str, float] = {}

    h = highest_weight(two_N, two_nu, branch)
    block = p.block_dim - 1
    res["su2.highest_weight_norm"] = abs(np.linalg.norm(h.coefficients) - 1)
    res["su2.highest_weight_raising"] = float(np.linalg.norm(total_raising(two_N, two_nu) @ h.coefficients))
    res["su2.highest_weight_x3"] = float(
        np.abs(total_x3(two_N, two_nu) @ h.coefficients - block / 2 * h.coefficients).max()
    )
    n, l = two_N, two_nu
    for variant in ("A", "B", "C"):
        if variant != "A" and l >= n:
            continue
        lhs, rhs = binomial_identity(variant, n, l)
        res[f"su2.binomial_{variant}"] = float(abs(lhs - rhs))

    report = charge_report(two_N, two_nu, branch)
    for key, value in report.residuals.items():
        prefix = "projector" if key in ("hermiticity", "idempotence", "trace", "equivariance",
                                        "spectral_vs_orbit") else "chern"
        res[f"{prefix}.{key}"] = value
    eig = np.linalg.eigvalsh(p.matrix)
    res["projector.spectrum"] = float(np.minimum(np.abs(eig), np.abs(eig - 1)).max())
    res["projector.rank"] = float(abs(p.rank() - p.block_dim))

    res.update(calculus_checks(ctx, rng))

    dp = d_projector(ctx, p)
    lem = lemma3_check(ctx, p, h, dp)
    res["chern.B_equals_C_plus_iD"] = abs(lem.B - (lem.C + 1j * lem.D))
    res["chern.C_imaginary"] = abs(lem.C.real)
    psi = _random_matrix(rng, p.matrix.shape[0]) @ p.matrix
    res["chern.connection"] = connection_consistency(ctx, p, psi)
    res["chern.trace_identity"] = trace_identity_residual(ctx, p, dp)
    res["chern.dF"] = calc.exterior_d(ctx, curvature_two_form(ctx, p, dp)).max_abs()

    record = lambda_mu_check(two_N, two_nu, branch)
    for name, (num, closed) in record.pairs().items():
        res[f"highest_weight.{name}"] = abs(num - closed)
    res["highest_weight.pw_equals_lambda_v"] = record.pw_residual

    checks = [Check(name, float(value), tol) for name, value in res.items()]
    if suite == "full":
        p_mc = projector_haar_mc(two_N, two_nu, branch, samples, seed)
        gap = float(np.linalg.norm(p_mc.matrix - p.matrix))
        checks.append(Check("projector.haar_mc_frobenius", gap, haar_tolerance(samples)))
    elif suite != "core":
        raise ValueError(f"unknown suite {suite!r}")
    return checks
