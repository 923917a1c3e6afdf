"""Curvature, Chern character and topological charges of fuzzy line bundles.

The projector ``p`` acts on ``[N] (x) [nu]`` and ``d`` acts on the ``A_N``
factor only, ``dp(e_a) = [X_a (x) I, p]``. The curvature two-form
``F = Tr_2 p (dp ^ dp)`` is ``f * eps_abc X_c Theta_a ^ Theta_b`` for a scalar
``f``. With the unit-weight wedge, ``F(e_a, e_b) = M_ab - M_ba = 2 f eps_abc X_c``
where ``M_ab = Tr_2(p dp(e_a) dp(e_b))``. Only the antisymmetric part of
``M`` is fixed, ``(M_ab - M_ba) / 2 = f eps_abd X_d``; the symmetric part is
nonzero (``M_aa != 0``) and drops out of ``F``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, pi

import numpy as np

from .calculus import (
    FiberForm,
    fuzzy_context,
    FuzzyContext,
    exterior_d,
    invariant_two_form,
    levi_civita,
    lift_apply,
    nc_integral,
    two_form_coefficient,
    volume_form,
    wedge,
)
from .errors import (
    BranchMismatch,
    DimensionMismatch,
    DomainError,
    ModuleMembershipError,
    NonRealResult,
)
from .projectors import EquivariantProjector, projector_orbit, projector_spectral
from .su2 import (
    Branch,
    WeightVector,
    check_branch_domain,
    check_two_j,
    highest_weight,
    make_spin_rep,
    total_lowering,
)


def _matrix(p) -> np.ndarray:
    return p.matrix if isinstance(p, EquivariantProjector) else np.asarray(p)


def _fiber_dim(ctx: FuzzyContext, p) -> int:
    m = _matrix(p)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % ctx.dim:
        raise DimensionMismatch(f"projector of shape {m.shape} does not fit two_N={ctx.two_N}")
    if isinstance(p, EquivariantProjector) and p.two_N != ctx.two_N:
        raise DimensionMismatch(f"projector built for two_N={p.two_N}, context has {ctx.two_N}")
    return m.shape[0] // ctx.dim


def d_projector(ctx: FuzzyContext, p) -> FiberForm:
    """``dp`` as a one-form with values in ``A_N (x) End(V)``."""
    fd = _fiber_dim(ctx, p)
    return exterior_d(ctx, FiberForm.function(_matrix(p), fd))


def chern_component(ctx: FuzzyContext, p, r: int, dp: FiberForm | None = None) -> FiberForm:
    """``Ch_r(p) = Tr_2 p (dp)^(2r) / r!`` as a scalar-fiber ``2r``-form.

    ``r = 0`` is the rank function ``Tr_2 p``; every ``r >= 2`` is the zero form
    because there are no forms above degree 3.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    m = _matrix(p)
    fd = _fiber_dim(ctx, p)
    if dp is None and r > 0:
        dp = d_projector(ctx, p)
    power = FiberForm.function(m, fd)
    for _ in range(2 * r):
        power = wedge(power, dp)
    return power.fiber_trace() / factorial(r)


def curvature_two_form(ctx: FuzzyContext, p, dp: FiberForm | None = None) -> FiberForm:
    """``F = Tr_2 p (dp ^ dp)``."""
    return chern_component(ctx, p, 1, dp)


def curvature_components(ctx: FuzzyContext, p, dp: FiberForm | None = None) -> np.ndarray:
    """Single-term coefficients ``M[a, b] = Tr_2(p dp(e_a) dp(e_b))``, 0-based.

    The antisymmetric part is ``f eps_abd X_d``; the symmetric part is not zero.
    """
    m = _matrix(p)
    fd = _fiber_dim(ctx, p)
    dp = dp if dp is not None else d_projector(ctx, p)
    out = np.zeros((3, 3, ctx.dim, ctx.dim), dtype=complex)
    for a, b in itertools.product(range(3), repeat=2):
        prod = m @ dp(a + 1) @ dp(b + 1)
        out[a, b] = prod.reshape(ctx.dim, fd, ctx.dim, fd).trace(axis1=1, axis2=3)
    return out


def _eps_trace(ctx: FuzzyContext, p, dp: FiberForm) -> complex:
    """``eps_abc Tr(p dp(e_a) dp(e_b) (X_c (x) I))`` over the full tensor space."""
    m = _matrix(p)
    fd = _fiber_dim(ctx, p)
    xp = [lift_apply(x, m, fd).T for x in ctx.X]
    total = 0j
    for a, b, c in itertools.permutations(range(3)):
        # Tr(A B) = sum(A * B.T) with A = dp_a dp_b, B = (X_c (x) I) p
        total += levi_civita(a, b, c) * np.sum((dp(a + 1) @ dp(b + 1)) * xp[c])
    return complex(total)


def extract_f(ctx: FuzzyContext, p, dp: FiberForm | None = None) -> complex:
    """``f = eps_abc Tr(p dp(e_a) dp(e_b) X_c) / (2N(N+1)(2N+1))``."""
    dp = dp if dp is not None else d_projector(ctx, p)
    N = ctx.N
    return _eps_trace(ctx, p, dp) / (2 * N * (N + 1) * (2 * N + 1))


def f_closed_exact(two_N: int, two_nu: int, branch: Branch | str) -> Fraction:
    """Rational ``y`` with ``f = i y``."""
    branch = Branch.parse(branch)
    two_N = check_two_j(two_N, "two_N")
    two_nu = check_two_j(two_nu, "two_nu")
    if two_N < 1:
        raise DomainError("closed forms need N >= 1/2")
    check_branch_domain(two_N, two_nu, branch)
    N, nu = Fraction(two_N, 2), Fraction(two_nu, 2)
    if branch is Branch.PLUS:
        return -N * nu * (N + nu + 1) * (N + nu + Fraction(1, 2)) / (
            (N + nu) ** 2 * (2 * N + 1) * (N + 1)
        )
    return nu * (N + 1) * (N - nu) * (2 * N - 2 * nu + 1) / (
        2 * N * (2 * N + 1) * (N - nu + 1) ** 2
    )


def f_closed_form(two_N: int, two_nu: int, branch: Branch | str) -> complex:
    return complex(0.0, float(f_closed_exact(two_N, two_nu, branch)))


def charge_factor(two_N: int) -> complex:
    """``(4/i) (N(N+1))^(3/2) / (1/2 - N(N+1))``, the map from ``f`` to ``q``."""
    n2 = (two_N / 2) * (two_N / 2 + 1)
    return (4 / 1j) * n2 ** 1.5 / (0.5 - n2)


def charge_q(f: complex, two_N: int, tol: float = 1e-10) -> float:
    raw = charge_factor(two_N) * complex(f)
    if abs(raw.imag) > tol * max(1.0, abs(raw)):
        raise NonRealResult(f"q has imaginary part {raw.imag:.3e}")
    return raw.real


def k_limit(two_nu: int, branch: Branch | str) -> int:
    """``lim c1 = -2 nu`` for ``[N + nu]`` and ``+2 nu`` for ``[N - nu]``."""
    return -Branch.parse(branch).sign * two_nu


@dataclass
class Lemma3Report:
    lhs: complex
    rhs: complex
    B: complex
    C: complex
    D: float

    @property
    def gap(self) -> float:
        return abs(self.lhs - self.rhs) / max(1.0, abs(self.lhs))


def lemma3_check(ctx: FuzzyContext, p: EquivariantProjector, h: WeightVector,
                 dp: FiberForm | None = None, lhs: complex | None = None) -> Lemma3Report:
    """Compare the full trace with ``(2s+1) eps_abc <h|[X_a,p][X_b,p]X_c|h>``.

    Also returns ``B = C + i D`` with ``C = eps_abc <h|X_a p X_b p X_c|h>`` and
    ``D = -<h|X_a p X_a|h>``.
    """
    if Branch.parse(h.branch) is not p.branch or (h.two_n, h.two_l) != (p.two_N, p.two_nu):
        raise BranchMismatch(
            f"weight vector ({h.two_n}, {h.two_l}, {h.branch.value}) does not match projector "
            f"({p.two_N}, {p.two_nu}, {p.branch.value})"
        )
    dp = dp if dp is not None else d_projector(ctx, p)
    m = p.matrix
    lifted = ctx.lifted(p.fiber_dim)
    vec = h.coefficients
    xh = [x @ vec for x in lifted]
    B = C = 0j
    for a, b, c in itertools.permutations(range(3)):
        e = levi_civita(a, b, c)
        B += e * np.vdot(vec, dp(a + 1) @ (dp(b + 1) @ xh[c]))
        C += e * np.vdot(xh[a], m @ (lifted[b] @ (m @ xh[c])))
    D = -sum(np.vdot(x, m @ x) for x in xh).real
    if lhs is None:
        lhs = _eps_trace(ctx, p, dp)
    return Lemma3Report(lhs=lhs, rhs=p.block_dim * complex(B), B=complex(B), C=complex(C), D=float(D))


@dataclass
class LambdaMuRecord:
    """Intermediate quantities for the highest-weight evaluation of ``f``.

    Numeric values come from explicit vectors and projectors; ``*_closed``
    values from the rational formulas. Entries that do not apply to a branch
    are ``None``.
    """

    two_n: int
    two_l: int
    branch: Branch
    lambda_numeric: float
    lambda_closed: float
    pw_residual: float
    mu_numeric: float | None = None
    mu_closed: float | None = None
    vX3v_numeric: float | None = None
    vX3v_closed: float | None = None
    wpw_numeric: float | None = None
    wpw_closed: float | None = None
    wpX3pw_numeric: float | None = None
    wpX3pw_closed: float | None = None
    B_numeric: complex = 0j
    B_closed: complex = 0j

    def pairs(self) -> dict[str, tuple[complex, complex]]:
        names = ["lambda", "mu", "vX3v", "wpw", "wpX3pw", "B"]
        out = {}
        for name in names:
            num = getattr(self, f"{name}_numeric")
            if num is not None:
                out[name] = (num, getattr(self, f"{name}_closed"))
        return out

    def max_gap(self) -> float:
        gaps = [abs(a - b) for a, b in self.pairs().values()]
        return max(gaps + [self.pw_residual])


def lambda_mu_check(two_n: int, two_l: int, branch: Branch | str) -> LambdaMuRecord:
    """Evaluate ``lambda``, ``mu``, ``<v|X3|v>``, ``<w|p|w>``, ``<w|pX3p|w>`` and ``B``.

    ``|w> = X_1 |h>`` and ``|v> = J_- |h>``; ``X_a`` acts on the ``[N]`` factor.
    """
    branch = Branch.parse(branch)
    check_branch_domain(two_n, two_l, branch)
    p = projector_spectral(two_n, two_l, branch).matrix
    rep = make_spin_rep(two_n)
    eye = np.eye(two_l + 1)
    X1, X3 = np.kron(rep.x1, eye), np.kron(rep.x3, eye)
    h = highest_weight(two_n, two_l, branch).coefficients
    w = X1 @ h
    v = total_lowering(two_n, two_l) @ h
    vv = np.vdot(v, v).real
    lam = np.vdot(v, w).real / vv
    pw_residual = float(np.abs(p @ w - lam * v).max())
    n, l = two_n, two_l
    B_num = _b_expectation(two_n, two_l, p, h)
    if branch is Branch.PLUS:
        lam_c = Fraction(n, 2 * (n + l))
        wpw_c = Fraction(n * n, 4 * (n + l))
        wpx3pw_c = Fraction(n * n, 8 * (n + l) ** 2) * (n * (n - 2) + n * l)
        B_c = 2j * (n - 1) * float(wpw_c) - 2j * float(wpx3pw_c) - 1j * n * n / 4
        pw = p @ w
        return LambdaMuRecord(
            n, l, branch, lam, float(lam_c), pw_residual,
            wpw_numeric=np.vdot(w, pw).real, wpw_closed=float(wpw_c),
            wpX3pw_numeric=np.vdot(pw, X3 @ pw).real, wpX3pw_closed=float(wpx3pw_c),
            B_numeric=B_num, B_closed=B_c,
        )
    lam_c = Fraction(n + 2, 2 * (n - l + 2))
    mu_c = Fraction(l, n + 2 - l)
    vx3v_c = Fraction((n + 2) * (n - l - 2) * (n - l), 2 * (n - l + 2))
    vv_c = n - l  # ||J_- |s, s>||^2 = 2s
    B_c = 2j * float(lam_c) ** 2 * ((n - 2 * float(mu_c) - 1) * vv_c - float(vx3v_c)) \
        - 1j * (n / 2 - float(mu_c)) ** 2
    mu = n / 2 - np.vdot(h, X3 @ h).real
    return LambdaMuRecord(
        n, l, branch, lam, float(lam_c), pw_residual,
        mu_numeric=mu, mu_closed=float(mu_c),
        vX3v_numeric=np.vdot(v, X3 @ v).real, vX3v_closed=float(vx3v_c),
        B_numeric=B_num, B_closed=B_c,
    )


def _b_expectation(two_n: int, two_l: int, p: np.ndarray, h: np.ndarray) -> complex:
    rep = make_spin_rep(two_n)
    eye = np.eye(two_l + 1)
    X = [np.kron(x, eye) for x in rep.generators]
    comm = [x @ p - p @ x for x in X]
    total = 0j
    for a, b, c in itertools.permutations(range(3)):
        total += levi_civita(a, b, c) * np.vdot(h, comm[a] @ (comm[b] @ (X[c] @ h)))
    return complex(total)


def connection_consistency(ctx: FuzzyContext, p, psi: np.ndarray, tol: float = 1e-12) -> float:
    """Residual of ``nabla^2 psi = -psi (dp ^ dp) p`` for ``nabla psi = (d psi) p``.

    ``psi`` is a square matrix over ``A_N (x) End(V)`` whose rows are elements
    of the row module ``{psi : psi p = psi}``.
    """
    m = _matrix(p)
    fd = _fiber_dim(ctx, p)
    psi = np.asarray(psi)
    if psi.shape != m.shape:
        raise DimensionMismatch(f"psi shape {psi.shape} != projector shape {m.shape}")
    if np.abs(psi @ m - psi).max() > tol * max(1.0, float(np.abs(psi).max())):
        raise ModuleMembershipError("psi @ p != psi")
    P = FiberForm.function(m, fd)
    nabla = wedge(exterior_d(ctx, FiberForm.function(psi, fd)), P)
    nabla2 = wedge(exterior_d(ctx, nabla), P)
    dp = d_projector(ctx, p)
    expected = -wedge(wedge(FiberForm.function(psi, fd), wedge(dp, dp)), P)
    return (nabla2 - expected).max_abs()


def trace_identity_residual(ctx: FuzzyContext, p, dp: FiberForm | None = None) -> float:
    """``Tr(p (dp ^ dp))`` over both factors vs ``Tr_N F`` per component."""
    m = _matrix(p)
    fd = _fiber_dim(ctx, p)
    dp = dp if dp is not None else d_projector(ctx, p)
    full = wedge(FiberForm.function(m, fd), wedge(dp, dp))
    F = full.fiber_trace()
    return max(
        abs(complex(np.trace(a)) - complex(np.trace(b)))
        for a, b in zip(full.components, F.components)
    )


@dataclass
class ChargeReport:
    two_N: int
    two_nu: int
    branch: Branch
    f_numeric: complex
    f_closed: complex
    q: float
    c1: float
    k_limit: int
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def to_dict(self) -> dict:
        return {
            "two_N": self.two_N,
            "two_nu": self.two_nu,
            "branch": self.branch.value,
            "f_numeric": {"real": self.f_numeric.real, "imag": self.f_numeric.imag},
            "f_closed": {"real": self.f_closed.real, "imag": self.f_closed.imag},
            "q": self.q,
            "c1": self.c1,
            "k_limit": self.k_limit,
            "residuals": dict(self.residuals),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ChargeReport":
        return cls(
            two_N=data["two_N"],
            two_nu=data["two_nu"],
            branch=Branch.parse(data["branch"]),
            f_numeric=complex(data["f_numeric"]["real"], data["f_numeric"]["imag"]),
            f_closed=complex(data["f_closed"]["real"], data["f_closed"]["imag"]),
            q=data["q"],
            c1=data["c1"],
            k_limit=data["k_limit"],
            residuals=dict(data["residuals"]),
        )


def chern_number(ctx: FuzzyContext, p: EquivariantProjector) -> ChargeReport:
    """Full charge report for one ``(N, nu, branch)`` point.

    ``c1`` is ``-q``. It is recomputed from the coefficient ``lam`` of ``F``
    along the volume form, ``c1 = (i / 2 pi) lam``, and the two routes are
    compared in the ``c1_routes`` residual.
    """
    _fiber_dim(ctx, p)
    dp = d_projector(ctx, p)
    F = curvature_two_form(ctx, p, dp)
    numerator = _eps_trace(ctx, p, dp)
    N = ctx.N
    f_num = numerator / (2 * N * (N + 1) * (2 * N + 1))
    f_cl = f_closed_form(p.two_N, p.two_nu, p.branch)
    q = charge_q(f_num, ctx.two_N)
    c1 = -q

    residuals = dict(p.residuals())
    residuals["spectral_vs_orbit"] = float(
        np.abs(projector_orbit(p.two_N, p.two_nu, p.branch).matrix - p.matrix).max()
    )
    residuals["f_gap"] = abs(f_num - f_cl) / max(1.0, abs(f_cl))
    residuals["re_f"] = abs(f_num.real)
    f_line, residuals["proportionality"] = two_form_coefficient(F, invariant_two_form(ctx))
    residuals["f_line_gap"] = abs(f_line - f_num) / max(1.0, abs(f_num))
    residuals["cocycle"] = exterior_d(ctx, F).max_abs()
    lam_omega, _ = two_form_coefficient(F, volume_form(ctx))
    c1_omega = (1j / (2 * pi)) * lam_omega * nc_integral(ctx, np.eye(ctx.dim))
    residuals["c1_routes"] = abs(c1_omega - c1)
    h = highest_weight(p.two_N, p.two_nu, p.branch)
    residuals["lemma3"] = lemma3_check(ctx, p, h, dp, lhs=numerator).gap
    return ChargeReport(
        two_N=p.two_N,
        two_nu=p.two_nu,
        branch=p.branch,
        f_numeric=f_num,
        f_closed=f_cl,
        q=q,
        c1=c1,
        k_limit=k_limit(p.two_nu, p.branch),
        residuals=residuals,
    )


def charge_report(two_N: int, two_nu: int, branch: Branch | str) -> ChargeReport:
    """``chern_number`` on the spectral projector for ``(two_N, two_nu, branch)``."""
    return chern_number(fuzzy_context(two_N), projector_spectral(two_N, two_nu, branch))
