import itertools
from math import pi

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzybundle.calculus import (
    FiberForm,
    derive,
    exterior_d,
    fuzzy_context,
    graded_commutator,
    invariant_two_form,
    nc_integral,
    theta,
    theta_basis,
    two_form_coefficient,
    volume_form,
    wedge,
)
from fuzzybundle.errors import DimensionMismatch, DomainError, ZeroBasis
from fuzzybundle.projectors import random_su2_axis_angle, rotate_vectors
from fuzzybundle.su2 import make_spin_rep


def _rand(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def _rand_form(rng, degree, n, fiber_dim=1):
    k = len(list(itertools.combinations(range(3), degree)))
    return FiberForm(degree, tuple(_rand(rng, n) for _ in range(k)), n, fiber_dim)


def test_context_relations():
    for two_N in range(1, 11):
        ctx = fuzzy_context(two_N)
        Y = ctx.Y
        r = np.sqrt(ctx.N * (ctx.N + 1))
        assert np.abs(sum(y @ y for y in Y) - np.eye(ctx.dim)).max() < 1e-12
        assert np.abs(Y[0] @ Y[1] - Y[1] @ Y[0] - 1j / r * Y[2]).max() < 1e-12


def test_context_needs_positive_spin():
    with pytest.raises(DomainError):
        fuzzy_context(0)


def test_derive_examples():
    ctx = fuzzy_context(4)
    assert np.abs(derive(ctx, 3, ctx.Y[2])).max() == 0
    assert np.abs(derive(ctx, 1, ctx.Y[2]) + 1j * ctx.Y[1]).max() < 1e-12
    assert np.abs(derive(ctx, 1, np.eye(ctx.dim))).max() == 0


def test_derive_with_fiber_matches_kron(rng):
    ctx = fuzzy_context(3)
    phi = _rand(rng, 4 * 3)
    for a in (1, 2, 3):
        xi = np.kron(ctx.X[a - 1], np.eye(3))
        assert np.abs(derive(ctx, a, phi, 3) - (xi @ phi - phi @ xi)).max() < 1e-12


def test_derive_dimension_mismatch():
    ctx = fuzzy_context(2)
    with pytest.raises(DimensionMismatch):
        derive(ctx, 1, np.eye(4))


def test_d_theta_hand_value():
    ctx = fuzzy_context(3)
    dth = exterior_d(ctx, theta(ctx))
    assert np.abs(dth(1, 2) + 1j * ctx.X[2]).max() < 1e-12
    assert np.abs(wedge(theta(ctx), theta(ctx))(1, 2) - 1j * ctx.X[2]).max() < 1e-12


def test_d_of_constant_is_zero():
    ctx = fuzzy_context(5)
    assert exterior_d(ctx, FiberForm.function(np.eye(ctx.dim))).is_zero


@pytest.mark.parametrize("two_N", range(1, 11))
def test_maurer_cartan(two_N):
    ctx = fuzzy_context(two_N)
    th = theta(ctx)
    assert (exterior_d(ctx, th) + wedge(th, th)).max_abs() < 1e-12


@pytest.mark.parametrize("two_N", range(1, 11))
def test_d_squared_zero(two_N, rng):
    ctx = fuzzy_context(two_N)
    n = ctx.dim
    phi = FiberForm.function(_rand(rng, n))
    assert exterior_d(ctx, exterior_d(ctx, phi)).max_abs() < 1e-11
    one = _rand_form(rng, 1, n)
    assert exterior_d(ctx, exterior_d(ctx, one)).max_abs() < 1e-11


def test_d_squared_with_fiber(rng):
    ctx = fuzzy_context(4)
    phi = FiberForm.function(_rand(rng, 15), fiber_dim=3)
    assert exterior_d(ctx, exterior_d(ctx, phi)).max_abs() < 1e-11


@pytest.mark.parametrize("two_N", [1, 3, 6, 10])
def test_d_is_minus_theta_commutator(two_N, rng):
    ctx = fuzzy_context(two_N)
    th = theta(ctx)
    for _ in range(20):
        phi = FiberForm.function(_rand(rng, ctx.dim))
        d_phi = exterior_d(ctx, phi)
        assert (d_phi + graded_commutator(th, phi)).max_abs() < 1e-11


def test_theta_basis_reconstructs_theta_and_d(rng):
    ctx = fuzzy_context(4)
    th = theta(ctx)
    assert np.array_equal(th(2), -ctx.X[1])
    rebuilt = FiberForm.zero(1, ctx.dim)
    for a in (1, 2, 3):
        rebuilt = rebuilt - wedge(FiberForm.function(ctx.X[a - 1]), theta_basis(ctx, a))
    assert all(np.array_equal(u, v) for u, v in zip(rebuilt.components, th.components))
    phi = _rand(rng, ctx.dim)
    d_phi = exterior_d(ctx, FiberForm.function(phi))
    expand = FiberForm.zero(1, ctx.dim)
    for a in (1, 2, 3):
        expand = expand + wedge(FiberForm.function(derive(ctx, a, phi)), theta_basis(ctx, a))
    assert all(np.array_equal(u, v) for u, v in zip(expand.components, d_phi.components))
    assert np.array_equal(theta_basis(ctx, 3)(3), np.eye(ctx.dim))


def test_theta_basis_wedge_pairing():
    ctx = fuzzy_context(2)
    tt = wedge(theta_basis(ctx, 1), theta_basis(ctx, 2))
    assert np.array_equal(tt(1, 2), np.eye(3))
    assert np.array_equal(tt(2, 1), -np.eye(3))
    assert not np.any(tt(1, 3))


def test_scalar_one_forms_anticommute(rng):
    ctx = fuzzy_context(3)
    n = ctx.dim
    a = FiberForm(1, tuple(c * np.eye(n) for c in rng.standard_normal(3)), n)
    b = FiberForm(1, tuple(c * np.eye(n) for c in rng.standard_normal(3)), n)
    assert (wedge(a, b) + wedge(b, a)).max_abs() < 1e-14


def test_wedge_associativity(rng):
    for two_N in (1, 4, 7):
        n = two_N + 1
        a, b, c = (_rand_form(rng, 1, n) for _ in range(3))
        left = wedge(wedge(a, b), c)
        right = wedge(a, wedge(b, c))
        assert (left - right).max_abs() < 1e-11


def test_wedge_overflow_is_zero_form(rng):
    a = _rand_form(rng, 2, 3)
    out = wedge(a, a)
    assert out.degree == 4 and out.components == () and out.is_zero
    ctx = fuzzy_context(2)
    top = exterior_d(ctx, _rand_form(rng, 3, 3))
    assert top.degree == 4 and top.is_zero


def test_form_evaluation_signs(rng):
    f = _rand_form(rng, 2, 3)
    assert np.array_equal(f(2, 1), -f(1, 2))
    assert not np.any(f(2, 2))
    g = _rand_form(rng, 3, 3)
    assert np.array_equal(g(3, 1, 2), g(1, 2, 3))
    assert np.array_equal(g(2, 1, 3), -g(1, 2, 3))


def test_nc_integral_examples():
    ctx = fuzzy_context(6)
    assert nc_integral(ctx, np.eye(ctx.dim)) == 1
    assert abs(nc_integral(ctx, ctx.Y[2])) < 1e-15
    assert abs(nc_integral(ctx, ctx.Y[2] @ ctx.Y[2]) - 1 / 3) < 1e-12
    with pytest.raises(DimensionMismatch):
        nc_integral(ctx, np.eye(3))


@pytest.mark.parametrize("two_N", [1, 2, 5, 9])
def test_volume_form_integrates_to_one(two_N):
    ctx = fuzzy_context(two_N)
    omega = volume_form(ctx)
    lam, res = two_form_coefficient(omega, omega)
    assert abs(lam * nc_integral(ctx, np.eye(ctx.dim)) - 1) < 1e-12
    assert res < 1e-14


@pytest.mark.parametrize("two_N", [1, 2, 3, 6, 11])
def test_volume_form_on_invariant_line(two_N):
    """omega = kappa / (8 pi) * eps_abc X_c Theta_a ^ Theta_b, kappa = (1/2 - N(N+1)) / (N(N+1))^(3/2)."""
    ctx = fuzzy_context(two_N)
    n2 = ctx.N * (ctx.N + 1)
    kappa = (0.5 - n2) / n2 ** 1.5
    lam, res = two_form_coefficient(volume_form(ctx), invariant_two_form(ctx))
    assert res < 1e-12
    assert abs(lam - kappa / (8 * pi)) < 1e-12


def test_volume_form_spin_one_component_is_function_of_x3():
    ctx = fuzzy_context(2)
    w12 = volume_form(ctx)(1, 2)
    assert np.abs(w12 - np.diag(np.diag(w12))).max() < 1e-14
    # a diagonal matrix on three points is a quadratic polynomial in X3
    x3 = np.diag(ctx.X[2]).real
    coeffs = np.polyfit(x3, np.diag(w12).real, 2)
    assert np.abs(np.polyval(coeffs, x3) - np.diag(w12).real).max() < 1e-14
    assert np.abs(w12 - w12.conj().T).max() < 1e-14


def _rotation(two_N, seed):
    """Spin-N matrix of a random SU(2) element and its SO(3) image on the X_a."""
    rng = np.random.default_rng(seed)
    axes, angles = random_su2_axis_angle(rng, 1)
    X = np.array(make_spin_rep(two_N).generators)
    eye = np.eye(two_N + 1)
    U = np.column_stack([rotate_vectors(X, axes, angles, e)[0] for e in eye])
    # U X_a U^dagger = sum_b R[b, a] X_b
    R = np.array([[np.trace(X[b] @ U @ X[a] @ U.conj().T).real / np.trace(X[b] @ X[b]).real
                   for a in range(3)] for b in range(3)])
    return U, R


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_volume_form_is_rotation_equivariant(seed):
    two_N = 4
    ctx = fuzzy_context(two_N)
    U, R = _rotation(two_N, seed)
    assert np.abs(R @ R.T - np.eye(3)).max() < 1e-10
    omega = volume_form(ctx)
    for a, b in itertools.combinations(range(3), 2):
        lhs = U @ omega(a + 1, b + 1) @ U.conj().T
        rhs = sum(R[c, a] * R[d, b] * omega(c + 1, d + 1) for c in range(3) for d in range(3))
        assert np.abs(lhs - rhs).max() < 1e-10


def test_two_form_coefficient_examples():
    ctx = fuzzy_context(3)
    omega = volume_form(ctx)
    lam, res = two_form_coefficient(2.5 * omega, omega)
    assert abs(lam - 2.5) < 1e-14 and res < 1e-14
    lam, res = two_form_coefficient(FiberForm.zero(2, ctx.dim), omega)
    assert lam == 0 and res == 0
    with pytest.raises(ZeroBasis):
        two_form_coefficient(omega, FiberForm.zero(2, ctx.dim))


@given(two_N=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_leibniz_rule(two_N, seed):
    """d(a ^ b) = da ^ b + (-1)^deg(a) a ^ db for random 0- and 1-forms."""
    rng = np.random.default_rng(seed)
    ctx = fuzzy_context(two_N)
    n = ctx.dim
    for pa, pb in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        a, b = _rand_form(rng, pa, n), _rand_form(rng, pb, n)
        lhs = exterior_d(ctx, wedge(a, b))
        rhs = wedge(exterior_d(ctx, a), b) + (-1) ** pa * wedge(a, exterior_d(ctx, b))
        assert (lhs - rhs).max_abs() < 1e-10 * max(1.0, lhs.max_abs())
