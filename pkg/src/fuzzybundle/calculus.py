"""The fuzzy sphere algebra and its derivation-based differential calculus.

Forms of degree ``p`` are antisymmetric multilinear maps on the span of the
three derivations ``e_a = [X_a, .]`` with values in ``A_N (x) End(V)``. They
are stored by their values on strictly increasing index tuples. Evaluating a
form on derivations uses 1-based labels, ``form(1, 2)`` is the value on
``(e_1, e_2)``.

Wedge products use the unit-weight shuffle sum, e.g. for one-forms
``(a ^ b)(u, v) = a(u) b(v) - a(v) b(u)``; coefficients multiply as matrices
in the order written. With this convention ``d Theta + Theta ^ Theta = 0``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from math import comb, pi, sqrt

import numpy as np

from .errors import DimensionMismatch, DomainError, ZeroBasis
from .su2 import check_two_j, make_spin_rep

INDEX_TUPLES = {p: tuple(itertools.combinations(range(3), p)) for p in range(4)}


def levi_civita(a: int, b: int, c: int) -> int:
    """eps_abc on 0-based indices."""
    return (a - b) * (b - c) * (c - a) // 2


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _tuples(degree: int) -> tuple[tuple[int, ...], ...]:
    return INDEX_TUPLES.get(degree, ())


@dataclass(frozen=True, eq=False)
class FuzzyContext:
    """Spin-``N`` fuzzy sphere: ``X_a`` generators and ``Y_a = X_a / sqrt(N(N+1))``."""

    two_N: int
    X: tuple[np.ndarray, np.ndarray, np.ndarray]
    Y: tuple[np.ndarray, np.ndarray, np.ndarray]

    @property
    def N(self) -> float:
        return self.two_N / 2

    @property
    def dim(self) -> int:
        return self.two_N + 1

    def lifted(self, fiber_dim: int) -> tuple[np.ndarray, ...]:
        """``X_a (x) I_V`` for a fiber of dimension ``fiber_dim``."""
        return _lifted(self.two_N, fiber_dim)


@functools.lru_cache(maxsize=128)
def fuzzy_context(two_N: int) -> FuzzyContext:
    two_N = check_two_j(two_N, "two_N")
    if two_N == 0:
        raise DomainError("the fuzzy sphere needs N >= 1/2 (two_N >= 1)")
    rep = make_spin_rep(two_N)
    N = two_N / 2
    scale = 1.0 / sqrt(N * (N + 1))
    Y = tuple(x * scale for x in rep.generators)
    for y in Y:
        y.setflags(write=False)
    return FuzzyContext(two_N, rep.generators, Y)


@functools.lru_cache(maxsize=128)
def _lifted(two_N: int, fiber_dim: int) -> tuple[np.ndarray, ...]:
    eye = np.eye(fiber_dim)
    out = tuple(np.kron(x, eye) for x in make_spin_rep(two_N).generators)
    for m in out:
        m.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class FiberForm:
    """Degree-``p`` form with coefficients in ``A_N (x) End(V)``.

    ``components`` follows ``INDEX_TUPLES[degree]``; forms of degree above 3
    have no components and are identically zero.
    """

    degree: int
    components: tuple[np.ndarray, ...]
    dim: int
    fiber_dim: int = 1

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if len(self.components) != len(_tuples(self.degree)):
            raise ValueError(
                f"degree {self.degree} needs {len(_tuples(self.degree))} components, "
                f"got {len(self.components)}"
            )
        for c in self.components:
            if c.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"component shape {c.shape} != {(self.dim, self.dim)}")

    @classmethod
    def zero(cls, degree: int, dim: int, fiber_dim: int = 1) -> "FiberForm":
        comps = tuple(np.zeros((dim, dim), dtype=complex) for _ in _tuples(degree))
        return cls(degree, comps, dim, fiber_dim)

    @classmethod
    def function(cls, matrix: np.ndarray, fiber_dim: int = 1) -> "FiberForm":
        """Wrap a matrix as a 0-form."""
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {matrix.shape}")
        return cls(0, (matrix,), matrix.shape[0], fiber_dim)

    @property
    def is_zero(self) -> bool:
        return not any(np.any(c) for c in self.components)

    def __call__(self, *indices: int) -> np.ndarray:
        """Value on ``(e_i1, ..., e_ip)``; labels are 1-based and may be unordered."""
        if len(indices) != self.degree:
            raise ValueError(f"a {self.degree}-form takes {self.degree} derivations")
        return self._value([i - 1 for i in indices])

    def _value(self, idx) -> np.ndarray:
        if len(set(idx)) != len(idx):
            return np.zeros((self.dim, self.dim), dtype=complex)
        key = tuple(sorted(idx))
        comp = self.components[_tuples(self.degree).index(key)]
        return comp if _perm_sign(idx) > 0 else -comp

    def _check_compatible(self, other: "FiberForm") -> None:
        if self.dim != other.dim or self.fiber_dim != other.fiber_dim:
            raise DimensionMismatch(
                f"forms live on different spaces: ({self.dim}, {self.fiber_dim}) "
                f"vs ({other.dim}, {other.fiber_dim})"
            )

    def _map(self, fn) -> "FiberForm":
        return FiberForm(self.degree, tuple(fn(c) for c in self.components), self.dim, self.fiber_dim)

    def __add__(self, other: "FiberForm") -> "FiberForm":
        self._check_compatible(other)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        comps = tuple(a + b for a, b in zip(self.components, other.components))
        return FiberForm(self.degree, comps, self.dim, self.fiber_dim)

    def __neg__(self) -> "FiberForm":
        return self._map(lambda c: -c)

    def __sub__(self, other: "FiberForm") -> "FiberForm":
        return self + (-other)

    def __mul__(self, scalar) -> "FiberForm":
        return self._map(lambda c: scalar * c)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "FiberForm":
        return self._map(lambda c: c / scalar)

    def max_abs(self) -> float:
        return max((float(np.abs(c).max()) for c in self.components), default=0.0)

    def hs_norm(self) -> float:
        return sqrt(sum(float(np.vdot(c, c).real) for c in self.components))

    def fiber_trace(self) -> "FiberForm":
        """Partial trace over ``End(V)``, giving a scalar-fiber form."""
        base = self.dim // self.fiber_dim
        d = self.fiber_dim
        comps = tuple(c.reshape(base, d, base, d).trace(axis1=1, axis2=3) for c in self.components)
        return FiberForm(self.degree, comps, base, 1)


def lift_apply(x: np.ndarray, phi: np.ndarray, fiber_dim: int) -> np.ndarray:
    """``(x (x) I) @ phi`` without forming the Kronecker product."""
    if fiber_dim == 1:
        return x @ phi
    base = x.shape[0]
    blocks = phi.reshape(base, fiber_dim * phi.shape[1])
    return (x @ blocks).reshape(phi.shape)


def apply_lift(phi: np.ndarray, x: np.ndarray, fiber_dim: int) -> np.ndarray:
    """``phi @ (x (x) I)`` without forming the Kronecker product."""
    if fiber_dim == 1:
        return phi @ x
    base = x.shape[0]
    t = phi.reshape(phi.shape[0], base, fiber_dim).transpose(0, 2, 1)
    return (t @ x).transpose(0, 2, 1).reshape(phi.shape)


def derive(ctx: FuzzyContext, a: int, phi: np.ndarray, fiber_dim: int = 1) -> np.ndarray:
    """``e_a(phi) = [X_a (x) I_V, phi]`` with ``a`` in {1, 2, 3}."""
    if a not in (1, 2, 3):
        raise ValueError(f"derivation index must be 1, 2 or 3, got {a}")
    phi = np.asarray(phi)
    size = ctx.dim * fiber_dim
    if phi.shape != (size, size):
        raise DimensionMismatch(f"expected shape {(size, size)}, got {phi.shape}")
    x = ctx.X[a - 1]
    return lift_apply(x, phi, fiber_dim) - apply_lift(phi, x, fiber_dim)


def _check_ctx(ctx: FuzzyContext, form: FiberForm) -> None:
    if form.dim != ctx.dim * form.fiber_dim:
        raise DimensionMismatch(
            f"form of size {form.dim} with fiber {form.fiber_dim} does not match two_N={ctx.two_N}"
        )


def exterior_d(ctx: FuzzyContext, form: FiberForm) -> FiberForm:
    """Exterior derivative from the Chevalley-Eilenberg formula.

    Uses ``[e_a, e_b] = i eps_abc e_c``. A 3-form maps to the (empty) zero
    4-form.
    """
    _check_ctx(ctx, form)
    p = form.degree
    fd = form.fiber_dim
    comps = []
    for u in _tuples(p + 1):
        acc = np.zeros((form.dim, form.dim), dtype=complex)
        for i, ui in enumerate(u):
            rest = u[:i] + u[i + 1:]
            acc += (-1) ** i * derive(ctx, ui + 1, form._value(rest), fd)
        for i, j in itertools.combinations(range(p + 1), 2):
            rest = [u[k] for k in range(p + 1) if k not in (i, j)]
            for c in range(3):
                e = levi_civita(u[i], u[j], c)
                if e:
                    acc += (-1) ** (i + j) * 1j * e * form._value([c] + rest)
        comps.append(acc)
    return FiberForm(p + 1, tuple(comps), form.dim, fd)


def wedge(alpha: FiberForm, beta: FiberForm) -> FiberForm:
    """Unit-weight shuffle product; degree above 3 gives the zero form."""
    alpha._check_compatible(beta)
    p, q = alpha.degree, beta.degree
    comps = []
    for t in _tuples(p + q):
        acc = np.zeros((alpha.dim, alpha.dim), dtype=complex)
        for s in itertools.combinations(range(p + q), p):
            r = tuple(k for k in range(p + q) if k not in s)
            sign = _perm_sign(s + r)
            acc += sign * (alpha._value([t[k] for k in s]) @ beta._value([t[k] for k in r]))
        comps.append(acc)
    return FiberForm(p + q, tuple(comps), alpha.dim, alpha.fiber_dim)


def graded_commutator(alpha: FiberForm, beta: FiberForm) -> FiberForm:
    return wedge(alpha, beta) - (-1) ** (alpha.degree * beta.degree) * wedge(beta, alpha)


def theta(ctx: FuzzyContext, fiber_dim: int = 1) -> FiberForm:
    """Maurer-Cartan one-form, ``Theta(e_a) = -X_a``."""
    comps = tuple(-x for x in ctx.lifted(fiber_dim))
    return FiberForm(1, comps, ctx.dim * fiber_dim, fiber_dim)


def theta_basis(ctx: FuzzyContext, a: int, fiber_dim: int = 1) -> FiberForm:
    """Dual basis one-form with ``Theta_a(e_b) = delta_ab I``."""
    if a not in (1, 2, 3):
        raise ValueError(f"index must be 1, 2 or 3, got {a}")
    size = ctx.dim * fiber_dim
    comps = tuple(
        np.eye(size, dtype=complex) if b == a - 1 else np.zeros((size, size), dtype=complex)
        for b in range(3)
    )
    return FiberForm(1, comps, size, fiber_dim)


def invariant_two_form(ctx: FuzzyContext) -> FiberForm:
    """``eps_abc X_c Theta_a ^ Theta_b``; spans the SU(2)-invariant two-forms."""
    out = FiberForm.zero(2, ctx.dim)
    for a, b, c in itertools.permutations(range(3)):
        x_c = FiberForm.function(ctx.X[c])
        tt = wedge(theta_basis(ctx, a + 1), theta_basis(ctx, b + 1))
        out = out + levi_civita(a, b, c) * wedge(x_c, tt)
    return out


@functools.lru_cache(maxsize=64)
def volume_form(ctx: FuzzyContext) -> FiberForm:
    """``omega = eps_abc Y_a dY_b ^ dY_c / (8 pi)``."""
    dY = [exterior_d(ctx, FiberForm.function(y)) for y in ctx.Y]
    out = FiberForm.zero(2, ctx.dim)
    for a, b, c in itertools.permutations(range(3)):
        term = wedge(FiberForm.function(ctx.Y[a]), wedge(dY[b], dY[c]))
        out = out + levi_civita(a, b, c) * term
    return out / (8 * pi)


def nc_integral(ctx: FuzzyContext, phi: np.ndarray) -> complex:
    """Integral of ``phi * omega``: the normalized trace ``Tr(phi) / (2N + 1)``."""
    phi = np.asarray(phi)
    if phi.shape != (ctx.dim, ctx.dim):
        raise DimensionMismatch(f"expected shape {(ctx.dim, ctx.dim)}, got {phi.shape}")
    return complex(np.trace(phi)) / ctx.dim


def two_form_coefficient(G: FiberForm, basis: FiberForm) -> tuple[complex, float]:
    """Hilbert-Schmidt projection of ``G`` onto the line spanned by ``basis``.

    Returns ``(lam, residual)`` with ``residual = ||G - lam basis|| / ||G||``
    (0 when ``G`` vanishes).
    """
    if G.degree != 2 or basis.degree != 2:
        raise ValueError("two_form_coefficient expects two-forms")
    G._check_compatible(basis)
    bb = sum(np.vdot(b, b) for b in basis.components).real
    if bb == 0:
        raise ZeroBasis("basis two-form is zero")
    lam = complex(sum(np.vdot(b, g) for b, g in zip(basis.components, G.components)) / bb)
    g_norm = G.hs_norm()
    if g_norm == 0:
        return lam, 0.0
    return lam, (G - lam * basis).hs_norm() / g_norm
