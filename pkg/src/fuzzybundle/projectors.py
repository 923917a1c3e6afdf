"""Equivariant projectors onto the extremal blocks ``[N +- nu]`` of ``[N] (x) [nu]``.

Three independent constructions are provided:

* ``projector_spectral`` -- Lagrange interpolation in the total Casimir,
* ``projector_orbit`` -- orthonormal basis generated from the highest weight
  by repeated lowering,
* ``projector_haar_mc`` -- Monte-Carlo estimate of the Haar average
  ``(2s + 1) * E_g[pi(g) |h><h| pi(g)^-1]``.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .calculus import apply_lift, lift_apply
from .errors import NumericalBreakdown
from .su2 import (
    Branch,
    block_two_s,
    check_branch_domain,
    check_two_j,
    highest_weight,
    make_spin_rep,
    total_lowering,
)


class Method(str, enum.Enum):
    SPECTRAL = "spectral"
    ORBIT = "orbit"
    HAAR_MC = "haar_mc"


@dataclass(frozen=True, eq=False)
class TotalGenerators:
    """``J_a = X_a (x) I + I (x) X_a`` on ``[N] (x) [nu]`` and the Casimir ``J^2``."""

    two_N: int
    two_nu: int
    J: tuple[np.ndarray, np.ndarray, np.ndarray]
    casimir: np.ndarray

    def allowed_two_s(self) -> range:
        """Doubled spins present in the Clebsch-Gordan decomposition."""
        return range(abs(self.two_N - self.two_nu), self.two_N + self.two_nu + 1, 2)


@functools.lru_cache(maxsize=64)
def total_generators(two_N: int, two_nu: int) -> TotalGenerators:
    a = make_spin_rep(check_two_j(two_N, "two_N"))
    b = make_spin_rep(check_two_j(two_nu, "two_nu"))
    ia, ib = np.eye(a.dim), np.eye(b.dim)
    J = tuple(np.kron(xa, ib) + np.kron(ia, xb) for xa, xb in zip(a.generators, b.generators))
    casimir = sum(j @ j for j in J)
    for m in (*J, casimir):
        m.setflags(write=False)
    return TotalGenerators(two_N, two_nu, J, casimir)


@dataclass(frozen=True, eq=False)
class EquivariantProjector:
    two_N: int
    two_nu: int
    branch: Branch
    matrix: np.ndarray
    method: Method

    @property
    def block_dim(self) -> int:
        """``2(N +- nu) + 1``."""
        return block_two_s(self.two_N, self.two_nu, self.branch) + 1

    @property
    def fiber_dim(self) -> int:
        return self.two_nu + 1

    def rank(self) -> int:
        return int(np.count_nonzero(np.linalg.eigvalsh(self.matrix) > 0.5))

    def residuals(self) -> dict[str, float]:
        """Max-entry gaps of the projector identities."""
        p = self.matrix
        return {
            "hermiticity": float(np.abs(p - p.conj().T).max()),
            "idempotence": float(np.abs(p @ p - p).max()),
            "trace": abs(complex(np.trace(p)) - self.block_dim),
            "equivariance": max(
                float(np.abs(total_commutator(self.two_N, self.two_nu, a, p)).max())
                for a in (1, 2, 3)
            ),
        }


def total_commutator(two_N: int, two_nu: int, a: int, m: np.ndarray) -> np.ndarray:
    """``[J_a, m]`` using the Kronecker structure of ``J_a``."""
    x = make_spin_rep(two_N).generators[a - 1]
    y = make_spin_rep(two_nu).generators[a - 1]
    D, d = x.shape[0], y.shape[0]
    size = m.shape[0]
    out = lift_apply(x, m, d) - apply_lift(m, x, d)
    out += (y @ m.reshape(D, d, size)).reshape(m.shape)
    out -= (m.reshape(size, D, d) @ y).reshape(m.shape)
    return out


def _casimir_value(two_s: int) -> float:
    s = two_s / 2
    return s * (s + 1)


def projector_spectral(two_N: int, two_nu: int, branch: Branch | str) -> EquivariantProjector:
    """Projector from Lagrange interpolation of the total Casimir.

    ``p = prod_{s' != s} (J^2 - s'(s'+1)) / (s(s+1) - s'(s'+1))`` over the
    spins ``s'`` of ``[N] (x) [nu]``.
    """
    branch = Branch.parse(branch)
    check_two_j(two_N, "two_N")
    check_two_j(two_nu, "two_nu")
    check_branch_domain(two_N, two_nu, branch)
    tg = total_generators(two_N, two_nu)
    target = block_two_s(two_N, two_nu, branch)
    size = tg.casimir.shape[0]
    eye = np.eye(size)
    p = eye.astype(complex)
    c_target = _casimir_value(target)
    for two_s in tg.allowed_two_s():
        if two_s == target:
            continue
        c = _casimir_value(two_s)
        p = p @ ((tg.casimir - c * eye) / (c_target - c))
    return EquivariantProjector(two_N, two_nu, branch, p, Method.SPECTRAL)


def orbit_basis(two_N: int, two_nu: int, branch: Branch | str) -> np.ndarray:
    """Columns ``|s, s>, |s, s-1>, ..., |s, -s>`` of the selected block.

    Raises ``NumericalBreakdown`` if lowering annihilates a vector early.
    """
    branch = Branch.parse(branch)
    h = highest_weight(two_N, two_nu, branch).coefficients
    lower = total_lowering(two_N, two_nu)
    count = block_two_s(two_N, two_nu, branch) + 1
    basis = np.zeros((h.size, count), dtype=complex)
    v = h.copy()
    basis[:, 0] = v
    for k in range(1, count):
        v = lower @ v
        norm = np.linalg.norm(v)
        if norm < 1e-8:
            raise NumericalBreakdown(
                f"lowering step {k} of {count - 1} produced norm {norm:.3e}"
            )
        v = v / norm
        basis[:, k] = v
    return basis


def projector_orbit(two_N: int, two_nu: int, branch: Branch | str) -> EquivariantProjector:
    branch = Branch.parse(branch)
    basis = orbit_basis(two_N, two_nu, branch)
    return EquivariantProjector(two_N, two_nu, branch, basis @ basis.conj().T, Method.ORBIT)


def random_su2_axis_angle(rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Haar-random SU(2) elements as (unit axes, angles in [0, 2 pi]).

    A normalized 4-d Gaussian is a uniform unit quaternion
    ``(cos(t/2), sin(t/2) n)``.
    """
    q = rng.standard_normal((size, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    vec_norm = np.linalg.norm(q[:, 1:], axis=1)
    angles = 2.0 * np.arctan2(vec_norm, q[:, 0])
    axes = q[:, 1:] / np.where(vec_norm > 0, vec_norm, 1.0)[:, None]
    return axes, angles


def rotate_vectors(J, axes: np.ndarray, angles: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Rows ``exp(-i t n.J) vec`` for each (axis, angle) pair."""
    H = np.einsum("sa,aij->sij", axes, np.asarray(J))
    w, U = np.linalg.eigh(H)
    coeff = np.einsum("sji,j->si", U.conj(), vec) * np.exp(-1j * angles[:, None] * w)
    return np.einsum("sij,sj->si", U, coeff)


def projector_haar_mc(
    two_N: int,
    two_nu: int,
    branch: Branch | str,
    samples: int,
    seed: int,
    batch: int = 20000,
) -> EquivariantProjector:
    """Monte-Carlo Haar average of the rotated highest-weight projector.

    Deterministic for a fixed ``seed``: batches are drawn sequentially from a
    single ``numpy.random.default_rng(seed)`` stream.
    """
    branch = Branch.parse(branch)
    if int(samples) < 1:
        raise ValueError("samples must be positive")
    h = highest_weight(two_N, two_nu, branch).coefficients
    J = total_generators(two_N, two_nu).J
    rng = np.random.default_rng(seed)
    acc = np.zeros((h.size, h.size), dtype=complex)
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        axes, angles = random_su2_axis_angle(rng, m)
        v = rotate_vectors(J, axes, angles, h)
        acc += v.T @ v.conj()
        done += m
    p = acc * (block_two_s(two_N, two_nu, branch) + 1) / samples
    return EquivariantProjector(two_N, two_nu, branch, p, Method.HAAR_MC)
