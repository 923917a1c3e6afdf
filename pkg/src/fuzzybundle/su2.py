"""Spin bookkeeping and irreducible su(2) representations.

Spins are carried as doubled integers (``two_j``) so that half-integer values
stay exact. Matrices use the ladder basis ordered by descending magnetic
quantum number, so ``x_plus`` is strictly upper triangular and the highest
weight is the first basis vector.

Tensor products ``[N] (x) [nu]`` use ``numpy.kron`` ordering: the basis vector
``|N, m> (x) |nu, m'>`` sits at index ``i * (two_nu + 1) + i'`` where ``i`` and
``i'`` are the ladder indices of ``m`` and ``m'``.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt

import numpy as np

from .errors import BranchDomainError, DomainError


class Branch(str, enum.Enum):
    """Which extremal block of ``[N] (x) [nu]`` a projector selects."""

    PLUS = "plus"    # [N + nu]
    MINUS = "minus"  # [N - nu], needs N > nu

    @classmethod
    def parse(cls, value: "Branch | str") -> "Branch":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown branch {value!r}; expected 'plus' or 'minus'") from None

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1


def check_two_j(two_j, name: str = "two_j") -> int:
    if isinstance(two_j, bool) or int(two_j) != two_j or two_j < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {two_j!r}")
    return int(two_j)


def check_branch_domain(two_n: int, two_l: int, branch: Branch) -> None:
    """Raise if the lower branch is requested with ``N <= nu``."""
    if Branch.parse(branch) is Branch.MINUS and two_n <= two_l:
        raise BranchDomainError(
            f"branch 'minus' requires N > nu (got two_N={two_n}, two_nu={two_l})"
        )


def block_two_s(two_n: int, two_l: int, branch: Branch) -> int:
    """Doubled spin of the selected block, ``2(N +- nu)``."""
    return two_n + two_l if Branch.parse(branch) is Branch.PLUS else two_n - two_l


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SpinRep:
    """Spin-``two_j/2`` irreducible representation.

    ``x1, x2, x3`` are Hermitian with ``[x_a, x_b] = i eps_abc x_c``;
    ``x_plus = x1 + i x2`` and ``x_minus = x1 - i x2``.
    """

    two_j: int
    x1: np.ndarray
    x2: np.ndarray
    x3: np.ndarray
    x_plus: np.ndarray
    x_minus: np.ndarray

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def dim(self) -> int:
        return self.two_j + 1

    @property
    def generators(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.x1, self.x2, self.x3

    def casimir(self) -> np.ndarray:
        return self.x1 @ self.x1 + self.x2 @ self.x2 + self.x3 @ self.x3


def _from_ladder(two_j: int, x_plus: np.ndarray, x3: np.ndarray) -> SpinRep:
    x_minus = x_plus.conj().T.copy()
    x1 = (x_plus + x_minus) / 2
    x2 = (x_plus - x_minus) / 2j
    return SpinRep(
        two_j,
        _frozen(x1),
        _frozen(x2),
        _frozen(x3.astype(complex)),
        _frozen(x_plus.astype(complex)),
        _frozen(x_minus.astype(complex)),
    )


@functools.lru_cache(maxsize=256)
def make_spin_rep(two_j: int) -> SpinRep:
    """Ladder-basis generators of spin ``two_j/2`` (basis ordered m = j, j-1, ..., -j)."""
    two_j = check_two_j(two_j)
    j = two_j / 2
    m = j - np.arange(two_j + 1)
    # x_+ |j, m> = sqrt(j(j+1) - m(m+1)) |j, m+1>, i.e. entry (i-1, i) for m = m[i]
    coeff = np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1))
    x_plus = np.diag(coeff, 1).astype(complex)
    return _from_ladder(two_j, x_plus, np.diag(m))


def schwinger_rep(two_n: int) -> tuple[SpinRep, np.ndarray]:
    """Representation on homogeneous polynomials of degree ``n`` in ``z1, z2``.

    The basis is ``psi_k = sqrt(C(n, k)) z1^k z2^(n-k)`` for ``k = 0..n``, with
    ``x_plus = z1 d/dz2`` and ``x3 = (z1 d/dz1 - z2 d/dz2) / 2``. The returned
    unitary ``U`` satisfies ``U @ x_a @ U^dagger == make_spin_rep(two_n).x_a``.
    """
    n = check_two_j(two_n, "two_n")
    x_plus = np.zeros((n + 1, n + 1), dtype=complex)
    x3 = np.zeros((n + 1, n + 1), dtype=complex)
    for k in range(n + 1):
        # z1 d/dz2 (z1^k z2^(n-k)) = (n-k) z1^(k+1) z2^(n-k-1)
        if k < n:
            x_plus[k + 1, k] = sqrt(comb(n, k) / comb(n, k + 1)) * (n - k)
        x3[k, k] = (k - (n - k)) / 2
    rep = _from_ladder(n, x_plus, x3)
    unitary = np.zeros((n + 1, n + 1), dtype=complex)
    unitary[n - np.arange(n + 1), np.arange(n + 1)] = 1.0
    return rep, _frozen(unitary)


def total_raising(two_n: int, two_l: int) -> np.ndarray:
    a, b = make_spin_rep(two_n), make_spin_rep(two_l)
    return np.kron(a.x_plus, np.eye(b.dim)) + np.kron(np.eye(a.dim), b.x_plus)


def total_lowering(two_n: int, two_l: int) -> np.ndarray:
    a, b = make_spin_rep(two_n), make_spin_rep(two_l)
    return np.kron(a.x_minus, np.eye(b.dim)) + np.kron(np.eye(a.dim), b.x_minus)


def total_x3(two_n: int, two_l: int) -> np.ndarray:
    a, b = make_spin_rep(two_n), make_spin_rep(two_l)
    return np.kron(a.x3, np.eye(b.dim)) + np.kron(np.eye(a.dim), b.x3)


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Unit highest-weight vector of the ``branch`` block inside ``[N] (x) [nu]``."""

    coefficients: np.ndarray
    two_n: int
    two_l: int
    branch: Branch


def highest_weight(two_n: int, two_l: int, branch: Branch | str) -> WeightVector:
    """Highest-weight vector of ``[N + nu]`` (plus) or ``[N - nu]`` (minus).

    For the minus branch the monomial ansatz
    ``sum_k a_k z2^k z1^(n-k) (x) z1^k z2^(l-k)`` with
    ``a_k = (-1)^k sqrt((n-l+1)/(n+1)) C(l, k)`` is rewritten in the
    orthonormal ladder basis using ``||z1^k z2^(n-k)||^2 = 1/C(n, k)``.
    The overall phase is fixed by ``a_0 > 0``.
    """
    n = check_two_j(two_n, "two_n")
    l = check_two_j(two_l, "two_l")
    branch = Branch.parse(branch)
    check_branch_domain(n, l, branch)
    vec = np.zeros((n + 1) * (l + 1), dtype=complex)
    if branch is Branch.PLUS:
        vec[0] = 1.0
    else:
        a0 = sqrt((n - l + 1) / (n + 1))
        for k in range(l + 1):
            a_k = (-1) ** k * a0 * comb(l, k)
            # z2^k z1^(n-k) has m = n/2 - k -> ladder index k in [N];
            # z1^k z2^(l-k) has m' = k - l/2 -> ladder index l - k in [nu].
            norm = sqrt(comb(n, k) * comb(l, k))
            vec[k * (l + 1) + (l - k)] = a_k / norm
    return WeightVector(_frozen(vec), n, l, branch)


def binomial_identity(variant: str, n: int, l: int) -> tuple[Fraction, Fraction]:
    """Both sides of one of three finite binomial sums, in exact arithmetic.

    ``A``: ``sum_k C(l,k)/C(n,k) = (n+1)/(n-l+1)``, for ``0 <= l <= n``.
    ``B``: ``sum_k C(l,k)/C(n,k+1) = (n+1)/((n-l)(n+1-l))``, for ``0 <= l < n``.
    ``C``: ``sum_k (n-k) C(l,k)/C(n,k+1) = (n+1)(n+2)/((l-n-1)(l-n-2))``, for ``0 <= l < n``.
    Sums run over ``k = 0..l``.
    """
    variant = str(variant).upper()
    if variant not in ("A", "B", "C"):
        raise DomainError(f"unknown variant {variant!r}")
    if not (0 <= l <= n):
        raise DomainError(f"need 0 <= l <= n, got n={n}, l={l}")
    if variant in ("B", "C") and not l < n:
        raise DomainError(f"variant {variant} needs n > l, got n={n}, l={l}")
    ks = range(l + 1)
    if variant == "A":
        lhs = sum(Fraction(comb(l, k), comb(n, k)) for k in ks)
        rhs = Fraction(n + 1, n - l + 1)
    elif variant == "B":
        lhs = sum(Fraction(comb(l, k), comb(n, k + 1)) for k in ks)
        rhs = Fraction(n + 1, (n - l) * (n + 1 - l))
    else:
        lhs = sum(Fraction((n - k) * comb(l, k), comb(n, k + 1)) for k in ks)
        rhs = Fraction((n + 1) * (n + 2), (l - n - 1) * (l - n - 2))
    return Fraction(lhs), rhs
