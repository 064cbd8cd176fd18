"""Partial-transpose (NPT) and absolute-PPT tests."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qudit_core import PSD_TOL, DensityMatrix, eigvals_hermitian


@dataclass(frozen=True)
class PtVerdict:
    min_pt_eigenvalue: float
    is_npt: bool

    def __bool__(self):
        return self.is_npt


@dataclass(frozen=True)
class AbpptVerdict:
    l1_min_eig: float
    l2_min_eig: float
    is_abppt: bool
    # L2 exactly as typeset (non-symmetric); min eigenvalue of its symmetric part
    l2_literal_min_eig: float = float("nan")

    def __bool__(self):
        return self.is_abppt


def _bipartite_dims(rho: DensityMatrix) -> tuple[int, int]:
    if rho.n_subsystems != 2:
        raise ValueError(f"expected a bipartite state, got dims {rho.dims}")
    return rho.dims


def partial_transpose(rho: DensityMatrix, side: str = "B") -> np.ndarray:
    """Transpose the indices of one party: ``rho^T_{m mu, eta nu} = rho_{m nu, eta mu}``
    for ``side="B"``, and the analogous swap of the first-party indices for
    ``side="A"``."""
    da, db = _bipartite_dims(rho)
    t = rho.data.reshape(da, db, da, db)
    side = side.upper()
    if side == "B":
        t = t.transpose(0, 3, 2, 1)
    elif side == "A":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return t.reshape(rho.order, rho.order)


def is_npt(rho: DensityMatrix, side: str = "B", tol: float = PSD_TOL) -> PtVerdict:
    lo = float(eigvals_hermitian(partial_transpose(rho, side))[-1])
    return PtVerdict(lo, lo < -tol)


def l_matrices(mu, literal: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """The two 3x3 matrices whose positivity characterises absolute PPT for
    a 3 x n state with spectrum ``mu`` (sorted non-increasing, length 3n).

    ``literal=True`` returns the second matrix with the asymmetric entries
    as originally typeset, for comparison only.
    """
    mu = np.sort(np.asarray(mu, dtype=float))[::-1]
    if mu.size < 6 or mu.size % 3:
        raise ValueError(f"spectrum length must be 3n with n >= 2, got {mu.size}")

    def m(k):  # one-based, mu_1 largest
        return mu[k - 1]

    N = mu.size
    l1 = np.array([
        [2 * m(N), m(N - 1) - m(1), m(N - 3) - m(2)],
        [m(N - 1) - m(1), 2 * m(N - 2), m(N - 4) - m(3)],
        [m(N - 3) - m(2), m(N - 4) - m(3), 2 * m(N - 5)],
    ])
    if literal:
        l2 = np.array([
            [2 * m(N), m(N - 1) - m(1), m(N - 3) - m(2)],
            [m(N - 1) - m(1), 2 * m(N - 3), m(N - 4) - m(3)],
            [m(N - 2) - m(2), m(N - 4) - m(3), 2 * m(N - 5)],
        ])
    else:
        l2 = np.array([
            [2 * m(N), m(N - 1) - m(1), m(N - 2) - m(2)],
            [m(N - 1) - m(1), 2 * m(N - 3), m(N - 4) - m(3)],
            [m(N - 2) - m(2), m(N - 4) - m(3), 2 * m(N - 5)],
        ])
    return l1, l2


def is_abppt(rho: DensityMatrix, tol: float = PSD_TOL) -> AbpptVerdict:
    """Absolute-PPT test for a state on 3 x n (n >= 2), from its spectrum alone."""
    da, db = _bipartite_dims(rho)
    if da != 3 or db < 2:
        raise ValueError(f"absolute-PPT test needs dims (3, n >= 2), got {rho.dims}")
    mu = eigvals_hermitian(rho.data)
    l1, l2 = l_matrices(mu)
    _, l2_lit = l_matrices(mu, literal=True)
    e1 = float(np.linalg.eigvalsh(l1)[0])
    e2 = float(np.linalg.eigvalsh(l2)[0])
    e2_lit = float(np.linalg.eigvalsh((l2_lit + l2_lit.T) / 2)[0])
    return AbpptVerdict(e1, e2, e1 >= -tol and e2 >= -tol, e2_lit)
