"""Two-qutrit state families and their Gell-Mann (Bloch) representation."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qudit_core import (
    HERMITIAN_TOL,
    PSD_TOL,
    TRACE_TOL,
    DensityMatrix,
    eigvals_hermitian,
    partial_trace,
)


class NonPhysicalStateError(ValueError):
    """A reconstructed matrix has a negative eigenvalue beyond tolerance."""


@lru_cache(maxsize=None)
def _gell_mann() -> tuple[np.ndarray, ...]:
    s3 = np.sqrt(3.0)
    g = [
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]],
        [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
        [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]],
        [[1 / s3, 0, 0], [0, 1 / s3, 0], [0, 0, -2 / s3]],
    ]
    out = []
    for m in g:
        a = np.array(m, dtype=complex)
        a.setflags(write=False)
        out.append(a)
    return tuple(out)


def gell_mann_basis() -> tuple[np.ndarray, ...]:
    """The eight Gell-Mann matrices in textbook order, normalised so that
    ``Tr[G_i G_j] = 2 delta_ij``.

    Positions 2 and 7 (zero-based) are the diagonal generators; 1, 4 and 6 are
    the imaginary antisymmetric ones.
    """
    return _gell_mann()


@lru_cache(maxsize=None)
def _operator_tables():
    g = np.array(_gell_mann())
    eye = np.eye(3)
    local_a = np.array([np.kron(gi, eye) for gi in g])
    local_b = np.array([np.kron(eye, gj) for gj in g])
    corr = np.array([[np.kron(gi, gj) for gj in g] for gi in g])
    return local_a, local_b, corr


@dataclass(frozen=True, eq=False)
class BlochDecomposition:
    """Local Bloch vectors ``x``, ``y`` and correlation matrix ``t`` of a
    two-qutrit state, with ``x_i = Tr[rho (G_i x I)]``,
    ``y_j = Tr[rho (I x G_j)]`` and ``t_ij = Tr[rho (G_i x G_j)]``."""

    x: np.ndarray
    y: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float).reshape(8)
        y = np.array(self.y, dtype=float).reshape(8)
        t = np.array(self.t, dtype=float).reshape(8, 8)
        for name, arr in (("x", x), ("y", y), ("t", t)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def allclose(self, other: "BlochDecomposition", atol: float = 1e-12) -> bool:
        return all(
            np.allclose(a, b, rtol=0, atol=atol)
            for a, b in ((self.x, other.x), (self.y, other.y), (self.t, other.t))
        )


def bloch_decompose(rho: DensityMatrix) -> BlochDecomposition:
    if rho.dims != (3, 3):
        raise ValueError(f"Bloch decomposition needs dims (3, 3), got {rho.dims}")
    local_a, local_b, corr = _operator_tables()
    # Tr[rho O] = sum_ab rho_ab O_ba
    m = rho.data.T
    x = np.einsum("ab,kab->k", m, local_a)
    y = np.einsum("ab,kab->k", m, local_b)
    t = np.einsum("ab,klab->kl", m, corr)
    return BlochDecomposition(x.real, y.real, t.real)


def bloch_reconstruct(bd: BlochDecomposition, check: bool = True) -> DensityMatrix:
    """Inverse of :func:`bloch_decompose`.

    With ``Tr[G_i G_j] = 2 delta_ij`` the expansion that reproduces the trace
    definitions of ``x``, ``y``, ``t`` is::

        rho = (I x I + 3/2 sum x_i G_i x I + 3/2 sum y_j I x G_j
               + 9/4 sum t_ij G_i x G_j) / 9

    If ``check`` is set, a result with an eigenvalue below ``-PSD_TOL``
    raises :class:`NonPhysicalStateError`.
    """
    local_a, local_b, corr = _operator_tables()
    m = (
        np.eye(9, dtype=complex)
        + 1.5 * np.einsum("k,kab->ab", bd.x, local_a)
        + 1.5 * np.einsum("k,kab->ab", bd.y, local_b)
        + 2.25 * np.einsum("kl,klab->ab", bd.t, corr)
    ) / 9
    rho = DensityMatrix(m, (3, 3))
    if check:
        lo = eigvals_hermitian(m)[-1]
        if lo < -PSD_TOL:
            raise NonPhysicalStateError(f"reconstructed state has eigenvalue {lo:.3e}")
    return rho


@dataclass(frozen=True)
class TpcsParams:
    """Weights of the two-parameter qutrit family; ``a = (1 - 3b - 3c) / 3``."""

    b: float
    c: float

    def __post_init__(self):
        b, c = float(self.b), float(self.c)
        # boundary a = 0 is admitted; allow rounding slop from decimal input
        if not (b >= 0 and c >= 0 and b + c <= 1 / 3 + 1e-12):
            raise ValueError(f"TPCS needs b >= 0, c >= 0, b + c <= 1/3; got b={b}, c={c}")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def a(self) -> float:
        return max((1 - 3 * self.b - 3 * self.c) / 3, 0.0)


@dataclass(frozen=True)
class IsotropicParams:
    f: float
    d: int = 3

    def __post_init__(self):
        f, d = float(self.f), int(self.d)
        if not 0 <= f <= 1:
            raise ValueError(f"isotropic weight f must lie in [0, 1], got {f}")
        if d < 2:
            raise ValueError(f"isotropic dimension must be >= 2, got {d}")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "d", d)


def _basis_ket(d: int, *digits: int) -> np.ndarray:
    v = np.zeros(d ** len(digits), dtype=complex)
    pos = 0
    for i in digits:
        pos = pos * d + i
    v[pos] = 1
    return v


def max_entangled(d: int = 3) -> np.ndarray:
    """``(|00> + |11> + ... ) / sqrt(d)`` as a length ``d**2`` vector."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return sum(_basis_ket(d, i, i) for i in range(d)) / np.sqrt(d)


def tpcs(p: TpcsParams | None = None, *, b: float | None = None, c: float | None = None) -> DensityMatrix:
    """Two-parameter qutrit state

        a sum_i |ii><ii| + b sum_{i<j} |psi-_ij><psi-_ij| + c sum_{i<j} |psi+_ij><psi+_ij|

    with ``|psi+-_ij> = (|ij> +- |ji>) / sqrt(2)``.  Accepts either a
    :class:`TpcsParams` or keyword ``b``, ``c``.
    """
    if p is None:
        p = TpcsParams(b, c)
    m = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        k = _basis_ket(3, i, i)
        m += p.a * np.outer(k, k)
    for i in range(3):
        for j in range(i + 1, 3):
            ij, ji = _basis_ket(3, i, j), _basis_ket(3, j, i)
            minus = (ij - ji) / np.sqrt(2)
            plus = (ij + ji) / np.sqrt(2)
            m += p.b * np.outer(minus, minus) + p.c * np.outer(plus, plus)
    return DensityMatrix(m, (3, 3))


def isotropic(p: IsotropicParams | float, d: int | None = None) -> DensityMatrix:
    """``(1 - f) / (d^2 - 1) (I - P) + f P`` with ``P`` the projector on
    :func:`max_entangled`."""
    if not isinstance(p, IsotropicParams):
        p = IsotropicParams(p, 3 if d is None else d)
    n = p.d ** 2
    psi = max_entangled(p.d)
    proj = np.outer(psi, psi.conj())
    m = (1 - p.f) / (n - 1) * (np.eye(n) - proj) + p.f * proj
    return DensityMatrix(m, (p.d, p.d))


@dataclass(frozen=True)
class ValidationReport:
    hermitian_defect: float
    trace_defect: float
    min_eigenvalue: float

    @property
    def valid(self) -> bool:
        return (
            self.hermitian_defect <= HERMITIAN_TOL
            and self.trace_defect <= TRACE_TOL
            and self.min_eigenvalue >= -PSD_TOL
        )

    def __bool__(self):
        return self.valid


def validate_density(rho: DensityMatrix) -> ValidationReport:
    """Diagnose how far ``rho`` is from being a density matrix.

    The minimum eigenvalue is taken from the Hermitian part, so it is
    defined even when the matrix itself is not Hermitian.
    """
    m = rho.data
    herm = float(np.max(np.abs(m - m.conj().T)))
    tr = float(abs(np.trace(m) - 1))
    lo = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
    return ValidationReport(herm, tr, lo)


def reduced_states(rho: DensityMatrix) -> tuple[DensityMatrix, DensityMatrix]:
    """Single-subsystem marginals of a bipartite state."""
    return partial_trace(rho, [0]), partial_trace(rho, [1])
