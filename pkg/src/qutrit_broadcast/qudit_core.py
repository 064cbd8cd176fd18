"""Dense linear algebra for multi-qudit operators.

Index convention
----------------
A composite basis state ``|i_0 i_1 ... i_{k-1}>`` of subsystems with
dimensions ``dims = (d_0, ..., d_{k-1})`` sits at the row-major position

    i_0 * (d_1 * ... * d_{k-1}) + i_1 * (d_2 * ... * d_{k-1}) + ... + i_{k-1}

so subsystem 0 is the most significant digit.  This is exactly what
``np.kron`` produces and what ``ndarray.reshape(dims + dims)`` undoes, and
every routine in the package relies on it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

#: Entrywise tolerance on ``|M - M^dagger|``.
HERMITIAN_TOL = 1e-12
#: Tolerance on ``|trace - 1|``.
TRACE_TOL = 1e-12
#: A matrix is positive semidefinite when its smallest eigenvalue is >= -PSD_TOL.
PSD_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A dense complex matrix together with its subsystem dimensions.

    Construction only checks shapes; physical validity (Hermitian, unit
    trace, PSD) is reported by :func:`qutrit_broadcast.states.validate_density`.
    The stored array is read-only.
    """

    data: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {data.shape}")
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"invalid subsystem dimensions {dims}")
        if int(np.prod(dims)) != data.shape[0]:
            raise ValueError(
                f"dims {dims} multiply to {int(np.prod(dims))}, matrix order is {data.shape[0]}"
            )
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "dims", dims)

    @property
    def order(self) -> int:
        return self.data.shape[0]

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def allclose(self, other: "DensityMatrix", atol: float = 1e-12) -> bool:
        return self.dims == other.dims and np.allclose(self.data, other.data, rtol=0, atol=atol)

    @classmethod
    def from_ket(cls, ket, dims: Sequence[int]) -> "DensityMatrix":
        ket = np.asarray(ket, dtype=complex).ravel()
        return cls(np.outer(ket, ket.conj()), tuple(dims))

    def __repr__(self):
        return f"DensityMatrix(order={self.order}, dims={self.dims})"


def tensor(a: DensityMatrix, b: DensityMatrix, *more: DensityMatrix) -> DensityMatrix:
    """Kronecker product, concatenating subsystem dimensions."""
    out = DensityMatrix(np.kron(a.data, b.data), a.dims + b.dims)
    for m in more:
        out = DensityMatrix(np.kron(out.data, m.data), out.dims + m.dims)
    return out


def _check_permutation(perm: Sequence[int], k: int) -> list[int]:
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(k)):
        raise ValueError(f"{perm} is not a permutation of 0..{k - 1}")
    return perm


def permute_subsystems(rho: DensityMatrix, perm: Sequence[int]) -> DensityMatrix:
    """Reorder subsystems so that new subsystem ``i`` is old subsystem ``perm[i]``."""
    k = rho.n_subsystems
    perm = _check_permutation(perm, k)
    t = rho.data.reshape(rho.dims + rho.dims)
    t = t.transpose(perm + [k + p for p in perm])
    new_dims = tuple(rho.dims[p] for p in perm)
    return DensityMatrix(t.reshape(rho.order, rho.order), new_dims)


def inverse_permutation(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Trace out every subsystem not listed in ``keep``.

    ``keep`` must be non-empty and strictly increasing; the kept subsystems
    retain their relative order.
    """
    keep = [int(i) for i in keep]
    k = rho.n_subsystems
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    if any(j <= i for i, j in zip(keep, keep[1:])):
        raise ValueError(f"keep must be strictly increasing, got {keep}")
    if keep[0] < 0 or keep[-1] >= k:
        raise ValueError(f"keep {keep} out of range for {k} subsystems")

    # contract matching bra/ket labels of the traced subsystems in one einsum
    ket = list(range(k))
    bra = [k + i if i in keep else i for i in range(k)]
    out_labels = keep + [k + i for i in keep]
    t = rho.data.reshape(rho.dims + rho.dims)
    dk = int(np.prod([rho.dims[i] for i in keep]))
    out = np.einsum(t, ket + bra, out_labels).reshape(dk, dk)
    return DensityMatrix(out, tuple(rho.dims[i] for i in keep))


def eigvals_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted in non-increasing order.

    Raises ``ValueError`` when ``m`` departs from Hermiticity by more than
    ``tol`` in any entry.
    """
    if isinstance(m, DensityMatrix):
        m = m.data
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    defect = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian (max |M - M^dagger| = {defect:.3e})")
    return np.linalg.eigvalsh(m)[::-1]
