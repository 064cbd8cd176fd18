"""Symmetric universal qudit cloner and local broadcasting of a shared pair.

Qutrit labels used for the broadcast outputs::

    1  Alice's original slot      2  Bob's original slot
    3  Alice's clone slot         4  Bob's clone slot
    5  Alice's machine ancilla    6  Bob's machine ancilla

Every two-qutrit output is returned with Alice's qutrit as subsystem 0 and
Bob's (or, for a local pair, the clone slot) as subsystem 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qudit_core import DensityMatrix, partial_trace, permute_subsystems, tensor
from .states import BlochDecomposition, bloch_decompose, validate_density


@dataclass(frozen=True, eq=False)
class CloningIsometry:
    """``d**3 x d`` isometry; column ``j`` is the image of ``|j>|00>`` with
    output ordering (original slot x, clone slot y, ancilla z)."""

    matrix: np.ndarray
    d: int

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return self.matrix @ rho @ self.matrix.conj().T

    def clone_marginals(self, rho) -> tuple[DensityMatrix, DensityMatrix]:
        """Single-qudit states left in the x and y slots when cloning ``rho``."""
        data = rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho)
        out = DensityMatrix(self.apply(data), (self.d,) * 3)
        return partial_trace(out, [0]), partial_trace(out, [1])


@lru_cache(maxsize=None)
def cloning_isometry(d: int = 3) -> CloningIsometry:
    """Build the symmetric Heisenberg cloner

        |j> -> sqrt(2/(d+1)) ( |j j j> + 1/2 sum_r |j, j+r, j+r> + 1/2 sum_r |j+r, j, j+r> )

    with ``r = 1..d-1`` and ``j + r`` taken mod ``d``.
    """
    d = int(d)
    if d < 2:
        raise ValueError(f"cloner dimension must be >= 2, got {d}")
    v = np.zeros((d**3, d), dtype=complex)

    def pos(x, y, z):
        return (x * d + y) * d + z

    for j in range(d):
        v[pos(j, j, j), j] += 1
        for r in range(1, d):
            k = (j + r) % d
            v[pos(j, k, k), j] += 0.5
            v[pos(k, j, k), j] += 0.5
    v *= np.sqrt(2 / (d + 1))
    v.setflags(write=False)
    return CloningIsometry(v, d)


@dataclass(frozen=True, eq=False)
class BroadcastOutputs:
    rho14: DensityMatrix
    rho23: DensityMatrix
    rho13: DensityMatrix
    rho24: DensityMatrix

    def as_dict(self) -> dict[str, DensityMatrix]:
        return {"rho14": self.rho14, "rho23": self.rho23, "rho13": self.rho13, "rho24": self.rho24}


# (xA, yA, zA, xB, yB, zB) -> labels (1, 2, 3, 4, 5, 6) = (xA, xB, yA, yB, zA, zB)
_TO_LABELS = (0, 3, 1, 4, 2, 5)


def broadcast_full(rho12: DensityMatrix) -> DensityMatrix:
    """The six-qutrit state after both parties clone, ordered by labels 1..6."""
    if rho12.dims != (3, 3):
        raise ValueError(f"broadcast needs a two-qutrit input, got dims {rho12.dims}")
    report = validate_density(rho12)
    if not report.valid:
        raise ValueError(f"input is not a valid density matrix: {report}")
    v = cloning_isometry(3).matrix
    w = np.kron(v, v)
    out = DensityMatrix(w @ rho12.data @ w.conj().T, (3,) * 6)
    return permute_subsystems(out, _TO_LABELS)


def broadcast(rho12: DensityMatrix) -> BroadcastOutputs:
    """Apply the cloner locally on each side of ``rho12`` and return the
    nonlocal pairs (1,4), (2,3) and local pairs (1,3), (2,4)."""
    full = broadcast_full(rho12)
    rho14 = partial_trace(full, [0, 3])
    # keep (2, 3) and reorder to Alice-first (3, 2)
    rho23 = permute_subsystems(partial_trace(full, [1, 2]), [1, 0])
    rho13 = partial_trace(full, [0, 2])
    rho24 = partial_trace(full, [1, 3])
    return BroadcastOutputs(rho14, rho23, rho13, rho24)


def nonlocal_bloch(rho12: DensityMatrix) -> BlochDecomposition:
    return bloch_decompose(broadcast(rho12).rho14)
