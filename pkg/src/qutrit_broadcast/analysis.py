"""Broadcastability verdicts, threshold bisection and parameter scans."""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .cloning import broadcast
from .separability import is_abppt, is_npt
from .states import IsotropicParams, TpcsParams, isotropic, tpcs


class Family(str, enum.Enum):
    TPCS = "tpcs"
    ISOTROPIC = "isotropic"


@dataclass(frozen=True)
class FamilyPoint:
    family: Family
    params: TpcsParams | IsotropicParams

    def __post_init__(self):
        fam = Family(self.family)
        expected = TpcsParams if fam is Family.TPCS else IsotropicParams
        if not isinstance(self.params, expected):
            raise TypeError(f"{fam.value} point needs {expected.__name__}, got {type(self.params).__name__}")
        object.__setattr__(self, "family", fam)

    @classmethod
    def tpcs(cls, b: float, c: float) -> "FamilyPoint":
        return cls(Family.TPCS, TpcsParams(b, c))

    @classmethod
    def isotropic(cls, f: float, d: int = 3) -> "FamilyPoint":
        return cls(Family.ISOTROPIC, IsotropicParams(f, d))

    def state(self):
        if self.family is Family.TPCS:
            return tpcs(self.params)
        return isotropic(self.params)


@dataclass(frozen=True)
class ScanRecord:
    """Verdicts for one parameter point.

    Broadcasting succeeds when the nonlocal pair (1,4) is NPT; the other
    pairs are carried as diagnostics.
    """

    point: FamilyPoint
    input_npt: bool
    output_npt: bool
    output_abppt: bool
    min_pt_eig_output: float
    rho23_npt: bool | None = field(default=None, compare=False)
    local13_npt: bool | None = field(default=None, compare=False)
    local24_npt: bool | None = field(default=None, compare=False)


def evaluate_point(p: FamilyPoint) -> ScanRecord:
    rho = p.state()
    out = broadcast(rho)
    pt14 = is_npt(out.rho14)
    return ScanRecord(
        point=p,
        input_npt=is_npt(rho).is_npt,
        output_npt=pt14.is_npt,
        output_abppt=is_abppt(out.rho14).is_abppt,
        min_pt_eig_output=pt14.min_pt_eigenvalue,
        rho23_npt=is_npt(out.rho23).is_npt,
        local13_npt=is_npt(out.rho13).is_npt,
        local24_npt=is_npt(out.rho24).is_npt,
    )


PREDICATES = ("output_npt", "output_abppt")


def _normalise_predicate(predicate: str) -> str:
    name = predicate.replace("-", "_")
    if name not in PREDICATES:
        raise ValueError(f"predicate must be one of {PREDICATES}, got {predicate!r}")
    return name


@dataclass(frozen=True)
class ThresholdResult:
    """Outcome of :func:`find_threshold`.

    ``status`` is ``"found"``, ``"no-threshold"`` (predicate equal at both
    ends of the axis) or ``"non-monotone"`` (more than one flip on the
    pre-flight grid).  Only ``"found"`` carries a ``value``.
    """

    axis: str
    value: float | None
    bracket: tuple[float, float] | None
    tolerance: float
    status: str = "found"
    predicate: str = "output_npt"
    grid: tuple[tuple[float, bool], ...] = ()
    evaluations: int = 0


def _axis_range(family: Family, axis: str, fixed: dict) -> tuple[float, float]:
    if family is Family.TPCS:
        if axis == "b":
            return 0.0, 1 / 3 - float(fixed.get("c", 0.0))
        if axis == "c":
            return 0.0, 1 / 3 - float(fixed.get("b", 0.0))
    elif axis == "f":
        return 0.0, 1.0
    raise ValueError(f"axis {axis!r} does not belong to family {family.value}")


def _make_point(family: Family, axis: str, value: float, fixed: dict) -> FamilyPoint:
    if family is Family.TPCS:
        params = {"b": fixed.get("b", 0.0), "c": fixed.get("c", 0.0), axis: value}
        return FamilyPoint.tpcs(params["b"], params["c"])
    return FamilyPoint.isotropic(value, int(fixed.get("d", 3)))


def find_threshold(
    family: Family | str,
    axis: str,
    fixed: dict | None = None,
    predicate: str = "output_npt",
    tol: float = 1e-8,
    grid_points: int = 64,
) -> ThresholdResult:
    """Locate where ``predicate`` flips along ``axis``.

    The predicate is first evaluated on an evenly spaced grid spanning the
    valid axis range; bisection runs only if the grid shows exactly one flip.
    The returned value is the midpoint of the final bracket, whose width is
    at most ``tol``.
    """
    family = Family(family)
    fixed = dict(fixed or {})
    pred = _normalise_predicate(predicate)
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi = _axis_range(family, axis, fixed)
    if hi <= lo:
        raise ValueError(f"empty range for axis {axis} with fixed parameters {fixed}")

    n_eval = 0

    def holds(x: float) -> bool:
        nonlocal n_eval
        n_eval += 1
        return getattr(evaluate_point(_make_point(family, axis, x, fixed)), pred)

    xs = np.linspace(lo, hi, grid_points)
    grid = tuple((float(x), holds(float(x))) for x in xs)
    flips = [i for i in range(len(grid) - 1) if grid[i][1] != grid[i + 1][1]]

    common = dict(axis=axis, tolerance=tol, predicate=pred, grid=grid)
    if not flips:
        return ThresholdResult(value=None, bracket=None, status="no-threshold", evaluations=n_eval, **common)
    if len(flips) > 1:
        return ThresholdResult(value=None, bracket=None, status="non-monotone", evaluations=n_eval, **common)

    i = flips[0]
    a, b = grid[i][0], grid[i + 1][0]
    left = grid[i][1]
    while b - a > tol:
        mid = 0.5 * (a + b)
        if holds(mid) == left:
            a = mid
        else:
            b = mid
    return ThresholdResult(value=0.5 * (a + b), bracket=(a, b), status="found", evaluations=n_eval, **common)


def _evaluate_all(points: Sequence[FamilyPoint], workers: int | None) -> list[ScanRecord]:
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(evaluate_point, points))
    return [evaluate_point(p) for p in points]


def sample_tpcs(n: int, seed: int) -> list[TpcsParams]:
    """``n`` points uniform on ``{b, c >= 0, b + c <= 1/3}``, by rejection
    from the square ``[0, 1/3]^2``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    out: list[TpcsParams] = []
    while len(out) < n:
        bc = rng.uniform(0.0, 1 / 3, size=(2 * (n - len(out)) + 8, 2))
        for b, c in bc[bc.sum(axis=1) <= 1 / 3]:
            out.append(TpcsParams(float(b), float(c)))
            if len(out) == n:
                break
    return out


def scan_tpcs(n: int, seed: int, workers: int | None = None) -> list[ScanRecord]:
    points = [FamilyPoint(Family.TPCS, p) for p in sample_tpcs(n, seed)]
    return _evaluate_all(points, workers)


def scan_isotropic(grid: Iterable[float], d: int = 3, workers: int | None = None) -> list[ScanRecord]:
    points = [FamilyPoint.isotropic(float(f), d) for f in grid]
    return _evaluate_all(points, workers)
