"""Exit criteria for the package, one test per criterion.

Each test prints a ``[PASS]`` / ``[FAIL]`` line to the terminal even when
pytest captures output.  Run just this module with

    pytest tests/test_acceptance.py -v
"""
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from qutrit_broadcast import (
    DensityMatrix,
    broadcast,
    cloning_isometry,
    is_npt,
    isotropic,
    nonlocal_bloch,
    tpcs,
)
from qutrit_broadcast.analysis import FamilyPoint, evaluate_point, find_threshold, scan_tpcs

from conftest import random_density

TESTS = Path(__file__).parent


@pytest.fixture
def report(capsys):
    def _report(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))
        return ok
    return _report


def test_c1_tpcs_output_npt_threshold(report):
    lines, ok = [], True
    for c in (0.0, 0.02, 0.04):
        t0 = time.perf_counter()
        res = find_threshold("tpcs", "b", {"c": c}, "output_npt", tol=1e-8)
        dt = time.perf_counter() - t0
        good = res.status == "found" and abs(res.value - 19 / 75) <= 1e-6 and dt < 30
        ok &= good
        lines.append(f"c={c}: b*={res.value:.10f} ({res.evaluations} evals, {dt:.2f}s)")
    assert report("C1 TPCS output-NPT threshold 19/75", ok, "; ".join(lines))


def test_c2_isotropic_output_npt_threshold(report):
    res = find_threshold("isotropic", "f", predicate="output_npt", tol=1e-8)
    ok = res.status == "found" and abs(res.value - 17 / 25) <= 1e-6
    assert report("C2 isotropic output-NPT threshold 17/25", ok, f"f*={res.value:.10f}")


def test_c3_isotropic_output_abppt_threshold(report):
    res = find_threshold("isotropic", "f", predicate="output_abppt", tol=1e-8)
    ok = res.status == "found" and abs(res.value - 433 / 825) <= 1e-6
    # ABPPT on the low side of the flip
    ok &= res.grid[0][1] and not res.grid[-1][1]
    assert report("C3 isotropic output-ABPPT threshold 433/825", ok, f"f*={res.value:.10f}")


def test_c4_paper_examples(report):
    checks = {
        "tpcs(4/15,1/15) output NPT": evaluate_point(FamilyPoint.tpcs(4 / 15, 1 / 15)).output_npt,
        "tpcs(1/5,0) output ABPPT": evaluate_point(FamilyPoint.tpcs(1 / 5, 0)).output_abppt,
        "isotropic(4/5) output NPT": evaluate_point(FamilyPoint.isotropic(4 / 5)).output_npt,
        "isotropic(1/2) output ABPPT": evaluate_point(FamilyPoint.isotropic(1 / 2)).output_abppt,
    }
    failed = [k for k, v in checks.items() if not v]
    assert report("C4 explicit example states", not failed, "failed: " + ", ".join(failed) if failed else "4/4")


def test_c5a_tpcs_input_npt_iff_b_above_sixth(report):
    axis = np.linspace(0, 1 / 3, 50)
    mismatches, total = [], 0
    for b in axis:
        for c in axis:
            if b + c > 1 / 3 + 1e-15 or abs(b - 1 / 6) < 1e-9:
                continue
            total += 1
            if is_npt(tpcs(b=b, c=min(c, 1 / 3 - b))).is_npt != (b > 1 / 6):
                mismatches.append((float(b), float(c)))
    detail = f"{total} grid points, {len(mismatches)} mismatches"
    if mismatches:
        symmetric = sum(b <= 1 / 6 and b + 3 * c > 2 / 3 for b, c in mismatches)
        sample = ", ".join(f"({b:.4f}, {c:.4f})" for b, c in mismatches[:3])
        detail += f"; {symmetric} of them have b <= 1/6 and b + 3c > 2/3; e.g. {sample}"
    assert report("C5a TPCS input NPT iff b > 1/6", not mismatches, detail)


def test_c5b_isotropic_input_npt_iff_f_above_third(report):
    bad = [f for f in np.linspace(0, 1, 101)
           if abs(f - 1 / 3) >= 1e-9 and is_npt(isotropic(f)).is_npt != (f > 1 / 3)]
    assert report("C5b isotropic input NPT iff f > 1/3", not bad, f"101 points, {len(bad)} mismatches")


def test_c6_output_structure(report):
    rng = np.random.default_rng(6)
    pair_err = max(
        np.max(np.abs((o := broadcast(random_density(rng, dims=(3, 3)))).rho14.data - o.rho23.data))
        for _ in range(200)
    )
    ok_pairs = pair_err <= 1e-12

    xy_err, ratio_err, n_ratio = 0.0, 0.0, 0
    while n_ratio < 20:
        b = rng.uniform(0, 1 / 3)
        c = rng.uniform(0, 1 / 3 - b)
        if abs(c - b) < 1e-2:
            continue
        bd = nonlocal_bloch(tpcs(b=b, c=c))
        xy_err = max(xy_err, np.max(np.abs(bd.x)), np.max(np.abs(bd.y)))
        ratio_err = max(ratio_err, abs(bd.t[2, 2] / bd.t[0, 0] - (2 - 9 * b - 9 * c) / (3 * (c - b))))
        n_ratio += 1
    ok_tpcs = xy_err <= 1e-12 and ratio_err <= 1e-9

    signs = np.array([1, -1, 1, 1, -1, 1, -1, 1])
    ok_iso = True
    for f in np.linspace(0, 1, 21):
        d = np.diag(nonlocal_bloch(isotropic(f)).t)
        mag = np.abs(d)
        ok_iso &= np.max(mag) - np.min(mag) <= 1e-12
        if abs(f - 1 / 9) > 1e-6:
            ok_iso &= bool(np.all(np.sign(d) == signs * np.sign(9 * f - 1)))
    ok_iso &= np.max(np.abs(nonlocal_bloch(isotropic(1 / 9)).t)) <= 1e-12

    ok = ok_pairs and ok_tpcs and ok_iso
    detail = (f"rho14-rho23 max {pair_err:.1e}; TPCS |X|,|Y| max {xy_err:.1e}, ratio err {ratio_err:.1e}; "
              f"isotropic pattern {'ok' if ok_iso else 'broken'}")
    assert report("C6 output structure", ok, detail)


def test_c7_cloner(report):
    v = cloning_isometry(3)
    iso_err = np.max(np.abs(v.matrix.conj().T @ v.matrix - np.eye(3)))
    fid_err = 0.0
    for j in range(3):
        e = np.zeros((3, 3)); e[j, j] = 1
        for clone in v.clone_marginals(e):
            fid_err = max(fid_err, abs(clone.data[j, j].real - 3 / 4))
    ok = iso_err <= 1e-12 and fid_err <= 1e-12
    assert report("C7 cloner isometry and fidelity 3/4", ok, f"|V'V - I| {iso_err:.1e}, fidelity err {fid_err:.1e}")


def test_c8_tpcs_abppt_scan(report):
    t0 = time.perf_counter()
    records = scan_tpcs(10_000, seed=42)
    dt = time.perf_counter() - t0
    ab = np.array([(r.point.params.b, r.point.params.c) for r in records if r.output_abppt])
    npt = {id(r) for r in records if r.output_npt}
    overlap = sum(1 for r in records if r.output_abppt and id(r) in npt)
    example = evaluate_point(FamilyPoint.tpcs(1 / 5, 0))
    near = ab.size and np.min(np.hypot(ab[:, 0] - 1 / 5, ab[:, 1])) < 0.01
    ok = len(records) == 10_000 and dt < 600 and len(ab) > 0 and overlap == 0 and example.output_abppt and near
    detail = (f"{len(records)} samples in {dt:.1f}s; {len(ab)} ABPPT, {len(npt)} NPT, overlap {overlap}; "
              f"(1/5,0) ABPPT={example.output_abppt}")
    if len(ab):
        detail += f"; ABPPT b in [{ab[:, 0].min():.3f}, {ab[:, 0].max():.3f}], c in [{ab[:, 1].min():.3f}, {ab[:, 1].max():.3f}]"
    assert report("C8 Figure-2 ABPPT scan", ok, detail)


def test_c9_property_suite(report):
    modules = ["test_qudit_core.py", "test_states.py", "test_cloning.py", "test_separability.py", "test_analysis.py"]
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *[str(TESTS / m) for m in modules]],
        capture_output=True, text=True, cwd=TESTS.parent,
    )
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    assert report("C9 randomized property suite (100 examples per property)", proc.returncode == 0, tail)
