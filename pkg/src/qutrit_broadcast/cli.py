"""Command-line front end.

    qutrit-broadcast check --family tpcs --b 0.2666667 --c 0.0666667
    qutrit-broadcast threshold --family isotropic --axis f --predicate output-npt --tol 1e-8
    qutrit-broadcast scan --family tpcs --samples 10000 --seed 42 --out scan.csv
    qutrit-broadcast decompose --family isotropic --f 0.8
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .analysis import (
    Family,
    FamilyPoint,
    ScanRecord,
    evaluate_point,
    find_threshold,
    scan_isotropic,
    scan_tpcs,
)
from .cloning import broadcast
from .states import bloch_decompose

CSV_FIELDS = ("family", "b", "c", "f", "input_npt", "output_npt", "output_abppt", "min_pt_eig_output")
COMMANDS = ("check", "threshold", "scan", "decompose")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    family: str = "tpcs"
    params: dict = field(default_factory=dict)
    axis: str | None = None
    predicate: str = "output_npt"
    samples: int = 10_000
    seed: int = 0
    tolerance: float = 1e-8
    out: Path | None = None
    fmt: str = "csv"
    workers: int | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        try:
            fam = Family(self.family)
        except ValueError:
            raise ConfigError(f"unknown family {self.family!r}") from None
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.fmt!r}")
        if self.tolerance <= 0:
            raise ConfigError("tolerance must be positive")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.command in ("check", "decompose"):
            needed = ("b", "c") if fam is Family.TPCS else ("f",)
            missing = [k for k in needed if self.params.get(k) is None]
            if missing:
                raise ConfigError(f"{self.command} --family {fam.value} needs " + ", ".join(f"--{k}" for k in missing))
        if self.command == "threshold":
            axis = self.axis or ("b" if fam is Family.TPCS else "f")
            allowed = ("b", "c") if fam is Family.TPCS else ("f",)
            if axis not in allowed:
                raise ConfigError(f"axis {axis!r} is not a parameter of {fam.value}")
            self.axis = axis


def _fmt_float(x: float | None) -> str:
    return "" if x is None else format(float(x), "#.12g")


def _fmt_bool(v: bool) -> str:
    return "true" if v else "false"


def _row(r: ScanRecord) -> dict[str, str]:
    p = r.point.params
    tp = r.point.family is Family.TPCS
    return {
        "family": r.point.family.value,
        "b": _fmt_float(p.b) if tp else "",
        "c": _fmt_float(p.c) if tp else "",
        "f": "" if tp else _fmt_float(p.f),
        "input_npt": _fmt_bool(r.input_npt),
        "output_npt": _fmt_bool(r.output_npt),
        "output_abppt": _fmt_bool(r.output_abppt),
        "min_pt_eig_output": _fmt_float(r.min_pt_eig_output),
    }


def format_records(records: Sequence[ScanRecord], fmt: str = "csv") -> str:
    if not records:
        raise ValueError("no records to emit")
    rows = [_row(r) for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        objs = []
        for row in rows:
            obj = {}
            for k in CSV_FIELDS:
                v = row[k]
                if k == "family":
                    obj[k] = v
                elif v in ("true", "false"):
                    obj[k] = v == "true"
                else:
                    obj[k] = float(v) if v else None
            objs.append(obj)
        return json.dumps(objs, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit_records(records: Sequence[ScanRecord], fmt: str, path) -> Path:
    """Write ``records`` as CSV or JSON (UTF-8, LF line endings)."""
    text = format_records(records, fmt)
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def _parse_bool(v) -> bool:
    if isinstance(v, bool):
        return v
    if v not in ("true", "false"):
        raise ValueError(f"bad boolean field {v!r}")
    return v == "true"


def _record_from_row(row: dict) -> ScanRecord:
    fam = Family(row["family"])
    if fam is Family.TPCS:
        point = FamilyPoint.tpcs(float(row["b"]), float(row["c"]))
    else:
        point = FamilyPoint.isotropic(float(row["f"]))
    return ScanRecord(
        point=point,
        input_npt=_parse_bool(row["input_npt"]),
        output_npt=_parse_bool(row["output_npt"]),
        output_abppt=_parse_bool(row["output_abppt"]),
        min_pt_eig_output=float(row["min_pt_eig_output"]),
    )


def read_records(path) -> list[ScanRecord]:
    """Parse a file written by :func:`emit_records`; format from the suffix."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        rows = json.loads(text)
    else:
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != CSV_FIELDS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        rows = list(reader)
    return [_record_from_row(r) for r in rows]


def approx_fraction(x: float, tol: float, max_den: int = 1000) -> Fraction | None:
    fr = Fraction(x).limit_denominator(max_den)
    return fr if abs(float(fr) - x) < tol else None


#: Decimal input may overshoot b + c = 1/3 by this much and is projected back.
BOUNDARY_SLACK = 1e-6


def _point_from(cfg: RunConfig) -> FamilyPoint:
    if Family(cfg.family) is Family.TPCS:
        b, c = cfg.params["b"], cfg.params["c"]
        if b >= 0 and c >= 0 and 1 / 3 < b + c <= 1 / 3 + BOUNDARY_SLACK:
            scale = (1 / 3) / (b + c)
            b, c = b * scale, c * scale
        return FamilyPoint.tpcs(b, c)
    return FamilyPoint.isotropic(cfg.params["f"])


def _describe(p: FamilyPoint) -> str:
    if p.family is Family.TPCS:
        return f"tpcs(b={p.params.b:.10g}, c={p.params.c:.10g})"
    return f"isotropic(f={p.params.f:.10g})"


def _yn(v: bool, yes: str, no: str) -> str:
    return yes if v else no


def _write_if_requested(cfg: RunConfig, records, out) -> None:
    if cfg.out is not None:
        path = emit_records(records, cfg.fmt, cfg.out)
        print(f"wrote {len(records)} record(s) to {path}", file=out)


def _run_check(cfg: RunConfig, out) -> None:
    rec = evaluate_point(_point_from(cfg))
    print(_describe(rec.point), file=out)
    print(f"  input:          {_yn(rec.input_npt, 'NPT', 'PPT')}", file=out)
    print(f"  output (1,4):   {_yn(rec.output_npt, 'NPT', 'PPT')}"
          f"  (min PT eigenvalue {rec.min_pt_eig_output:.6e})", file=out)
    print(f"  output (2,3):   {_yn(rec.rho23_npt, 'NPT', 'PPT')}", file=out)
    print(f"  output ABPPT:   {_yn(rec.output_abppt, 'yes', 'no')}", file=out)
    print(f"  local (1,3):    {_yn(rec.local13_npt, 'NPT', 'PPT')}", file=out)
    print(f"  local (2,4):    {_yn(rec.local24_npt, 'NPT', 'PPT')}", file=out)
    print(f"  broadcast NPT:  {_yn(rec.input_npt and rec.output_npt, 'yes', 'no')}", file=out)
    _write_if_requested(cfg, [rec], out)


def _run_threshold(cfg: RunConfig, out) -> None:
    fixed = {k: v for k, v in cfg.params.items() if v is not None and k != cfg.axis}
    res = find_threshold(cfg.family, cfg.axis, fixed, cfg.predicate, cfg.tolerance)
    label = f"{cfg.family} {res.predicate} along {cfg.axis}"
    if fixed:
        label += " (" + ", ".join(f"{k}={v:g}" for k, v in sorted(fixed.items())) + ")"
    if res.status != "found":
        print(f"{label}: {res.status}", file=out)
        for x, v in res.grid:
            print(f"  {x:.8f}  {_yn(v, 'true', 'false')}", file=out)
        return
    line = f"{label}: {res.value:.8f}"
    fr = approx_fraction(res.value, cfg.tolerance)
    if fr is not None:
        line += f"  (≈ {fr.numerator}/{fr.denominator})"
    print(line, file=out)
    print(f"  bracket [{res.bracket[0]:.12f}, {res.bracket[1]:.12f}], {res.evaluations} evaluations", file=out)


def _run_scan(cfg: RunConfig, out) -> None:
    if Family(cfg.family) is Family.TPCS:
        records = scan_tpcs(cfg.samples, cfg.seed, workers=cfg.workers)
    else:
        records = scan_isotropic(np.linspace(0.0, 1.0, cfg.samples), workers=cfg.workers)
    n_npt = sum(r.output_npt for r in records)
    n_ab = sum(r.output_abppt for r in records)
    n_in = sum(r.input_npt for r in records)
    print(f"{cfg.family} scan: {len(records)} points, input NPT {n_in}, "
          f"output NPT {n_npt}, output ABPPT {n_ab}", file=out)
    if cfg.out is None:
        out.write(format_records(records, cfg.fmt))
    else:
        _write_if_requested(cfg, records, out)


def _run_decompose(cfg: RunConfig, out) -> None:
    p = _point_from(cfg)
    rho = p.state()
    result = {"input": bloch_decompose(rho), "output_14": bloch_decompose(broadcast(rho).rho14)}
    if cfg.fmt == "json" or cfg.out is not None:
        payload = {
            "point": _describe(p),
            **{k: {"x": bd.x.tolist(), "y": bd.y.tolist(), "t": bd.t.tolist()} for k, bd in result.items()},
        }
        text = json.dumps(payload, indent=1) + "\n"
        if cfg.out is not None:
            try:
                Path(cfg.out).write_text(text, encoding="utf-8")
            except OSError as exc:
                raise OSError(f"cannot write {cfg.out}: {exc.strerror or exc}") from exc
            print(f"wrote decomposition to {cfg.out}", file=out)
        else:
            out.write(text)
        return
    with np.printoptions(precision=6, suppress=True, linewidth=120):
        print(_describe(p), file=out)
        for k, bd in result.items():
            print(f"[{k}]", file=out)
            print(f"  x = {bd.x}", file=out)
            print(f"  y = {bd.y}", file=out)
            print("  t =", file=out)
            for line in np.array2string(bd.t).splitlines():
                print("    " + line, file=out)


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute one command; returns the process exit status.

    0 on completion regardless of verdicts, 2 for invalid configuration, 1
    for I/O failures.
    """
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        cfg.validate()
        handler = {"check": _run_check, "threshold": _run_threshold,
                   "scan": _run_scan, "decompose": _run_decompose}[cfg.command]
        handler(cfg, out)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qutrit-broadcast",
        description="Broadcasting of NPT entanglement in two-qutrit states via local symmetric cloning.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_out=True):
        p.add_argument("--family", choices=[f.value for f in Family], default="tpcs")
        p.add_argument("--b", type=float)
        p.add_argument("--c", type=float)
        p.add_argument("--f", type=float)
        if with_out:
            p.add_argument("--out", type=Path, help="output file")
            p.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)

    p = sub.add_parser("check", help="verdicts for a single parameter point")
    common(p)
    p = sub.add_parser("threshold", help="bisect the parameter value where a verdict flips")
    common(p, with_out=False)
    p.add_argument("--axis")
    p.add_argument("--predicate", choices=("output-npt", "output-abppt", "output_npt", "output_abppt"),
                   default="output-npt")
    p.add_argument("--tol", type=float, default=1e-8)
    p = sub.add_parser("scan", help="evaluate many points (tpcs: seeded uniform samples; isotropic: even f grid)")
    common(p)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None)
    p = sub.add_parser("decompose", help="Bloch decomposition of input and nonlocal output")
    common(p)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fmt = getattr(ns, "fmt", None)
    out = getattr(ns, "out", None)
    if fmt is None:
        fmt = "json" if out is not None and Path(out).suffix.lower() == ".json" else "csv"
    return RunConfig(
        command=ns.command,
        family=ns.family,
        params={"b": ns.b, "c": ns.c, "f": ns.f},
        axis=getattr(ns, "axis", None),
        predicate=getattr(ns, "predicate", "output_npt"),
        samples=getattr(ns, "samples", 10_000),
        seed=getattr(ns, "seed", 0),
        tolerance=getattr(ns, "tol", 1e-8),
        out=out,
        fmt=fmt,
        workers=getattr(ns, "workers", None),
    )


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
