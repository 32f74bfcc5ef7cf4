"""ktor command line.

    ktor (bn|khi|verify-cc|table|detect-symmetry) [--pd TEXT | --file PATH]
         [--json | --csv] [--max-gens N]

Errors are printed as one JSON object {"error": ..., "message": ...} and the
exit status is nonzero.  KTOR_THREADS caps the worker pool of ``table``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .ccmaps import ChangeSite, SiteInvalid, build_package, verify_package
from .cube import DEFAULT_MAX_GENS, CapacityError, build_cone, build_cube, build_itau
from .diagram import PDCode, PDError, derive_symmetry, load_diagram
from .homology import StructureError, homology, max_torsion_order, s_invariant

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class KnotRecord:
    name: str
    pd: str
    expected: dict | None = None
    symmetry: dict | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "KnotRecord":
        pd = d["pd"]
        return cls(d["name"], pd if isinstance(pd, str) else json.dumps(pd, separators=(",", ":")),
                   d.get("expected"), d.get("symmetry"))

    def diagram(self) -> tuple[PDCode, list[int] | None]:
        if self.symmetry:
            return load_diagram(json.dumps({"pd": json.loads(self.pd), "symmetry": self.symmetry}))
        return load_diagram(self.pd)


@dataclass(frozen=True)
class ComputeConfig:
    max_gens: int = DEFAULT_MAX_GENS
    workers: int | None = None  # None: $KTOR_THREADS, else the cpu count
    coeff: str = "F2[H]"

    @classmethod
    def from_args(cls, args) -> "ComputeConfig":
        return cls(max_gens=args.max_gens, coeff=args.coeff)

    def n_workers(self, n_jobs: int) -> int:
        w = self.workers
        if w is None:
            w = int(os.environ.get("KTOR_THREADS", "0")) or (os.cpu_count() or 1)
        return max(1, min(w, n_jobs or 1))


def load_catalog(path: str | None = None) -> list[KnotRecord]:
    if path is None:
        text = resources.files("ktor").joinpath("data/catalog.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    records = data["knots"] if isinstance(data, dict) else data
    return [KnotRecord.from_dict(r) for r in records]


# ---------------------------------------------------------------------------
# computations shared by the commands


def compute_bn(pd: PDCode, max_gens: int = DEFAULT_MAX_GENS):
    cx = build_cube(pd, max_gens)
    summary, _ = homology(cx)
    return cx, summary


def compute_khi(pd: PDCode, inv=None, max_gens: int = DEFAULT_MAX_GENS, cx=None):
    sym = derive_symmetry(pd, inv)
    if cx is None:
        cx = build_cube(pd, max_gens)
    if 2 * len(cx.gens) > max_gens:
        raise CapacityError(f"cone of {2 * len(cx.gens)} generators exceeds the limit {max_gens}")
    cone = build_cone(build_itau(pd, sym, cx))
    summary, _ = homology(cone)
    return summary


def knot_invariants(pd: PDCode, inv=None, max_gens: int = DEFAULT_MAX_GENS) -> dict:
    cx, plain = compute_bn(pd, max_gens)
    inv_summary = compute_khi(pd, inv, max_gens, cx)
    return {"s": s_invariant(plain), "ord": max_torsion_order(plain),
            "eqord": max_torsion_order(inv_summary)}


def _row(rec: KnotRecord, max_gens: int) -> dict:
    try:
        pd, inv = rec.diagram()
        got = knot_invariants(pd, inv, max_gens)
    except (PDError, CapacityError, StructureError, RuntimeError) as exc:
        return {"name": rec.name, "s": None, "ord": None, "eqord": None,
                "status": f"error: {type(exc).__name__}: {exc}"}
    status = "ok"
    if rec.expected:
        diffs = [f"{k} {got[k]}!={rec.expected[k]}" for k in ("s", "ord", "eqord")
                 if k in rec.expected and rec.expected[k] != got[k]]
        if diffs:
            status = "mismatch: " + "; ".join(diffs)
    return {"name": rec.name, **got, "status": status}


def table_rows(records: list[KnotRecord], config: ComputeConfig | None = None):
    config = config or ComputeConfig()
    max_gens = config.max_gens
    workers = config.n_workers(len(records))
    if workers == 1:
        return [_row(r, max_gens) for r in records]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_row, records, [max_gens] * len(records)))


# ---------------------------------------------------------------------------
# argument handling


def _read_input(args) -> str:
    if args.pd is not None and args.file is not None:
        raise UsageError("give only one of --pd and --file")
    if args.pd is not None:
        return args.pd
    if args.file is not None:
        with open(args.file) as fh:
            return fh.read()
    raise UsageError("an input diagram is required (--pd or --file)")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected two comma separated crossing numbers") from None
    return a, b


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ktor", description="Bar-Natan and involutive Bar-Natan homology over F2[H].")
    ap.add_argument("command", choices=["bn", "khi", "verify-cc", "table", "detect-symmetry"])
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--pd", help="PD code, e.g. '[[1,4,2,5],[3,6,4,1],[5,2,6,3]]'")
    src.add_argument("--file", help="file with a PD code or {\"pd\":..., \"symmetry\":...}; a catalog for table")
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default except for table)")
    fmt.add_argument("--csv", action="store_true", help="CSV output (table only)")
    ap.add_argument("--max-gens", type=int, default=DEFAULT_MAX_GENS)
    ap.add_argument("--coeff", default="F2[H]", choices=["F2[H]"], help="coefficient ring (only F2[H])")
    ap.add_argument("--kind", choices=["A", "B", "C"], help="verify-cc: kind of crossing change")
    ap.add_argument("--crossing", type=int, help="verify-cc: on-axis crossing (1-based), Type B")
    ap.add_argument("--pair", type=_pair, help="verify-cc: crossing pair 'c,d' (1-based), Types A and C")
    return ap


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _dispatch(args, out)
    except (PDError, SiteInvalid, CapacityError, StructureError, UsageError, OSError,
            json.JSONDecodeError, KeyError) as exc:
        out.write(_dump({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_ERROR


def _dispatch(args, out) -> int:
    cfg = ComputeConfig.from_args(args)
    if args.command == "table":
        records = load_catalog(args.file)
        rows = table_rows(records, cfg)
        if args.json:
            out.write(_dump(rows) + "\n")
        else:
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=["name", "s", "ord", "eqord", "status"], lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow(r)
            out.write(buf.getvalue())
        return EXIT_OK if all(r["status"] == "ok" for r in rows) else EXIT_FAIL

    if args.csv:
        raise UsageError("--csv is only available for table")
    pd, inv = load_diagram(_read_input(args))

    if args.command == "bn":
        _, summary = compute_bn(pd, cfg.max_gens)
        out.write(_dump(summary.to_dict(s_invariant(summary))) + "\n")
        return EXIT_OK

    if args.command == "khi":
        summary = compute_khi(pd, inv, cfg.max_gens)
        d = summary.to_dict(ord_key="eqord")
        d.pop("s")
        out.write(_dump(d) + "\n")
        return EXIT_OK

    if args.command == "detect-symmetry":
        sym = derive_symmetry(pd, inv)
        out.write(_dump({
            "edge_involution": list(sym.edge_involution),
            "fixed_edges": list(sym.fixed_edges),
            "crossing_pairs": [[i + 1, j + 1] for i, j in sym.off_axis_pairs],
            "on_axis_crossings": sorted(c + 1 for c in sym.on_axis_crossings),
        }) + "\n")
        return EXIT_OK

    # verify-cc
    if args.kind is None:
        raise UsageError("verify-cc needs --kind")
    if args.kind == "B":
        if args.crossing is None:
            raise UsageError("Type B needs --crossing")
        crossings = (args.crossing - 1,)
    else:
        if args.pair is None:
            raise UsageError(f"Type {args.kind} needs --pair")
        crossings = (args.pair[0] - 1, args.pair[1] - 1)
    sym = derive_symmetry(pd, inv)
    package = build_package(pd, sym, ChangeSite(args.kind, crossings), cfg.max_gens)
    report = verify_package(package)
    out.write(report.to_json() + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
