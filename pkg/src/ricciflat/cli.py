"""Command-line front end.

Exit codes: 0 all verified, 1 a mathematical mismatch, 2 usage error,
3 size budget exceeded without --probabilistic.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .algspec import TABLE_TITLES, SpecError, build, catalog_rows, expectation_for, parse
from .riccicheck import ClassificationRecord, classify
from .spencer import BudgetExceeded

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

@dataclass
class RunConfig:
    command: str
    spec: str | None = None
    budget: int | None = None
    probabilistic: bool = False
    primes: int = 2
    cache_dir: Path | None = None
    output_format: str = "table"

    def __post_init__(self):
        if self.budget is not None and self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.primes <= 0:
            raise ValueError("primes must be positive")


# ---------------------------------------------------------------------------
# cache

class Cache:
    """Content-addressed JSON store keyed by (operation, canonical spec, version)."""

    def __init__(self, root: Path | None):
        self.root = Path(root) if root else None
        if self.root:
            self.root.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(op: str, text: str) -> str:
        return hashlib.sha256(f"{op}\n{text}\n{__version__}".encode()).hexdigest()

    def get(self, op: str, text: str):
        if not self.root:
            return None
        p = self.root / (self.key(op, text) + ".json")
        if p.exists():
            return json.loads(p.read_text())
        return None

    def put(self, op: str, text: str, value) -> None:
        if self.root:
            p = self.root / (self.key(op, text) + ".json")
            tmp = p.with_suffix(".tmp")
            tmp.write_text(json.dumps(value, sort_keys=True))
            tmp.replace(p)


# ---------------------------------------------------------------------------
# records

def format_record(d: dict) -> str:
    return json.dumps(d, sort_keys=True)


def parse_records(text: str) -> list:
    """Inverse of the records output: one JSON object per non-empty line."""
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("{"):
            d = json.loads(line)
            ClassificationRecord.from_dict(d)  # validates the invariants
            out.append(d)
    return out


def _classify_cached(cfg: RunConfig, cache: Cache, spec_text: str) -> dict:
    canon = parse(spec_text).text()
    mode = f"budget={cfg.budget};prob={cfg.probabilistic};primes={cfg.primes}"
    hit = cache.get("classify", canon + "|" + mode)
    if hit is not None:
        return hit
    g = build(canon)
    rec = classify(g, budget=cfg.budget, probabilistic=cfg.probabilistic, primes=cfg.primes)
    d = rec.to_dict()
    d["algebra_name"] = canon
    cache.put("classify", canon + "|" + mode, d)
    return d


def _table_line(d: dict) -> str:
    cols = [f"{d['algebra_name']:<22}", f"{d['dim_V']:>5}", f"{d['dim_g']:>6}", f"{d['dim_g1']:>6}",
            f"{d['dim_K']:>6}", f"{d['dim_ricci_image']:>6}", f"{d['dim_ricci_kernel']:>6}",
            f"{d['h12_dim']:>5}", f"{d['verdict']:<10}"]
    if "paper_expectation" in d:
        cols.append(f"{d['paper_expectation']:<10}")
        cols.append("match" if d["match"] else "MISMATCH")
    if d.get("provenance", "exact") != "exact":
        cols.append(f"[{d['provenance']}]")
    return " ".join(cols).rstrip()


TABLE_HEADER = " ".join([f"{'algebra':<22}", f"{'dim V':>5}", f"{'dim g':>6}", f"{'g^(1)':>6}",
                         f"{'dim K':>6}", f"{'Ric im':>6}", f"{'kernel':>6}", f"{'h12':>5}",
                         f"{'verdict':<10}", "expected"])


def _emit(lines: list, out) -> None:
    for s in lines:
        print(s, file=out)


# ---------------------------------------------------------------------------
# commands

def cmd_classify(cfg: RunConfig, cache: Cache, out) -> int:
    d = _classify_cached(cfg, cache, cfg.spec)
    d = dict(d)
    exp = expectation_for(cfg.spec)
    if exp is not None:
        d["paper_expectation"] = exp
        d["match"] = d["verdict"] == exp
    if cfg.output_format == "records":
        _emit([format_record(d)], out)
    else:
        _emit([TABLE_HEADER, _table_line(d)], out)
    return EXIT_OK if d.get("match", True) else EXIT_MISMATCH


def cmd_dims(cfg: RunConfig, cache: Cache, out) -> int:
    d = _classify_cached(cfg, cache, cfg.spec)
    lines = [f"algebra      {d['algebra_name']}",
             f"dim V        {d['dim_V']}",
             f"dim g        {d['dim_g']}",
             f"dim g^(1)    {d['dim_g1']}",
             f"dim K        {d['dim_K']}",
             f"Ricci image  {d['dim_ricci_image']}",
             f"Ricci kernel {d['dim_ricci_kernel']}",
             f"h^(1,2)      {d['h12_dim']}",
             f"provenance   {d['provenance']}"]
    if cfg.output_format == "records":
        lines = [format_record(d)]
    _emit(lines, out)
    return EXIT_OK


def cmd_table(cfg: RunConfig, cache: Cache, out, max_dim: int, expectations: dict | None) -> int:
    rows = catalog_rows(max_dim)
    records = {}
    for r in rows:
        d = dict(_classify_cached(cfg, cache, r.spec))
        exp = (expectations or {}).get(r.spec, r.expected)
        d["paper_expectation"] = exp
        d["match"] = d["verdict"] == exp
        records[r.spec] = (r, d)
    mismatches = [spec for spec, (_, d) in records.items() if not d["match"]]
    if cfg.output_format == "records":
        _emit([format_record(d) for _, (_, d) in records.items()], out)
    else:
        lines = []
        for part in ("must", "may"):
            lines.append(f"== {TABLE_TITLES[part]} ==")
            lines.append(TABLE_HEADER)
            lines += [_table_line(d) for r, d in records.values() if r.table == part]
            lines.append("")
        lines.append(f"{len(records)} rows, {len(mismatches)} mismatches")
        lines += [f"mismatch: {s}: got {records[s][1]['verdict']}, expected "
                  f"{records[s][1]['paper_expectation']}" for s in mismatches]
        _emit(lines, out)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_verify(cfg: RunConfig, cache: Cache, out, family: str) -> int:
    from .verify import Check, SUITES
    hit = cache.get("verify", family)
    if hit is None:
        checks = SUITES[family]()
        hit = [[c.family, c.label, c.ok, c.value, c.expected] for c in checks]
        cache.put("verify", family, hit)
    checks = [Check(*c) for c in hit]
    if cfg.output_format == "records":
        _emit([json.dumps({"family": c.family, "label": c.label, "ok": c.ok, "value": c.value,
                           "expected": c.expected}, sort_keys=True) for c in checks], out)
    else:
        _emit([c.line() for c in checks], out)
        bad = sum(not c.ok for c in checks)
        _emit([f"{len(checks) - bad}/{len(checks)} identities hold"], out)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_MISMATCH


def cmd_export_e6(out, path: str) -> int:
    from .e6 import cached_context, export_generators
    ctx = cached_context()
    export_generators(ctx, path)
    print(f"wrote {ctx.e6.dim} generators on a {ctx.e6.dim_V}-dimensional space to {path}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help="maximum boundary-matrix size for exact mode")
    common.add_argument("--probabilistic", action="store_true",
                        help="use modular ranks when the budget is exceeded")
    common.add_argument("--primes", type=int, default=2, help="agreeing primes for modular ranks")
    common.add_argument("--cache", default=None, help="cache directory")
    common.add_argument("--format", choices=("table", "records"), default="table")

    p = argparse.ArgumentParser(prog="ricciflat",
                                description="Ricci-type classification of holonomy algebras")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("classify", parents=[common], help="classify one algebra")
    s.add_argument("spec")
    s = sub.add_parser("dims", parents=[common], help="print module dimensions")
    s.add_argument("spec")
    s = sub.add_parser("table", parents=[common], help="run the catalog")
    s.add_argument("--max-dim", type=int, default=8)
    s.add_argument("--expectations", default=None,
                   help="JSON file overriding expected verdicts (spec -> verdict)")
    s = sub.add_parser("verify", parents=[common], help="run an identity suite")
    s.add_argument("family", choices=("symplectic", "split", "segre", "e6", "complex-split", "volume"))
    s = sub.add_parser("export-e6", parents=[common], help="write the e6 generators as JSON")
    s.add_argument("path")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(args.command, getattr(args, "spec", None), args.budget, args.probabilistic,
                        args.primes, Path(args.cache) if args.cache else None, args.format)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cache = Cache(cfg.cache_dir)
    try:
        if args.command == "classify":
            return cmd_classify(cfg, cache, out)
        if args.command == "dims":
            return cmd_dims(cfg, cache, out)
        if args.command == "table":
            if args.max_dim < 0:
                raise SpecError("--max-dim must be non-negative")
            exp = json.loads(Path(args.expectations).read_text()) if args.expectations else None
            return cmd_table(cfg, cache, out, args.max_dim, exp)
        if args.command == "verify":
            return cmd_verify(cfg, cache, out, args.family)
        if args.command == "export-e6":
            return cmd_export_e6(out, args.path)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc} (use --probabilistic)", file=sys.stderr)
        return EXIT_BUDGET
    except (RuntimeError, ArithmeticError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
