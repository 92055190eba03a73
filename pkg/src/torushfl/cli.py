"""Command-line entry point: ``torushfl {predict,compute,verify,check,linking}``.

Exit codes: 0 all checks pass, 1 theorem-backed mismatch or failed property,
2 conjecture-only mismatch (1 with --strict-conjecture), 3 usage or
resource error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import pipeline
from .cache import TableCache, default_cache_dir
from .f2_homology import DEFAULT_MEMORY_BUDGET, BudgetExceededError
from .grid_core import linking_matrix, torus_grid
from .predictions import full_table
from .serialize import dumps_json, table_to_csv, table_to_json

EXIT_OK, EXIT_FAIL, EXIT_CONJECTURE, EXIT_USAGE = 0, 1, 2, 3

log = logging.getLogger("torushfl")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


_SIZE = re.compile(r"^(\d+)([kmgt]?)i?b?$", re.I)


def parse_budget(text: str) -> Optional[int]:
    """'1G', '512M', '2048' (bytes) or 'none'."""
    if text.lower() in ("none", "unlimited"):
        return None
    m = _SIZE.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"bad memory budget {text!r}")
    scale = {"": 1, "k": 2**10, "m": 2**20, "g": 2**30, "t": 2**40}[m.group(2).lower()]
    return int(m.group(1)) * scale


@dataclass
class RunConfig:
    subcommand: str
    n: int
    multiplier: int = 1
    workers: int = 1
    cache_dir: Optional[Path] = None
    use_cache: bool = True
    format: str = "json"
    strict_conjecture: bool = False
    memory_budget: Optional[int] = DEFAULT_MEMORY_BUDGET
    prop: Optional[str] = None
    output: Optional[Path] = None

    def __post_init__(self):
        if self.n < 2:
            raise UsageError(f"--n must be >= 2, got {self.n}")
        if self.multiplier < 1:
            raise UsageError(f"--multiplier must be >= 1, got {self.multiplier}")
        if self.workers < 1:
            raise UsageError(f"--workers must be >= 1, got {self.workers}")
        if self.format not in ("json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")

    def compute_kwargs(self) -> dict:
        cache = TableCache(self.cache_dir or default_cache_dir()) if self.use_cache else None
        return {"cache": cache, "workers": self.workers, "memory_budget": self.memory_budget}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, required=True)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", type=Path, help="write to a file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    compute_opts = _Parser(add_help=False)
    compute_opts.add_argument("--workers", type=int, default=1)
    compute_opts.add_argument("--cache-dir", type=Path, help="defaults to $HFL_CACHE_DIR or ~/.cache/torushfl")
    compute_opts.add_argument("--no-cache", action="store_true")
    compute_opts.add_argument("--memory-budget", type=parse_budget, default=DEFAULT_MEMORY_BUDGET,
                              help="e.g. 1G, 8G or none (default 1G, i.e. grids up to 10x10)")
    compute_opts.add_argument("--strict-conjecture", action="store_true",
                              help="treat conjecture-only mismatches as failures (exit 1)")

    p = _Parser(prog="torushfl", description="Link Floer homology of (n,n)-torus links from grid diagrams.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    sub.add_parser("predict", parents=[common], help="closed-form predicted hat table")
    c = sub.add_parser("compute", parents=[common, compute_opts], help="grid-computed hat table")
    c.add_argument("--multiplier", type=int, default=1)
    sub.add_parser("verify", parents=[common, compute_opts], help="compute, compare, run all checks")
    k = sub.add_parser("check", parents=[common, compute_opts], help="run one structural check")
    k.add_argument("--property", dest="prop", required=True, choices=pipeline.PROPERTIES)
    ln = sub.add_parser("linking", parents=[common], help="linking matrix of the grid")
    ln.add_argument("--multiplier", type=int, default=1)
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=ns.subcommand,
        n=ns.n,
        multiplier=getattr(ns, "multiplier", 1),
        workers=getattr(ns, "workers", 1),
        cache_dir=getattr(ns, "cache_dir", None),
        use_cache=not getattr(ns, "no_cache", True),
        format=ns.format,
        strict_conjecture=getattr(ns, "strict_conjecture", False),
        memory_budget=getattr(ns, "memory_budget", DEFAULT_MEMORY_BUDGET),
        prop=getattr(ns, "prop", None),
        output=ns.output,
    )


def _emit(text: str, cfg: RunConfig, out) -> None:
    if cfg.output is not None:
        cfg.output.write_text(text)
    else:
        out.write(text)


def _report_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"a{i + 1}" for i in range(report.n)] + ["status", "computed", "predicted"])
    for a2, p in sorted(report.points.items()):
        fmt = lambda d: " ".join(f"{m}:{r}" for m, r in sorted(d.items(), reverse=True))
        w.writerow(list(a2) + [p.status, fmt(p.computed), fmt(p.predicted)])
    for c in report.checks:
        w.writerow(["#check", c.name, "pass" if c.passed else "fail", c.details])
    return buf.getvalue()


def _summary(report, err) -> None:
    counts = {}
    for p in report.points.values():
        counts[p.status] = counts.get(p.status, 0) + 1
    print(f"n={report.n}: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())), file=err)
    for c in report.checks:
        print(f"  {c.name}: {'PASS' if c.passed else 'FAIL'} {c.details}", file=err)


def execute(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if cfg.subcommand == "predict":
        t = full_table(cfg.n)
        _emit(table_to_json(t) if cfg.format == "json" else table_to_csv(t, cfg.n), cfg, out)
        return EXIT_OK

    if cfg.subcommand == "linking":
        g = torus_grid(cfg.n, cfg.multiplier)
        mat = linking_matrix(g)
        if cfg.format == "json":
            text = dumps_json({"link": {"family": "torus", "n": cfg.n, "multiplier": cfg.multiplier},
                               "grid_size": g.size, "mirrored": g.mirrored, "linking_matrix": mat})
        else:
            text = "".join(",".join(map(str, row)) + "\n" for row in mat)
        _emit(text, cfg, out)
        return EXIT_OK

    kw = cfg.compute_kwargs()
    if cfg.subcommand == "compute":
        g, _tilde, hat = pipeline.torus_tables(cfg.n, cfg.multiplier, **kw)
        _emit(table_to_json(hat) if cfg.format == "json" else table_to_csv(hat, g.n_components), cfg, out)
        code = EXIT_OK
    elif cfg.subcommand == "verify":
        report = pipeline.verify(cfg.n, **kw)
        _summary(report, err)
        _emit(dumps_json(report.to_dict()) if cfg.format == "json" else _report_csv(report), cfg, out)
        code = report.exit_code(cfg.strict_conjecture)
    elif cfg.subcommand == "check":
        res = pipeline.run_property(cfg.prop, cfg.n, **kw)
        doc = {"n": cfg.n, "property": res.name, "passed": res.passed, "details": res.details}
        _emit(dumps_json(doc) if cfg.format == "json" else f"{res.name},{'pass' if res.passed else 'fail'},{json.dumps(res.details)}\n", cfg, out)
        code = EXIT_OK if res.passed else EXIT_FAIL
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown subcommand {cfg.subcommand}")
    cache = kw["cache"]
    if cache is not None and cache.corrupt:
        print(f"rebuilt corrupt cache entries: {', '.join(map(str, cache.corrupt))}", file=err)
    return code


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, stream=err)
        return execute(_config(ns), out, err)
    except (UsageError, ValueError) as exc:
        print(f"torushfl: error: {exc}", file=err)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"torushfl: error: {exc}; raise --memory-budget to override", file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
