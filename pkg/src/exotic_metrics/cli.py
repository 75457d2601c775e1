"""``exotic-metrics`` command line.

Exit codes: 0 success, 1 audit violations or failed criteria, 2 usage or
parse errors, 3 points that parse but do not belong to the space, 4 I/O
errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .base import LiteralError
from .cobweb import CobwebSpace, cw_witness_path
from .config import ConfigError, build_space, embedded, format_kv, read_kv, resolve
from .invlimit import Tower, limit_distance
from .runner import AUDITS, run_audit
from .scalar import fmt
from .suite import CRITERIA, Context, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _err(msg: str):
    print(f"exotic-metrics: {msg}", file=sys.stderr)


def write_atomic(path: str | os.PathLike, text: str):
    """Write ``text`` to ``path`` via a sibling temporary file and a rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _overrides(args) -> dict:
    out = {}
    for item in args.set or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"--set expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    for key in ("space", "seed", "audit"):
        value = getattr(args, key, None)
        if value is not None:
            out[key] = value
    if getattr(args, "corrupt", False):
        out["corrupt"] = "true"
    return out


def load_config(args) -> tuple[dict, Path | None]:
    """Resolve the run configuration; a JSON report may stand in for a config file."""
    base, root = {}, None
    if args.config:
        path = Path(args.config)
        root = path.parent
        if path.suffix == ".json":
            try:
                doc = json.loads(path.read_text())
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: {exc}") from None
            base = doc.get("config", doc) if isinstance(doc, dict) else None
            if not isinstance(base, dict):
                raise ConfigError(f"{path}: no embedded configuration")
            base = {k: str(v) for k, v in base.items()}
        else:
            base = read_kv(path)
    return resolve(base, _overrides(args)), root


def _parse_point(space, text: str):
    if isinstance(space, Tower):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LiteralError(f"tower points are JSON objects: {exc}") from None
        if not isinstance(obj, dict) or "level" not in obj or "point" not in obj:
            raise LiteralError('tower points look like {"level": k, "point": ...}')
        return space.decode(obj)
    return space.parse_literal(text)


def cmd_dist(args) -> int:
    config, root = load_config(args)
    space = build_space(config, root)
    if len(args.points) != 2:
        raise UsageError("dist takes exactly two points")
    points = []
    for text in args.points:
        try:
            points.append(_parse_point(space, text))
        except LiteralError as exc:
            _err(f"cannot parse point {text!r}: {exc}")
            return EXIT_USAGE
        except (ValueError, TypeError, KeyError) as exc:
            _err(f"point {text!r} is not in the space: {exc}")
            return EXIT_INVALID
    p, q = points
    if isinstance(space, Tower):
        value = limit_distance(space, p, q)
    else:
        value = space.distance(p, q)
    print(fmt(value))
    if args.witness:
        if not isinstance(space, CobwebSpace):
            raise UsageError("--witness is available for cobweb spaces only")
        for point in cw_witness_path(space, p, q):
            print(json.dumps(space.encode(point), sort_keys=True))
    return EXIT_OK


def cmd_audit(args) -> int:
    config, root = load_config(args)
    if args.workers < 1:
        raise UsageError("--workers must be positive")
    report = run_audit(config, args.workers, root)
    text = report.to_json()
    if args.out:
        write_atomic(args.out, text)
        _err(f"{report.audit}: {report.passed}/{report.attempted} checks passed -> {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_suite(args) -> int:
    if args.list:
        for crit in CRITERIA:
            budget = f"{crit.budget:g}s" if crit.budget else "-"
            print(f"{crit.ident}\t{budget}\t{crit.title}")
        return EXIT_OK
    config, _ = load_config(args)
    if args.workers < 1:
        raise UsageError("--workers must be positive")
    only = [s.strip() for s in args.only.split(",")] if args.only else None
    triples = int(config["n"]) if "n" in config else 10_000
    ctx = Context(config["seed"], args.workers, corrupt=bool(args.corrupt), triples=triples)
    try:
        outcomes = run_suite(ctx, only, on_result=lambda o: print(o.line(), flush=True))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    failed = [o.ident for o in outcomes if not o.passed]
    print(f"{len(outcomes) - len(failed)}/{len(outcomes)} criteria passed"
          + (f"; failed: {', '.join(failed)}" if failed else ""))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        summary = {
            "config": embedded(config),
            "criteria": [{"id": o.ident, "title": o.title, "passed": o.passed, "detail": o.detail,
                          "seconds": round(o.seconds, 3), "budget": o.budget,
                          "reports": [f"{o.ident}-{i}-{r.audit}.json" for i, r in enumerate(o.reports)]}
                         for o in outcomes],
        }
        for o in outcomes:
            for i, rep in enumerate(o.reports):
                write_atomic(out / f"{o.ident}-{i}-{rep.audit}.json", rep.to_json())
        write_atomic(out / "summary.json", json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_config(args) -> int:
    config, _ = load_config(args)
    sys.stdout.write(format_kv(embedded(config)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file, or a JSON report to replay")
    common.add_argument("--space", help="interval, cantor, finite, hedgehog, cobweb, zcon, extremal, tower")
    common.add_argument("--seed", help="64-bit integer seed (default 0, or $EXOTIC_METRICS_SEED)")
    common.add_argument("--set", action="append", metavar="KEY=VALUE", help="override one config key")

    parser = argparse.ArgumentParser(prog="exotic-metrics", description="Exact metric-space constructions and audits.")
    sub = parser.add_subparsers(dest="command", required=True)

    dist = sub.add_parser("dist", parents=[common], help="exact distance between two points")
    dist.add_argument("points", nargs="*", help="point literals")
    dist.add_argument("--witness", action="store_true", help="print a shortest route (cobweb)")
    dist.set_defaults(func=cmd_dist)

    audit = sub.add_parser("audit", parents=[common], help="run one audit and emit a JSON report")
    audit.add_argument("--audit", choices=sorted(AUDITS), help="audit to run (default metric)")
    audit.add_argument("--out", help="report path (default stdout)")
    audit.add_argument("--workers", type=int, default=1)
    audit.add_argument("--corrupt", action="store_true", help="break a finite distance table on purpose")
    audit.set_defaults(func=cmd_audit)

    suite = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    suite.add_argument("--list", action="store_true", help="list criteria without running them")
    suite.add_argument("--only", help="comma-separated criterion ids")
    suite.add_argument("--out", help="directory for per-criterion reports")
    suite.add_argument("--workers", type=int, default=1)
    suite.add_argument("--corrupt", action="store_true", help="inject a corrupted space into the metric suite")
    suite.set_defaults(func=cmd_suite)

    cfg = sub.add_parser("config", parents=[common], help="print the resolved configuration")
    cfg.set_defaults(func=cmd_config)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
