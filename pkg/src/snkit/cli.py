"""Command-line front end: ``snkit <command> [flags]``.

Machine output is JSON lines (or CSV for ``chartab --format csv``) on stdout;
a short human summary goes to stderr.  Exit codes: 0 success, 2 usage or
resource limit, 3 domain rejection, 4 excluded case.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass

from . import characters, countkit, tsystems, verify
from .errors import DomainError, ExcludedCaseError, ResourceLimitError
from .partitions import Partition
from .permgroup import Permutation

CACHE_ENV = "SNKIT_CACHE_DIR"
GROUP_NAMES = {"alt": "alternating", "sym": "symmetric"}

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_EXCLUDED = 0, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    k: int = 2
    group: str = "alternating"
    output_format: str = "json"
    brute_force_ceiling: int = countkit.BRUTE_FORCE_CEILING
    table_cache_path: str | None = None
    threads: int = 1
    pi: Partition | None = None
    class_type: Partition | None = None
    mode: str = "sym"
    oracle: bool = False
    suite: str | None = None

    def __post_init__(self):
        if self.brute_force_ceiling < 0:
            raise ValueError("ceiling must be nonnegative")


def _partition_arg(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
    common.add_argument("--ceiling", type=_nonneg, default=None,
                        help="brute-force / enumeration ceiling")
    common.add_argument("--threads", type=_positive, default=1,
                        help="worker cap (computations are single-threaded)")
    common.add_argument("--cache", dest="table_cache_path", default=None,
                        help=f"character table cache directory (default ${CACHE_ENV})")

    parser = argparse.ArgumentParser(prog="snkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chartab", parents=[common], help="character table of S_n")
    p.add_argument("--n", type=_positive, required=True)

    p = sub.add_parser("count", parents=[common], help="commutator counts")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--pi", type=_partition_arg, required=True)
    p.add_argument("--class", dest="class_type", type=_partition_arg, required=True)
    p.add_argument("--mode", choices=("sym", "alt", "generating"), default="sym")
    p.add_argument("--oracle", action="store_true", help="also count by brute force")

    for name, text in (("tsystems", "T_k-systems (Nielsen classes)"),
                       ("pra", "components of the product replacement graph")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--n", type=_positive, required=True)
        p.add_argument("--k", type=_positive, default=2)
        p.add_argument("--group", choices=tuple(GROUP_NAMES), default="alt")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=tuple(verify.SUITES))
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cache = args.table_cache_path or os.environ.get(CACHE_ENV) or None
    ceiling = args.ceiling
    if ceiling is None:
        ceiling = tsystems.TUPLE_CEILING if args.command in ("tsystems", "pra") else countkit.BRUTE_FORCE_CEILING
    return RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        k=getattr(args, "k", 2),
        group=GROUP_NAMES[getattr(args, "group", "alt")],
        output_format=args.output_format,
        brute_force_ceiling=ceiling,
        table_cache_path=cache,
        threads=args.threads,
        pi=getattr(args, "pi", None),
        class_type=getattr(args, "class_type", None),
        mode=getattr(args, "mode", "sym"),
        oracle=getattr(args, "oracle", False),
        suite=getattr(args, "suite", None),
    )


def _table(config: RunConfig, n: int) -> characters.CharacterTable:
    if config.table_cache_path:
        return characters.disk_cached_table(n, config.table_cache_path)
    return characters.character_table(n)


def _emit(out, record: dict) -> None:
    out.write(json.dumps(record, sort_keys=True) + "\n")


def cmd_chartab(config: RunConfig, out, err) -> int:
    table = _table(config, config.n)
    if config.output_format == "csv":
        out.write(table.to_csv())
    else:
        out.write(json.dumps(table.to_dict(), sort_keys=True) + "\n")
    err.write(f"character table of S_{config.n}: {len(table.labels)} x {len(table.labels)}\n")
    return EXIT_OK


def cmd_count(config: RunConfig, out, err) -> int:
    n = config.n
    if config.pi.n != n or config.class_type.n != n:
        raise DomainError(f"--pi and --class must be partitions of {n}")
    pi = Permutation.of_cycle_type(config.pi)
    table = _table(config, n)
    ceiling = config.brute_force_ceiling
    if config.mode == "sym":
        report = countkit.commutator_count_sym(pi, config.class_type, table, config.oracle, ceiling)
    elif config.mode == "alt":
        report = countkit.commutator_count_alt(pi, config.class_type, table, config.oracle, ceiling)
    else:
        report = countkit.generating_commutator_count(pi, config.class_type, config.oracle, ceiling, table)
    record = {"n": n, "pi": list(config.pi), "class": list(config.class_type), "mode": config.mode}
    record.update(report.to_dict())
    _emit(out, record)
    extra = f", brute force {report.brute_force}" if report.brute_force is not None else ""
    err.write(f"{config.mode} count: {report.exact} of |C| = {report.class_size}{extra}\n")
    return EXIT_OK


def cmd_orbits(config: RunConfig, out, err) -> int:
    kind = "tau" if config.command == "tsystems" else "kappa"
    graph = tsystems.TupleGraph(config.n, config.group, config.k, kind, config.brute_force_ceiling)
    summary = graph.summary()
    record = summary.to_dict()
    if kind == "tau" and config.group == "alternating" and config.k == 2:
        higman = tsystems.higman_check(config.n, graph=graph)
        record["higman_lower_bound"] = higman.lower_bound
        record["higman_constant_on_orbits"] = higman.constant_on_orbits
    del graph
    if kind == "tau":
        other = tsystems.TupleGraph(config.n, config.group, config.k, "kappa", config.brute_force_ceiling)
        record["kappa"] = other.summary().orbit_count
    _emit(out, record)
    err.write(f"{config.command} {config.group} n={config.n} k={config.k}: "
              f"{summary.orbit_count} orbits over {summary.total} generating tuples\n")
    return EXIT_OK


def cmd_verify(config: RunConfig, out, err) -> int:
    passed = failed = reports = 0
    for check in verify.SUITES[config.suite]():
        out.write(check.to_json() + "\n")
        if not check.assertable:
            reports += 1
        elif check.passed:
            passed += 1
        else:
            failed += 1
    err.write(f"{config.suite}: {passed} passed, {failed} failed, {reports} report-only\n")
    return EXIT_OK if failed == 0 else 1


COMMANDS = {"chartab": cmd_chartab, "count": cmd_count, "tsystems": cmd_orbits,
            "pra": cmd_orbits, "verify": cmd_verify}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    handler = logging.StreamHandler(err)
    handler.setFormatter(logging.Formatter("warning: %(message)s"))
    logger = logging.getLogger("snkit")
    logger.addHandler(handler)
    try:
        return _run(argv, out, err)
    finally:
        logger.removeHandler(handler)


def _run(argv, out, err) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = config_from_args(args)
    try:
        return COMMANDS[config.command](config, out, err)
    except ResourceLimitError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ExcludedCaseError as exc:
        err.write(f"excluded: {exc}\n")
        return EXIT_EXCLUDED
    except (DomainError, ValueError) as exc:
        err.write(f"rejected: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
