#!/usr/bin/env python3
"""
Command-line interface for cyclic codes over R_r = F_{p^k}[v]/(v^{r+1} - v).

Every subcommand prints a deterministic text artifact on stdout, or its JSON
mirror with --json. Logs, progress bars and summaries go to stderr.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource limit.
"""

import argparse
import itertools
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from dataclasses_json import DataClassJsonMixin
from rich.console import Console
from rich.panel import Panel
from termcolor import colored

from algebra.gf import FieldSpec
from algebra.polyring import divisors_of_xn_minus_1, factor_xn_minus_1
from algebra.ring_r import RingSpec, idempotents, ring_is_idempotent
from codes import rcode
from codes.cyclic import CyclicCode, format_vector
from codes.descriptor import format_descriptor, read_descriptor, write_descriptor
from codes.rcode import RCode, RCodeword
from oracle.theorem_suite import (
    DEFAULT_GRID,
    DEFAULT_MAX_TRIPLES,
    FAIL,
    PASS,
    SKIP,
    CheckResult,
    parse_grid,
    verify_code,
    verify_theorem_suite,
)
from utils.common import (
    AlgebraError,
    LimitExceeded,
    MixedParameters,
    ParseError,
    check_limit,
    inject_fault,
    parse_limit,
)

logger = logging.getLogger("ringcyclic")

DEFAULT_WORKERS = 4

console = Console(stderr=True)
_installed_handlers: list[logging.Handler] = []


@dataclass
class CommandOutput(DataClassJsonMixin):
    """What a subcommand produced: text lines, their JSON mirror and the verdict."""

    command: str
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    passed: bool = True

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _limit_type(text: str) -> int:
    try:
        return parse_limit(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(exc.message)


def _weight(w: Union[int, float]) -> Optional[int]:
    return None if math.isinf(w) else int(w)


def _weight_text(w: Union[int, float]) -> str:
    return "inf" if math.isinf(w) else str(int(w))


def _status_text(status: str) -> str:
    color = {PASS: "green", FAIL: "red", SKIP: "yellow"}[status]
    return colored(status, color)


def _field_from_args(args: argparse.Namespace) -> FieldSpec:
    return FieldSpec.create(args.p, args.k)


def cmd_factor(args: argparse.Namespace) -> CommandOutput:
    spec = _field_from_args(args)
    factors = factor_xn_minus_1(args.n, spec, args.limit)
    lines = [str(f) for f in factors]
    return CommandOutput(
        "factor", lines, {"field": str(spec), "n": args.n, "factors": lines}
    )


def cmd_idempotents(args: argparse.Namespace) -> CommandOutput:
    ring = RingSpec(_field_from_args(args), args.r)
    basis = idempotents(ring)
    lines = [f"e{i} = {e}" for i, e in enumerate(basis, start=1)]
    checks: dict[str, bool] = {}
    for i, e in enumerate(basis, start=1):
        checks[f"e{i}^2 = e{i}"] = ring_is_idempotent(e)
        checks[f"e{i} != 0"] = not e.is_zero
    for (i, a), (j, b) in itertools.combinations(enumerate(basis, start=1), 2):
        checks[f"e{i}*e{j} = 0"] = (a * b).is_zero
    checks["sum = 1"] = basis[0] + basis[1] + basis[2] == ring.one
    lines += [f"{name} {PASS if ok else FAIL}" for name, ok in checks.items()]
    return CommandOutput(
        "idempotents",
        lines,
        {
            "ring": str(ring),
            "idempotents": [str(e) for e in basis],
            "checks": {name: ok for name, ok in checks.items()},
        },
        passed=all(checks.values()),
    )


def _with_checks(output: CommandOutput, code: RCode, args: argparse.Namespace) -> CommandOutput:
    """Append the per-code check lines when --verify is set."""
    if not args.verify:
        return output
    results = verify_code(code, seed=args.seed, limit=args.limit)
    output.lines += [result.to_line() for result in results]
    output.data["checks"] = [result.to_dict() for result in results]
    output.passed = all(result.status != FAIL for result in results)
    _log_results(results)
    return output


def cmd_build(args: argparse.Namespace) -> CommandOutput:
    code = read_descriptor(args.descriptor)
    lines = [str(code)]
    lines += [f"C{i} = {c}" for i, c in enumerate(code.components, start=1)]
    lines.append(f"|C| = {code.cardinality}")
    data: dict = {
        "code": str(code),
        "components": [str(c) for c in code.components],
        "cardinality": code.cardinality,
    }
    return _with_checks(CommandOutput("build", lines, data), code, args)


def cmd_dual(args: argparse.Namespace) -> CommandOutput:
    code = read_descriptor(args.descriptor)
    result = rcode.dual(code)
    if args.output:
        write_descriptor(result, args.output)
        logger.info(f"Wrote the dual of {code} to {args.output}")
    text = format_descriptor(result)
    output = CommandOutput(
        "dual",
        text.splitlines(),
        {"dual": str(result), "descriptor": text, "cardinality": result.cardinality},
    )
    return _with_checks(output, code, args)


def cmd_gray(args: argparse.Namespace) -> CommandOutput:
    code = read_descriptor(args.descriptor)
    if args.codeword is None:
        image = rcode.gray_map_code(code)
        lines = [f"phi(C) = {image}", f"length = {image.length}", f"|phi(C)| = {image.cardinality}"]
        output = CommandOutput(
            "gray",
            lines,
            {"image": str(image), "length": image.length, "cardinality": image.cardinality},
        )
        return _with_checks(output, code, args)
    tokens = args.codeword.split()
    if len(tokens) != code.n:
        raise MixedParameters(f"Codeword has {len(tokens)} coordinates, the code has length {code.n}")
    word = RCodeword.from_ring_elements(code.ring, [code.ring.parse_element(t) for t in tokens])
    if not code.contains(word):
        logger.warning(f"{word} is not a codeword of {code}")
    vector = format_vector(rcode.gray_map(word))
    output = CommandOutput(
        "gray", [vector], {"codeword": str(word), "image": vector, "in_code": code.contains(word)}
    )
    return _with_checks(output, code, args)


def cmd_idempotent(args: argparse.Namespace) -> CommandOutput:
    code = read_descriptor(args.descriptor)
    e = rcode.idempotent_over_r(code)
    dual_e = rcode.dual_idempotent(code)
    parts = [c.generating_idempotent for c in code.components]
    lines = [f"e = {e}"]
    lines += [f"f{i} = {f}" for i, f in enumerate(parts, start=1)]
    lines.append(f"dual e = {dual_e}")
    output = CommandOutput(
        "idempotent",
        lines,
        {
            "idempotent": str(e),
            "components": [str(f) for f in parts],
            "dual_idempotent": str(dual_e),
        },
    )
    return _with_checks(output, code, args)


def cmd_single_gen(args: argparse.Namespace) -> CommandOutput:
    code = read_descriptor(args.descriptor)
    g = rcode.single_generator(code)
    return _with_checks(CommandOutput("single-gen", [f"g = {g}"], {"generator": str(g)}), code, args)


def cmd_selfdual_search(args: argparse.Namespace) -> CommandOutput:
    """Exhaustive scan of every divisor triple for n = 1..n_max prime to p."""
    ring = RingSpec(_field_from_args(args), args.r)
    rows = []
    for n in range(1, args.n_max + 1):
        if n % args.p == 0:
            continue
        codes = [
            CyclicCode.from_generator(g, n)
            for g in divisors_of_xn_minus_1(n, ring.field, args.limit)
        ]
        check_limit(len(codes) ** 3, f"the divisor triples for n={n}", args.limit)
        found = 0
        for triple in itertools.product(codes, repeat=3):
            if rcode.is_self_dual(rcode.RCode(ring, *triple)):
                row = {"n": n}
                row.update({f"g{i}": str(c.generator) for i, c in enumerate(triple, start=1)})
                rows.append(row)
                found += 1
        logger.info(f"n={n}: {len(codes) ** 3} codes, {found} self-dual")
    lines = ["n g1 g2 g3"] + [f"{row['n']} {row['g1']} {row['g2']} {row['g3']}" for row in rows]
    return CommandOutput("selfdual-search", lines, {"ring": str(ring), "codes": rows})


def cmd_min_distance(args: argparse.Namespace) -> CommandOutput:
    code = read_descriptor(args.descriptor)
    weights = {f"d(C{i})": c.min_weight(args.limit) for i, c in enumerate(code.components, start=1)}
    weights["d_R(C)"] = rcode.min_weight(code, args.limit)
    weights["d_H(phi(C))"] = rcode.gray_min_weight(code, args.limit)
    lines = [f"{name} = {_weight_text(w)}" for name, w in weights.items()]
    return CommandOutput(
        "min-distance", lines, {"code": str(code), "weights": {k: _weight(w) for k, w in weights.items()}}
    )


def _log_results(results: list[CheckResult]) -> None:
    for result in results:
        if result.status != PASS:
            logger.info(f"{result.theorem} {result.params} {_status_text(result.status)} {result.counterexample or result.detail or ''}")


def cmd_verify(args: argparse.Namespace) -> CommandOutput:
    grid_text = DEFAULT_GRID if args.grid is None else args.grid
    points = parse_grid(grid_text)
    logger.info(f"Verifying {len(points)} grid points with {args.workers} workers")

    def run():
        return verify_theorem_suite(
            points,
            seed=args.seed,
            workers=args.workers,
            max_triples=args.max_triples,
            limit=args.limit,
            shard_id=args.shard_id,
            shard_ct=args.shard_ct,
            grid_text=grid_text,
            show_progress=not args.minimize_stdout_logs,
        )

    if args.inject_fault:
        with inject_fault(args.inject_fault):
            report = run()
    else:
        report = run()

    _log_results(report.results)
    if args.report:
        with open(args.report, "w") as f:
            f.write(report.to_json() + "\n")
        logger.info(f"Wrote the JSON report to {args.report}")
    if not args.minimize_stdout_logs:
        console.print(
            Panel(
                f"{len(report.results)} checks: {report.count(PASS)} pass, "
                f"{report.count(FAIL)} fail, {report.count(SKIP)} skip",
                title="[bold green]verify passed[/bold green]"
                if report.passed
                else "[bold red]verify failed[/bold red]",
                border_style="green" if report.passed else "red",
            )
        )
    return CommandOutput(
        "verify",
        [result.to_line() for result in report.results],
        {"report": report.to_dict()},
        report.passed,
    )


def _configure_logging(args: argparse.Namespace) -> None:
    root = logging.getLogger()
    for handler in _installed_handlers:
        root.removeHandler(handler)
        handler.close()
    _installed_handlers.clear()
    root.setLevel(logging.DEBUG)
    if args.logs_path:
        if os.path.exists(args.logs_path):
            os.remove(args.logs_path)
        _installed_handlers.append(logging.FileHandler(args.logs_path))
    if not args.minimize_stdout_logs:
        stream = logging.StreamHandler(sys.stderr)
        stream.setLevel(logging.INFO)
        _installed_handlers.append(stream)
    for handler in _installed_handlers:
        root.addHandler(handler)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=False, help="Print the JSON mirror of the output.")
    common.add_argument("--logs-path", type=str, default=None, help="Path to save logs")
    common.add_argument(
        "--minimize-stdout-logs",
        help="Minimize the amount of logs and progress printed to the terminal.",
        action="store_true",
        default=False,
    )
    common.add_argument(
        "--limit",
        type=_limit_type,
        default=None,
        help="Enumeration ceiling, e.g. 4194304 or 2**22 (overrides RINGCYCLIC_LIMIT).",
    )

    field_args = argparse.ArgumentParser(add_help=False)
    field_args.add_argument("--p", type=int, required=True, help="Characteristic p")
    field_args.add_argument("--k", type=int, default=1, help="Extension degree k")

    parser = argparse.ArgumentParser(
        prog="ringcyclic",
        description="Cyclic codes over F_{p^k}[v]/(v^{r+1} - v)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str, parents: list) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text, parents=[common, *parents])
        sub.set_defaults(handler=handler)
        return sub

    factor = add("factor", cmd_factor, "Irreducible factors of x^n - 1", [field_args])
    factor.add_argument("--n", type=int, required=True)

    ring = add("idempotents", cmd_idempotents, "The orthogonal idempotents e1, e2, e3", [field_args])
    ring.add_argument("--r", type=int, required=True)

    verify_args = argparse.ArgumentParser(add_help=False)
    verify_args.add_argument("descriptor")
    verify_args.add_argument("--verify", action="store_true", default=False, help="Cross-check with the exhaustive engines.")
    verify_args.add_argument("--seed", type=int, default=0)

    add("build", cmd_build, "Build a code from a descriptor file", [verify_args])

    dual = add("dual", cmd_dual, "Dual code, as a descriptor", [verify_args])
    dual.add_argument("--output", "-o", type=str, default=None, help="Write the dual descriptor here")

    gray = add("gray", cmd_gray, "Gray image of a code or of one codeword", [verify_args])
    gray.add_argument("--codeword", type=str, default=None, help='Ring elements separated by spaces, e.g. "1+v 2*v^2"')

    add("idempotent", cmd_idempotent, "Generating idempotent and dual idempotent", [verify_args])

    add("single-gen", cmd_single_gen, "Single generator over R", [verify_args])

    search = add("selfdual-search", cmd_selfdual_search, "All self-dual codes up to a length", [field_args])
    search.add_argument("--r", type=int, required=True)
    search.add_argument("--n-max", type=int, required=True)

    distance = add("min-distance", cmd_min_distance, "Minimum distances of a code", [])
    distance.add_argument("descriptor")

    verify = add("verify", cmd_verify, "Run the exhaustive check suite over a grid", [])
    verify.add_argument("--grid", type=str, default=None, help=f'Parameter grid, default "{DEFAULT_GRID}"')
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    verify.add_argument("--max-triples", type=int, default=DEFAULT_MAX_TRIPLES)
    verify.add_argument("--shard-ct", type=int, default=1, help="Number of shards to split the grid into")
    verify.add_argument("--shard-id", type=int, default=0, help="Shard to run")
    verify.add_argument("--report", type=str, default=None, help="Write the JSON report (one line) here")
    verify.add_argument("--inject-fault", type=str, default=None, help=argparse.SUPPRESS)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point for the CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)

    try:
        output = args.handler(args)
    except LimitExceeded as exc:
        console.print(f"[bold yellow]Limit exceeded:[/bold yellow] {exc.message}")
        return exc.exit_code
    except AlgebraError as exc:
        console.print(f"[bold red]Error ({type(exc).__name__}):[/bold red] {exc.message}")
        return exc.exit_code
    except OSError as exc:
        console.print(f"[bold red]Error:[/bold red] {exc}")
        return 2

    if args.json:
        sys.stdout.write(output.dumps() + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in output.lines))
    sys.stdout.flush()
    return 0 if output.passed else 1


if __name__ == "__main__":
    sys.exit(main())
