"""Command-line front end: solve, kernelize, generate, verify, classify.

Every command prints a report of ``key: value`` lines in a fixed order.
Exit codes: 0 success / YES / equivalent, 1 NO / not equivalent,
2 usage or parse error, 3 algorithm or kernel-mode precondition failure.
Wall-clock timing is only printed with ``--timing`` so reports stay
byte-identical across runs.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .cover_enum import PreconditionError, is_2k2_free
from .graph_core import GraphError, planar_edge_bound_check
from .instance_io import DEFAULTS, KINDS, GenerateError, ParseError, generate, parse, serialize
from .kernelize import MODES, KernelConfig, classify_special, kernelize, partition_hlr, verify_kernel
from .solvers import ALGORITHMS, solve

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3
INSTANCE_SUFFIX = ".spfg"


class UsageError(Exception):
    pass


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _read(path: str) -> tuple[str, str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return raw.decode("utf-8"), _sha256(raw)


def _write(path: str, text: str) -> str:
    data = text.encode("utf-8")
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None
    return _sha256(data)


def _fmt(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    return str(value)


def render(pairs: Sequence[tuple[str, object]]) -> str:
    return "".join(f"{key}: {_fmt(value)}\n" for key, value in pairs)


def _edges(ids) -> str:
    return " ".join(f"e{e}" for e in sorted(ids)) if ids else "-"


def _solve_one(path: str, algorithm: str, witness: bool, timing: bool) -> tuple[int, str]:
    text, digest = _read(path)
    inst = parse(text)
    start = time.perf_counter()
    verdict = solve(inst, algorithm)
    elapsed = time.perf_counter() - start
    report: list[tuple[str, object]] = [
        ("command", "solve"),
        ("input", path),
        ("input_sha256", digest),
        ("algorithm", verdict.algorithm),
        ("verdict", verdict.label),
        ("size", verdict.size),
        ("optimum", verdict.optimum),
    ]
    if witness:
        report.append(("witness", _edges(verdict.witness) if verdict.witness is not None else None))
    for key in ("covers_tried", "extend_calls", "subsets_tried"):
        if key in verdict.stats:
            report.append((key, int(verdict.stats[key])))
    if timing:
        report.append(("elapsed_ms", f"{elapsed * 1000:.3f}"))
    return (EXIT_YES if verdict.answer else EXIT_NO), render(report)


def _solve_job(args: tuple[str, str, bool, bool]) -> tuple[int, str]:
    try:
        return _solve_one(*args)
    except (ParseError, GraphError, UsageError) as exc:
        return EXIT_USAGE, render([("command", "solve"), ("input", args[0]), ("error", exc)])
    except PreconditionError as exc:
        return EXIT_PRECONDITION, render([("command", "solve"), ("input", args[0]), ("error", exc)])


def cmd_solve(ns: argparse.Namespace) -> int:
    if os.path.isdir(ns.input):
        files = sorted(os.path.join(ns.input, f) for f in os.listdir(ns.input) if f.endswith(INSTANCE_SUFFIX))
        jobs = [(f, ns.algo, ns.witness, ns.timing) for f in files]
        if ns.jobs > 1:
            with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
                results = list(pool.map(_solve_job, jobs))
        else:
            results = [_solve_job(j) for j in jobs]
        sys.stdout.write("\n".join(text for _, text in results))
        errors = [code for code, _ in results if code >= EXIT_USAGE]
        return max(errors) if errors else 0
    code, text = _solve_one(ns.input, ns.algo, ns.witness, ns.timing)
    sys.stdout.write(text)
    return code


def cmd_kernelize(ns: argparse.Namespace) -> int:
    if ns.mode == "bounded-degree" and ns.eta is None:
        raise UsageError("--mode bounded-degree requires --eta")
    text, digest = _read(ns.input)
    inst = parse(text)
    start = time.perf_counter()
    result = kernelize(inst, KernelConfig(ns.mode, ns.eta))
    elapsed = time.perf_counter() - start
    out_digest = _write(ns.output, serialize(result.reduced))
    if ns.report:
        report: list[tuple[str, object]] = [
            ("command", "kernelize"),
            ("input", ns.input),
            ("input_sha256", digest),
            ("output", ns.output),
            ("output_sha256", out_digest),
        ]
        report += result.audit.items()
        report.append(("edge_map", " ".join(map(str, result.edge_map)) or None))
        if ns.timing:
            report.append(("elapsed_ms", f"{elapsed * 1000:.3f}"))
        if ns.format == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow([k for k, _ in report])
            writer.writerow([_fmt(v) for _, v in report])
            sys.stdout.write(buf.getvalue())
        else:
            sys.stdout.write(render(report))
    return 0


def cmd_generate(ns: argparse.Namespace) -> int:
    params = {key: getattr(ns, key) for key in _PARAM_NAMES if getattr(ns, key) is not None}
    unknown = sorted(set(params) - set(DEFAULTS[ns.kind]))
    if unknown:
        raise UsageError(f"kind {ns.kind} does not take {', '.join('--' + u for u in unknown)}")
    inst = generate(ns.kind, params, ns.seed)
    text = serialize(inst)
    if ns.output == "-":
        sys.stdout.write(text)
        return 0
    digest = _write(ns.output, text)
    sys.stdout.write(render([
        ("command", "generate"),
        ("kind", ns.kind),
        ("seed", ns.seed),
        ("output", ns.output),
        ("output_sha256", digest),
        ("n", inst.graph.n),
        ("m", inst.graph.m),
        ("forcing_pairs", len(inst.forcing.pairs)),
    ]))
    return 0


def cmd_verify(ns: argparse.Namespace) -> int:
    text_o, digest_o = _read(ns.original)
    text_k, digest_k = _read(ns.kernel)
    original, reduced = parse(text_o), parse(text_k)
    try:
        same = verify_kernel(original, reduced)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(render([
        ("command", "verify"),
        ("original", ns.original),
        ("original_sha256", digest_o),
        ("kernel", ns.kernel),
        ("kernel_sha256", digest_k),
        ("equivalent", same),
    ]))
    return 0 if same else 1


def cmd_classify(ns: argparse.Namespace) -> int:
    text, digest = _read(ns.input)
    inst = parse(text)
    special = classify_special(inst.forcing)
    part = partition_hlr(inst)
    sys.stdout.write(render([
        ("command", "classify"),
        ("input", ns.input),
        ("input_sha256", digest),
        ("n", inst.graph.n),
        ("m", inst.graph.m),
        ("forcing_pairs", len(inst.forcing.pairs)),
        ("two_k2_free", is_2k2_free(inst.forcing)),
        ("cluster", special.cluster),
        ("max_forcing_degree", special.max_degree),
        ("non_isolated", special.non_isolated),
        ("euler_planar_ok", planar_edge_bound_check(inst.graph)),
        ("k", inst.k),
        ("h_size", len(part.H)),
        ("l_size", len(part.L)),
        ("r_size", len(part.R)),
        ("r_pairs", part.r_pairs),
        ("partition_rejected", part.rejected),
    ]))
    return 0


_PARAM_NAMES = sorted({name for params in DEFAULTS.values() for name in params})


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spfg", description="Shortest Path with Forcing Graph solvers and kernels.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("--input", required=True, help=f"instance file, or a directory of *{INSTANCE_SUFFIX} files")
    p.add_argument("--algo", choices=ALGORITHMS, default="auto")
    p.add_argument("--witness", action="store_true", help="print the solution edge ids")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for a directory sweep")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernelize", help="write a reduced equivalent instance")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=MODES, default="general")
    p.add_argument("--eta", type=int)
    p.add_argument("--output", required=True)
    p.add_argument("--report", action="store_true", help="print the kernel audit")
    p.add_argument("--format", choices=("kv", "csv"), default="kv", help="report layout")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("generate", help="write a seeded random instance")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True, help="file path, or - for stdout")
    for name in _PARAM_NAMES:
        p.add_argument(f"--{name}", type=int)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="brute-force check that a kernel preserves the verdict")
    p.add_argument("--original", required=True)
    p.add_argument("--kernel", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="report forcing-graph and base-graph classes")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        return ns.func(ns)
    except UsageError as exc:
        print(f"spfg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, GenerateError, GraphError) as exc:
        print(f"spfg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"spfg: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"spfg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
