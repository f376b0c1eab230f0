"""Command-line front end.

Exit codes:

* 0 -- success (``check``: deadlock-free; ``verify``: full agreement)
* 1 -- ``check`` found a deadlock
* 2 -- bad input or usage
* 3 -- ``verify`` found a property violation
* 4 -- an oracle exceeded its resource cap
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import oracle
from .graph import GraphError, RoutingGraph, parse_graph, random_graph, serialize_graph, to_dot
from .marking import Verdict, run_algorithm
from .witness import check_witness, format_witness

EXIT_OK, EXIT_DEADLOCK, EXIT_INPUT, EXIT_VIOLATION, EXIT_LIMIT = range(5)


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    seed: int = 0
    channels: int = 0
    sinks: int = 1
    density: float = 0.5
    count: int = 1
    max_paths: int = oracle.DEFAULT_MAX_PATHS
    max_subsets: int = oracle.DEFAULT_MAX_SUBSETS
    with_marks: bool = False
    machine: bool = False
    verbose: int = 0


class _Report:
    """Collects output lines as either text or key=value records."""

    def __init__(self, machine: bool):
        self.machine = machine
        self.lines: list[str] = []

    def put(self, key: str, value, text: str | None = None):
        if self.machine:
            self.lines.append(f"{key}={value}")
        elif text is not None:
            self.lines.append(text)

    def text(self, line: str):
        if not self.machine:
            self.lines.append(line)

    def render(self) -> str:
        return "".join(line + "\n" for line in self.lines)


def _read_graph(path: str) -> RoutingGraph:
    if path == "-":
        return parse_graph(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dests(ds) -> str:
    return ",".join(map(str, ds)) if ds else "-"


def cmd_check(config: RunConfig) -> tuple[int, str]:
    g = _read_graph(config.input)
    report = run_algorithm(g)
    out = _Report(config.machine)
    store = report.store
    for c in g.channels:
        out.put(f"mark.{c}", store.marks[c], f"mark {c} = {store.marks[c]}")
    for c in g.channels:
        out.put(f"escs.{c}", _dests(store.escs[c]), f"escs {c} = {_dests(store.escs[c])}")
        out.put(f"deps.{c}", _dests(store.deps[c]), f"deps {c} = {_dests(store.deps[c])}")
    out.put("verdict", report.verdict, f"verdict: {report.verdict}")
    out.put("rounds", report.rounds, f"rounds: {report.rounds}")
    if report.witness is None:
        return EXIT_OK, out.render()
    w = report.witness
    out.put("witness.count", len(w), f"witness: {len(w)} paths")
    if config.machine:
        for i, (p, d) in enumerate(w.pairs()):
            out.put(f"witness.{i}.dest", d)
            out.put(f"witness.{i}.channels", " ".join(map(str, p)))
    else:
        out.lines.extend(format_witness(w).splitlines())
    ok = check_witness(g, w)
    out.put("witness.check", "pass" if ok else "fail", f"witness check: {'pass' if ok else 'fail'}")
    return EXIT_DEADLOCK, out.render()


def cmd_verify(config: RunConfig) -> tuple[int, str]:
    g = _read_graph(config.input)
    report = run_algorithm(g)
    result = oracle.analyze(g, config.max_paths, config.max_subsets)
    deadlock = report.verdict is Verdict.DEADLOCK
    disjoint = result.disjoint_deadlock is not None
    agree = deadlock == result.escape_free_exists
    sound = not disjoint or deadlock
    false_deadlock = deadlock and not disjoint

    out = _Report(config.machine)
    out.put("algorithm", report.verdict, f"algorithm          : {report.verdict}")
    out.put("escape_free", str(result.escape_free_exists).lower(),
            f"escape-free oracle : {str(result.escape_free_exists).lower()}")
    out.put("disjoint", "present" if disjoint else "absent",
            f"disjoint oracle    : {'present' if disjoint else 'absent'}")
    out.put("false_deadlock", str(false_deadlock).lower(),
            f"false deadlock     : {'yes' if false_deadlock else 'no'}")
    out.put("paths", result.path_count, f"simple d-paths     : {result.path_count}")
    if not agree:
        out.put("violation", "algorithm-vs-escape-free",
                "violation          : algorithm disagrees with escape-free oracle")
    if not sound:
        out.put("violation", "disjoint-soundness",
                "violation          : disjoint deadlock exists but algorithm says deadlock-free")
    status = "ok" if agree and sound else "violation"
    out.put("status", status, f"agreement          : {status}")
    if disjoint and config.verbose:
        out.text("disjoint deadlock:")
        out.lines.extend(format_witness(result.disjoint_deadlock).splitlines())
    return (EXIT_OK if status == "ok" else EXIT_VIOLATION), out.render()


def cmd_gen(config: RunConfig) -> tuple[int, str]:
    if config.count > 1 and (config.output is None or "{seed}" not in config.output):
        raise GraphError("--count > 1 needs an -o path containing '{seed}'")
    for seed in range(config.seed, config.seed + config.count):
        g = random_graph(config.channels, config.sinks, config.density, seed)
        path = config.output.replace("{seed}", str(seed)) if config.output else None
        _write(path, serialize_graph(g))
    return EXIT_OK, ""


def cmd_export_dot(config: RunConfig) -> tuple[int, str]:
    g = _read_graph(config.input)
    marks = run_algorithm(g).store.marks if config.with_marks else None
    _write(config.output, to_dot(g, marks))
    return EXIT_OK, ""


COMMANDS = {
    "check": cmd_check,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", default=argparse.SUPPRESS,
                        help="emit key=value records instead of text")
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="wormdl", parents=[common],
                                     description="Deadlock analysis for wormhole networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="mark channels and report a verdict")
    p.add_argument("input", help="graph file, or '-' for stdin")

    p = sub.add_parser("verify", parents=[common], help="compare the algorithm with both oracles")
    p.add_argument("input")
    p.add_argument("--max-paths", type=int, default=oracle.DEFAULT_MAX_PATHS)
    p.add_argument("--max-subsets", type=int, default=oracle.DEFAULT_MAX_SUBSETS)

    p = sub.add_parser("gen", parents=[common], help="write a seeded random graph")
    p.add_argument("--channels", type=int, required=True)
    p.add_argument("--sinks", type=int, default=1)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("-o", "--output")

    p = sub.add_parser("export-dot", parents=[common], help="render a graph as Graphviz DOT")
    p.add_argument("input")
    p.add_argument("--with-marks", action="store_true")
    p.add_argument("-o", "--output")
    return parser


def parse_config(argv) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    return RunConfig(
        command=ns["command"],
        input=ns.get("input"),
        output=ns.get("output"),
        seed=ns.get("seed", 0),
        channels=ns.get("channels", 0),
        sinks=ns.get("sinks", 1),
        density=ns.get("density", 0.5),
        count=ns.get("count", 1),
        max_paths=ns.get("max_paths", oracle.DEFAULT_MAX_PATHS),
        max_subsets=ns.get("max_subsets", oracle.DEFAULT_MAX_SUBSETS),
        with_marks=ns.get("with_marks", False),
        machine=ns.get("machine", False),
        verbose=ns.get("verbose", 0),
    )


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command; returns ``(exit status, report text)``."""
    try:
        return COMMANDS[config.command](config)
    except (GraphError, OSError, UnicodeDecodeError) as exc:
        return EXIT_INPUT, f"error: {exc}\n"
    except oracle.OracleLimitError as exc:
        return EXIT_LIMIT, f"error: {exc}\n"


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    status, text = run(config)
    (sys.stderr if text.startswith("error:") else sys.stdout).write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
