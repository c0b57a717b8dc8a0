"""Command-line front end: ``upword generate|verify|analyze|search|probe``.

Exit codes: 0 success, 1 verification failure or unexpected witness,
2 bad parameters or input, 3 nothing found within the budget.
"""
from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from . import __version__
from .nonexistence import THEOREMS, confirm_nonexistence
from .overlap_graph import build_clustered_graph, double_edge_cycles, find_twins, word_str
from .pword import PWord, verify
from .search import BUDGET_EXCEEDED, EXHAUSTED, WITNESS, probe_conjecture1, search, spec_from_config
from .shortener import NotFoundWithinBudget, construct_restricted, generate_ucycle, generate_uword
from .textio import ParseError, format_pword, parse_pword

OK, FAILED, USAGE, NOT_FOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    parameters: dict
    version: str
    seed: Optional[int]
    digest: str

    def dump(self) -> str:
        # the timestamp lives on its own header line so the body stays reproducible
        stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
        return f"# created {stamp}\n" + json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _report_text(report) -> str:
    lines = [f"verdict: {report.verdict}"]
    d = report.to_dict()
    lines.append(f"covered: {d['covered']}/{d['total']}")
    if d["missing"]:
        lines.append("missing: " + " ".join(d["missing"]))
    for item in d["duplicates"]:
        lines.append(f"duplicate: {item['permutation']} at windows {item['windows']}")
    if d["min_gap"] is not None:
        lines.append(f"min equal-letter gap: {d['min_gap']}")
    return "\n".join(lines)


def _word_output(u: PWord, fmt: str) -> tuple:
    report = verify(u)
    if fmt == "json":
        text = _json({"schema": 1, "word": format_pword(u), "length": len(u.symbols),
                      "report": report.to_dict()})
    else:
        text = format_pword(u) + f"length: {len(u.symbols)}\n" + _report_text(report)
    return text, OK if report.exact else FAILED


def cmd_generate(args) -> tuple:
    if args.kind == "restricted":
        mode = {"inc": "increasing", "dec": "decreasing"}[args.mode]
        if not 2 <= args.n <= 7:
            raise UsageError("restricted words are built for 2 <= n <= 7")
        u = construct_restricted(args.n, mode)
    else:
        try:
            if args.kind == "uword":
                u = PWord(generate_uword(args.n, args.k), args.n, cyclic=False)
            else:
                u = PWord(generate_ucycle(args.n, args.k, args.budget, args.seed), args.n, cyclic=True)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        except NotFoundWithinBudget as exc:
            return str(exc), NOT_FOUND
    return _word_output(u, args.format)


def cmd_verify(args) -> tuple:
    text = Path(args.file).read_text() if args.file else sys.stdin.read()
    cyclic = None if args.cyclic is None else bool(args.cyclic)
    u = parse_pword(text, n=args.n, cyclic=cyclic)
    report = verify(u)
    if args.format == "json":
        out = _json({"schema": 1, "word": format_pword(u), "report": report.to_dict()})
    else:
        out = _report_text(report)
    return out, OK if report.exact else FAILED


def cmd_analyze(args) -> tuple:
    try:
        g = build_clustered_graph(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    clusters = g.clusters
    twins = {sig: find_twins(c) for sig, c in clusters.items()}
    cycles = double_edge_cycles(g)
    if args.dot:
        Path(args.dot).write_text(g.to_dot())
    data = {
        "schema": 1,
        "n": args.n,
        "clusters": len(clusters),
        "edges": len(g.edges),
        "balanced": g.is_balanced(),
        "strongly_connected": g.is_strongly_connected(),
        "twins": {word_str(s): [word_str(p) for p in pair] for s, pair in sorted(twins.items())},
        "double_edge_cycles": [[word_str(s) for s in c.signatures] for c in cycles],
    }
    if args.format == "json":
        return _json(data), OK
    lines = [f"n={args.n}: {data['clusters']} clusters, {data['edges']} edges, "
             f"balanced={data['balanced']}, strongly connected={data['strongly_connected']}"]
    for sig, pair in data["twins"].items():
        lines.append(f"cluster {sig or '-'}: twins {pair[0]} {pair[1]}")
    lens = sorted({len(c) for c in data["double_edge_cycles"]})
    lines.append(f"{len(cycles)} double-edge cycles of length {','.join(map(str, lens))}")
    for c in data["double_edge_cycles"]:
        lines.append("  " + " -> ".join(s or "-" for s in c))
    return "\n".join(lines), OK


def cmd_search(args) -> tuple:
    if args.spec:
        try:
            spec = spec_from_config(Path(args.spec).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"bad spec: {exc}") from exc
        outcome = search(spec, jobs=args.jobs)
        code = {WITNESS: OK, EXHAUSTED: FAILED, BUDGET_EXCEEDED: NOT_FOUND}[outcome.verdict]
        return _json(outcome.to_dict()), code
    if args.n is None:
        raise UsageError("--theorem needs --n")
    try:
        report = confirm_nonexistence(args.theorem, args.n, cross_check=args.cross_check,
                                      heavy=args.heavy, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if report.inconsistent:
        code = FAILED
    elif report.verdict == BUDGET_EXCEEDED:
        code = NOT_FOUND
    else:
        code = OK
    return _json(report.to_dict()), code


def cmd_probe(args) -> tuple:
    try:
        outcome = probe_conjecture1(args.n, args.k, args.budget, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    code = {WITNESS: OK, EXHAUSTED: FAILED, BUDGET_EXCEEDED: NOT_FOUND}[outcome.verdict]
    return _json(outcome.to_dict()), code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="upword", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--manifest", metavar="PATH", help="also write a run manifest")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a universal word or cycle")
    g.add_argument("kind", choices=["uword", "ucycle", "restricted"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, default=0, help="double-edge cycles to collapse")
    g.add_argument("--mode", choices=["inc", "dec"], default="inc")
    g.add_argument("--budget", type=int, default=1000, help="circuits to try (ucycle)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=["text", "json"], default="text")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check a word read from a file or stdin")
    v.add_argument("--file")
    v.add_argument("--n", type=int, help="window size when the input has no header")
    v.add_argument("--cyclic", type=int, choices=[0, 1])
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="clustered overlap graph statistics")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--dot", metavar="PATH")
    a.add_argument("--format", choices=["text", "json"], default="text")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("search", help="exhaustive search or non-existence check")
    what = s.add_mutually_exclusive_group(required=True)
    what.add_argument("--spec", metavar="FILE", help="key=value search spec")
    what.add_argument("--theorem", choices=sorted(THEOREMS))
    s.add_argument("--n", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--heavy", action="store_true")
    s.add_argument("--cross-check", action=argparse.BooleanOptionalAction, default=None)
    s.set_defaults(func=cmd_search)

    pr = sub.add_parser("probe", help="look for short u-cycles via collapsed graphs")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--k", type=int, required=True)
    pr.add_argument("--budget", type=int, default=1000)
    pr.add_argument("--seed", type=int, default=0)
    pr.set_defaults(func=cmd_probe)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        out, code = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except (UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    out = out.rstrip("\n") + "\n"
    sys.stdout.write(out)
    if args.manifest:
        params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest")}
        manifest = RunManifest(args.command, params, __version__, params.get("seed"),
                               hashlib.sha256(out.encode()).hexdigest())
        Path(args.manifest).write_text(manifest.dump())
    return code


if __name__ == "__main__":
    sys.exit(main())
