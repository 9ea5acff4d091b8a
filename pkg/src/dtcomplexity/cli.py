"""Command-line front end.

Each invocation prints exactly one JSON document on stdout (or writes it to
``-o``); diagnostics go to stderr.  Exit codes: 0 success, 1 failed
verification, 2 input error, 3 resource limit.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import classify, families, oracles, solvers
from .analysis import analyze
from .errors import DTError, InconsistentProfile, ResourceLimit
from .families import CONSTANT, INJECTIVE
from .table import read_table, write_table
from .tree import read_tree, write_dot, write_tree
from .treeops import validate

log = logging.getLogger("dtcomplexity")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

SOLVE_MODES = ("det-depth", "det-nodes", "det-nodes-budget", "nondet-depth", "nondet-nodes", "reduction-tree")
FAMILY_NAMES = ("u1", "u2", "u3", "halfplane", "feature")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dtc", description="Exact decision-tree synthesis and complexity analysis.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a decision table from a family")
    g.add_argument("--family", choices=FAMILY_NAMES, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--bound", type=int)
    g.add_argument("--labeling", choices=("injective", "constant"), default="injective")
    g.add_argument("-o", "--output")

    s = sub.add_parser("solve", help="compute an optimal or constructed tree")
    s.add_argument("--table", required=True)
    s.add_argument("--mode", choices=SOLVE_MODES, required=True)
    s.add_argument("--budget", type=int)
    s.add_argument("-o", "--output", help="write the witness tree (dtree-v1)")
    s.add_argument("--dot", help="write the witness tree as DOT")

    a = sub.add_parser("analyze", help="structural parameters of a table")
    a.add_argument("--table", required=True)
    a.add_argument("--reduction", choices=("rows", "all"), default="rows")
    a.add_argument("-o", "--output")

    v = sub.add_parser("verify", help="check a tree against a table")
    v.add_argument("--table", required=True)
    v.add_argument("--tree", required=True)
    v.add_argument("--mode", choices=("det", "nondet"), required=True)
    v.add_argument("-o", "--output")

    for name, helptext in (("profile", "worst-case profile of a family"), ("classify", "local type of a family")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("--family", choices=FAMILY_NAMES, required=True)
        q.add_argument("--n-max", type=int, required=True)
        q.add_argument("--bound", type=int)
        q.add_argument("-o", "--output")
        if name == "profile":
            q.add_argument("--csv")

    r = sub.add_parser("reach", help="ld/la reachability at scale n")
    r.add_argument("--family", choices=FAMILY_NAMES, required=True)
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--kind", choices=("ld", "la"), required=True)
    r.add_argument("--bound", type=int)
    r.add_argument("-o", "--output")

    o = sub.add_parser("oracle", help="brute-force minima for small tables")
    o.add_argument("--table", required=True)
    o.add_argument("--max-nodes", type=int)
    o.add_argument("--max-depth", type=int)
    o.add_argument("--max-columns", type=int, default=3)
    o.add_argument("-o", "--output")
    return p


def _emit(doc, output: Optional[str]) -> None:
    text = doc if isinstance(doc, str) else json.dumps(doc)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _solve(args) -> int:
    table = read_table(args.table)
    if args.mode == "det-depth":
        res = solvers.min_depth_det(table)
    elif args.mode == "det-nodes":
        res = solvers.min_nodes_det(table)
    elif args.mode == "det-nodes-budget":
        if args.budget is None:
            raise _UsageError("--budget is required with --mode det-nodes-budget")
        res = solvers.min_nodes_det_budgeted(table, args.budget)
    elif args.mode == "nondet-depth":
        res = solvers.min_depth_nondet(table)
    elif args.mode == "nondet-nodes":
        res = solvers.min_nodes_nondet(table)
    else:
        res = solvers.build_reduction_tree(table)
    if res.tree is not None:
        if args.output:
            write_tree(res.tree, args.output)
        if args.dot:
            write_dot(res.tree, args.dot)
    _emit(res.to_dict(), None)
    return EXIT_OK


class _UsageError(Exception):
    pass


def _family(args):
    return families.from_name(args.family, args.bound)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "gen":
            family = _family(args)
            labeling = INJECTIVE if args.labeling == "injective" else CONSTANT
            table = families.generate(family, families.canonical_worst_selection(family, args.n), labeling)
            if args.output:
                write_table(table, args.output)
                log.info("wrote %d rows to %s", len(table), args.output)
            else:
                _emit(table.dumps(), None)
            return EXIT_OK
        if args.command == "solve":
            return _solve(args)
        if args.command == "analyze":
            _emit(analyze(read_table(args.table), args.reduction).to_dict(), args.output)
            return EXIT_OK
        if args.command == "verify":
            report = validate(read_tree(args.tree), read_table(args.table), args.mode)
            _emit(report.to_dict(), args.output)
            for v in report.violations:
                log.warning("violation: %s %d: %s", v.kind, v.index, v.reason)
            return EXIT_OK if report.ok else EXIT_FAIL
        if args.command in ("profile", "classify"):
            if args.n_max < 1:
                raise _UsageError("--n-max must be at least 1")
            profile = classify.worstcase_profile(_family(args), range(1, args.n_max + 1))
            if args.command == "profile":
                if args.csv:
                    with open(args.csv, "w", newline="") as fh:
                        fh.write(profile.to_csv())
                _emit(profile.to_dict(), args.output)
            else:
                _emit(classify.local_type(profile).to_dict(), args.output)
            return EXIT_OK
        if args.command == "reach":
            _emit(classify.verify_reachability(_family(args), args.n, args.kind).to_dict(), args.output)
            return EXIT_OK
        if args.command == "oracle":
            table = read_table(args.table)
            det = oracles.exhaustive_det_oracle(table, args.max_nodes, args.max_depth, args.max_columns)
            try:
                nondet = oracles.exhaustive_nondet_oracle(table, args.max_nodes, args.max_depth, args.max_columns)
                nondet_doc = {"depth": nondet[0], "nodes": nondet[1]}
            except ResourceLimit as exc:
                log.warning("nondeterministic oracle skipped: %s", exc)
                nondet_doc = None
            _emit({"det": {"depth": det[0], "nodes": det[1]}, "nondet": nondet_doc}, args.output)
            return EXIT_OK
    except ResourceLimit as exc:
        print(f"dtc: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except InconsistentProfile as exc:
        print(f"dtc: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (_UsageError, DTError, OSError) as exc:
        print(f"dtc: {exc}", file=sys.stderr)
        return EXIT_INPUT
    raise AssertionError(f"unhandled command {args.command}")  # pragma: no cover


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
