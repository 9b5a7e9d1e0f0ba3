"""Command-line frontend.

Exit codes: 0 for a positive verdict (or plain success), 1 for a negative
verdict, 2 for usage or parse errors, 3 when a size guard aborts the
computation.  Verdict text goes to standard output, diagnostics to standard
error; `--quiet` suppresses standard output so scripts can rely on the exit
code alone.
"""

from __future__ import annotations

import argparse
import sys

from .automata import Apt
from .formats import (ParseError, parse_annotated, parse_apt, parse_hors,
                      print_annotated, print_tree, tree_to_dot)
from .game import EveNode, build_game, to_dot, zielonka
from .itypes import SizeGuardExceeded, StateType
from .selection import extract_scheme, format_report, verify_runtree
from .syntax import (Hors, IllFormedScheme, UnresolvedWithinBudget,
                     check_wellformed, unfold)


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"{path}: {e.strerror or e}", 2)


def _load_hors(path: str) -> Hors:
    try:
        h = parse_hors(_read(path))
    except ParseError as e:
        raise CliError(f"{path}:{e.line}:{e.col}: {e.msg}", 2)
    diags = check_wellformed(h)
    if diags:
        listing = "\n".join(f"{path}: {d}" for d in diags)
        raise CliError(listing, 2)
    return h


def _load_apt(path: str, h: Hors) -> Apt:
    try:
        m = parse_apt(_read(path), terminals=h.terminals)
    except ParseError as e:
        raise CliError(f"{path}:{e.line}:{e.col}: {e.msg}", 2)
    try:
        m.validate()
    except ValueError as e:
        raise CliError(f"{path}: {e}", 2)
    return m


def _pick_state(args, m: Apt) -> str:
    q = args.state or m.initial
    if q not in m.states:
        raise CliError(f"unknown state '{q}'", 2)
    return q


def _emit(args, text: str) -> None:
    if not args.quiet:
        sys.stdout.write(text)


def _write_out(args, text: str) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        _emit(args, text)


def cmd_check(args) -> int:
    h = _load_hors(args.scheme)
    m = _load_apt(args.automaton, h)
    q = _pick_state(args, m)
    g = build_game(h, m, states=[q])
    sol = zielonka(g)
    accepted = EveNode(h.start, StateType(q)) in sol.win_eve
    _emit(args, ("ACCEPT" if accepted else "REJECT") + "\n")
    return 0 if accepted else 1


def cmd_states(args) -> int:
    h = _load_hors(args.scheme)
    m = _load_apt(args.automaton, h)
    g = build_game(h, m)
    sol = zielonka(g)
    for q in m.states:
        if EveNode(h.start, StateType(q)) in sol.win_eve:
            _emit(args, q + "\n")
    return 0


def cmd_select(args) -> int:
    h = _load_hors(args.scheme)
    m = _load_apt(args.automaton, h)
    q = _pick_state(args, m)
    g = build_game(h, m, states=[q])
    sol = zielonka(g)
    if EveNode(h.start, StateType(q)) not in sol.win_eve:
        sys.stderr.write(f"state '{q}' rejected; no witness exists\n")
        return 1
    witness = extract_scheme(h, m, sol, q)
    _write_out(args, print_annotated(witness))
    return 0


def cmd_unfold(args) -> int:
    h = _load_hors(args.scheme)
    tree = unfold(h, args.depth)
    if args.dot:
        _write_out(args, tree_to_dot(tree))
    else:
        _write_out(args, print_tree(tree) + "\n")
    return 0


def cmd_verify(args) -> int:
    h = _load_hors(args.scheme)
    m = _load_apt(args.automaton, h)
    q = _pick_state(args, m)
    if args.witness:
        try:
            witness = parse_annotated(_read(args.witness))
        except ParseError as e:
            raise CliError(f"{args.witness}:{e.line}:{e.col}: {e.msg}", 2)
    else:
        g = build_game(h, m, states=[q])
        sol = zielonka(g)
        if EveNode(h.start, StateType(q)) not in sol.win_eve:
            sys.stderr.write(f"state '{q}' rejected; nothing to verify\n")
            return 1
        witness = extract_scheme(h, m, sol, q)
    report = verify_runtree(witness, h, m, q, args.depth)
    _emit(args, format_report(report) + "\n")
    return 0 if report.passed else 1


def cmd_dump_game(args) -> int:
    h = _load_hors(args.scheme)
    m = _load_apt(args.automaton, h)
    states = [_pick_state(args, m)] if args.state else None
    g = build_game(h, m, states=states)
    _write_out(args, to_dot(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horsmc",
        description="Model-check a recursion scheme against an alternating "
                    "parity tree automaton; extract and verify run-tree "
                    "witness schemes.")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress stdout; rely on exit codes")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, scheme=True, automaton=True, state=False,
            depth=None, output=False):
        p = sub.add_parser(name, help=help_)
        if scheme:
            p.add_argument("scheme", help="scheme file")
        if automaton:
            p.add_argument("automaton", help="automaton file")
        if state:
            p.add_argument("-q", "--state", default=None,
                           help="state to test (default: the initial state)")
        if depth is not None:
            p.add_argument("-d", "--depth", type=int, default=depth,
                           help=f"unfolding depth (default {depth})")
        if output:
            p.add_argument("-o", "--output", default=None,
                           help="output file ('-' or omitted: stdout)")
        p.set_defaults(func=fn)
        return p

    add("check", cmd_check, "decide acceptance from one state", state=True)
    add("states", cmd_states, "list all accepted states")
    add("select", cmd_select, "write the witness scheme for a state",
        state=True, output=True)
    p_unfold = add("unfold", cmd_unfold, "print a finite value-tree prefix",
                   automaton=False, depth=5, output=True)
    p_unfold.add_argument("--dot", action="store_true",
                          help="emit the prefix as a DOT graph")
    p_verify = add("verify", cmd_verify,
                   "verify a witness run-tree at finite depth",
                   state=True, depth=10)
    p_verify.add_argument("--witness", default=None,
                          help="annotated scheme file (default: extract one)")
    p_dump = add("dump-game", cmd_dump_game, "emit the parity game",
                 state=True, output=True)
    p_dump.add_argument("--dot", action="store_true", default=True,
                        help="DOT output (the only format; default)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as e:
        sys.stderr.write(str(e) + "\n")
        return e.code
    except SizeGuardExceeded as e:
        sys.stderr.write(f"size guard: {e}\n")
        return 3
    except UnresolvedWithinBudget as e:
        sys.stderr.write(f"rewriting budget: {e}\n")
        return 3
    except IllFormedScheme as e:
        sys.stderr.write(f"ill-formed scheme: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
