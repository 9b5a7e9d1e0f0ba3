import functools
import random

import pytest

from horsmc import (ADAM, Apt, Arrow, Atom, EVE, GROUND, Hors, NonTerminal,
                    ParityGame, Rule, TRUE, Terminal, Var, apply, conj)


@pytest.fixture(scope="session")
def ex1():
    """The listening-loop scheme: S = L Nil; L x = if x (L (data x))."""
    return Hors(
        terminals={"if": 2, "data": 1, "Nil": 0},
        nonterminals={"S": GROUND, "L": Arrow(GROUND, GROUND)},
        rules={
            "S": Rule((), apply(NonTerminal("L"), Terminal("Nil"))),
            "L": Rule((("x", GROUND),),
                      apply(Terminal("if"), Var("x"),
                            apply(NonTerminal("L"),
                                  apply(Terminal("data"), Var("x"))))),
        },
        start="S",
    )


@pytest.fixture(scope="session")
def ex1_apt():
    """The branching automaton over if/data/Nil, all colors 0."""
    return Apt(
        states=("q0", "q1"),
        terminals={"if": 2, "data": 1, "Nil": 0},
        delta={
            ("q0", "if"): conj(Atom(2, "q0"), Atom(2, "q1")),
            ("q1", "if"): conj(Atom(1, "q1"), Atom(2, "q0")),
            ("q1", "data"): Atom(1, "q1"),
            ("q0", "Nil"): TRUE,
            ("q1", "Nil"): TRUE,
        },
        omega={"q0": 0, "q1": 0},
        initial="q0",
    )


@functools.cache
def loop_scheme():
    """S = F; F = a F."""
    return Hors(terminals={"a": 1},
                nonterminals={"S": GROUND, "F": GROUND},
                rules={"S": Rule((), NonTerminal("F")),
                       "F": Rule((), apply(Terminal("a"), NonTerminal("F")))},
                start="S")


@functools.cache
def loop_apt(color: int) -> Apt:
    return Apt(states=("q",), terminals={"a": 1},
               delta={("q", "a"): Atom(1, "q")},
               omega={"q": color}, initial="q")


@functools.cache
def const_scheme():
    """S = c with delta(q, c) = true."""
    h = Hors(terminals={"c": 0}, nonterminals={"S": GROUND},
             rules={"S": Rule((), Terminal("c"))}, start="S")
    m = Apt(states=("q",), terminals={"c": 0}, delta={("q", "c"): TRUE},
            omega={"q": 0}, initial="q")
    return h, m


@functools.cache
def order2_scheme():
    """S = A I; A f = if (f Nil) (A f); I x = data x  (order 2)."""
    oo = Arrow(GROUND, GROUND)
    return Hors(
        terminals={"if": 2, "data": 1, "Nil": 0},
        nonterminals={"S": GROUND, "A": Arrow(oo, GROUND), "I": oo},
        rules={
            "S": Rule((), apply(NonTerminal("A"), NonTerminal("I"))),
            "A": Rule((("f", oo),),
                      apply(Terminal("if"),
                            apply(Var("f"), Terminal("Nil")),
                            apply(NonTerminal("A"), Var("f")))),
            "I": Rule((("x", GROUND),),
                      apply(Terminal("data"), Var("x"))),
        },
        start="S",
    )


@functools.cache
def order2_unary():
    """S = A I; A f = b (f c) (A f); I x = d x, with a one-state automaton
    accepting everything: a feasible order-2 end-to-end fixture."""
    oo = Arrow(GROUND, GROUND)
    h = Hors(
        terminals={"b": 2, "c": 0, "d": 1},
        nonterminals={"S": GROUND, "A": Arrow(oo, GROUND), "I": oo},
        rules={
            "S": Rule((), apply(NonTerminal("A"), NonTerminal("I"))),
            "A": Rule((("f", oo),),
                      apply(Terminal("b"),
                            apply(Var("f"), Terminal("c")),
                            apply(NonTerminal("A"), Var("f")))),
            "I": Rule((("x", GROUND),),
                      apply(Terminal("d"), Var("x"))),
        },
        start="S",
    )
    m = Apt(states=("q",), terminals={"b": 2, "c": 0, "d": 1},
            delta={("q", "b"): conj(Atom(1, "q"), Atom(2, "q")),
                   ("q", "c"): TRUE,
                   ("q", "d"): Atom(1, "q")},
            omega={"q": 0}, initial="q")
    return h, m


@functools.cache
def mutual_scheme():
    """S = F; F = a G; G = b F."""
    return Hors(
        terminals={"a": 1, "b": 1},
        nonterminals={"S": GROUND, "F": GROUND, "G": GROUND},
        rules={"S": Rule((), NonTerminal("F")),
               "F": Rule((), apply(Terminal("a"), NonTerminal("G"))),
               "G": Rule((), apply(Terminal("b"), NonTerminal("F")))},
        start="S",
    )


def fixture_terms(max_size: int):
    """All applicative terms over {if, data, Nil, x} with at most `max_size`
    nodes, grouped by sort.  Applications take ground arguments only, which
    covers every well-sorted combination of this vocabulary."""
    from horsmc import App
    oo = Arrow(GROUND, GROUND)
    ooo = Arrow(GROUND, oo)
    by_sort_size: dict = {}

    def put(sort, size, term):
        by_sort_size.setdefault((sort, size), []).append(term)

    put(GROUND, 1, Var("x"))
    put(GROUND, 1, Terminal("Nil"))
    put(oo, 1, Terminal("data"))
    put(ooo, 1, Terminal("if"))
    for size in range(2, max_size + 1):
        for result in (GROUND, oo):
            fn_sort = Arrow(GROUND, result)
            for fn_size in range(1, size - 1):
                for fn in by_sort_size.get((fn_sort, fn_size), []):
                    for arg in by_sort_size.get((GROUND, size - 1 - fn_size),
                                                []):
                        put(result, size, App(fn, arg))
    out: dict = {}
    for (sort, _), terms in sorted(by_sort_size.items(),
                                   key=lambda kv: (repr(kv[0][0]), kv[0][1])):
        out.setdefault(sort, []).extend(terms)
    return out


_solutions: dict = {}


def solve_cached(h, m, q):
    """Build and solve the single-seed game once per (scheme, automaton,
    state) triple; fixtures are shared, so identity keys are stable."""
    from horsmc import build_game, zielonka
    key = (id(h), id(m), q)
    if key not in _solutions:
        g = build_game(h, m, states=[q])
        _solutions[key] = (g, zielonka(g))
    return _solutions[key]


def random_game(rng: random.Random, max_nodes: int = 8,
                max_priority: int = 5) -> ParityGame:
    n = rng.randint(1, max_nodes)
    nodes = tuple(range(n))
    owner = {v: (EVE if rng.random() < 0.5 else ADAM) for v in nodes}
    priority = {v: rng.randint(0, max_priority) for v in nodes}
    edges = {v: tuple(sorted(rng.sample(nodes, rng.randint(0, min(3, n)))))
             for v in nodes}
    return ParityGame(nodes, owner, priority, edges)
