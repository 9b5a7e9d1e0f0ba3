"""Witness extraction: an annotated scheme generating one accepting run-tree.

From a winning strategy of the prover, each reachable winning sequent
becomes a nonterminal of a new scheme over an annotated alphabet; its rule
is read off the derivation the strategy chose at that sequent.  An
annotated terminal carries the colored profile and state it was used at,
and takes one child per profile entry (so subtrees are duplicated or erased
exactly as the automaton's run does).  `verify_runtree` replays a finite
unfolding of the witness against the original value tree and the automaton.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .automata import Apt, Color, EPSILON, cmax, format_color, satisfies
from .game import AdamNode, EveNode, Solution
from .itypes import (ColoredSet, IType, StateType, format_itype,
                     split_chain, subtype, DEFAULT_ENUM_LIMIT)
from .syntax import (App, GROUND, Hors, NonTerminal, Rule, SimpleType, Term,
                     Terminal, TreePrefix, Var, apply, arrow,
                     check_wellformed, fresh_name, require_wellformed, unfold)
from .typecheck import (DAx, DApp, DDelta, Derivation, rule_typings)

# Per-direction colored profile over ground states.
Profile = tuple[tuple[tuple[Color, str], ...], ...]


@dataclass
class AnnotatedHors:
    """A scheme over the annotated alphabet, plus decoding tables.

    `terminal_info` maps an annotated symbol to (original symbol, profile,
    state); `nonterminal_info` maps an annotated nonterminal to (original
    nonterminal, intersection type).  Coercion helpers introduced while
    rebuilding rule bodies carry no entry.
    """

    hors: Hors
    terminal_info: dict[str, tuple[str, Profile, str]]
    nonterminal_info: dict[str, tuple[str, IType]]


@dataclass
class RunReport:
    depth: int
    projection_mismatches: list = field(default_factory=list)
    transition_violations: list = field(default_factory=list)
    branch_max_colors: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.projection_mismatches and not self.transition_violations


class LosingStart(Exception):
    pass


class ReconstructionError(Exception):
    """The chosen strategy has no matching derivation: an internal bug."""


def annotated_sort(t: IType) -> SimpleType:
    """Sort transform: one ground child per colored-set entry."""
    if isinstance(t, StateType):
        return GROUND
    parts = [annotated_sort(ty) for _, ty in t.argument.pairs]
    return arrow(*parts, annotated_sort(t.result))


def terminal_symbol(a: str, profile: Profile, q: str) -> str:
    entries = []
    for k, component in enumerate(profile, start=1):
        for c, q2 in component:
            entries.append(f"{k}:{format_color(c)}.{q2}")
    return f"{a}@{{{','.join(entries)}}}->{q}"


def nonterminal_symbol(name: str, ty: IType) -> str:
    return f"{name}@{format_itype(ty)}"


def _profile_of(chain_sets: list[ColoredSet]) -> Profile:
    prof = []
    for u in chain_sets:
        comp = []
        for c, ty in u.pairs:
            assert isinstance(ty, StateType), "annotated terminal needs ground sets"
            comp.append((c, ty.state))
        prof.append(tuple(comp))
    return tuple(prof)


class CoercionBuilder:
    """Adapters between annotated generators at comparable types.

    When an axiom consumed an entry strictly above its target, the rebuilt
    rule needs a generator of the smaller type.  The adapter is a helper
    nonterminal that eta-expands the larger generator, dropping or rewiring
    children; it recurses through nested arrows.
    """

    def __init__(self, taken_names: set[str]):
        self.taken = taken_names
        self.nonterminals: dict[str, SimpleType] = {}
        self.rules: dict[str, Rule] = {}
        self._memo: dict[tuple[IType, IType], str] = {}

    def coerce(self, term: Term, have: IType, want: IType) -> Term:
        if have == want:
            return term
        assert subtype(want, have), "coercion against the subtyping order"
        key = (want, have)
        if key not in self._memo:
            name = fresh_name(f"Coerce{len(self._memo) + 1}", self.taken)
            self._memo[key] = name
            self.nonterminals[name] = arrow(annotated_sort(have),
                                            annotated_sort(want))
            want_sets, _ = split_chain(want)
            have_sets, _ = split_chain(have)
            binders: list[tuple[str, SimpleType]] = [("g", annotated_sort(have))]
            by_pair: list[dict[tuple[Color, IType], str]] = []
            for i, vset in enumerate(want_sets):
                names: dict[tuple[Color, IType], str] = {}
                for j, (c, tv) in enumerate(vset.pairs):
                    b = f"y{i + 1}_{j}"
                    binders.append((b, annotated_sort(tv)))
                    names[(c, tv)] = b
                by_pair.append(names)
            args: list[Term] = []
            for i, uset in enumerate(have_sets):
                for c, tu in uset.pairs:
                    c2, tv = next((c2, tv2) for c2, tv2 in want_sets[i].pairs
                                  if c2 == c and subtype(tu, tv2))
                    args.append(self.coerce(Var(by_pair[i][(c2, tv)]), tv, tu))
            self.rules[name] = Rule(tuple(binders), apply(Var("g"), *args))
        return App(NonTerminal(self._memo[key]), term)


def extract_scheme(h: Hors, m: Apt, s: Solution, q: str,
                   limit: int = DEFAULT_ENUM_LIMIT) -> AnnotatedHors:
    """The witness scheme for an accepted state, following Eve's strategy.

    One nonterminal per strategy-reachable winning sequent; rule bodies are
    rebuilt from the derivations behind the chosen assumption maps.
    """
    require_wellformed(h)
    start_node = EveNode(h.start, StateType(q))
    if start_node not in s.win_eve:
        raise LosingStart(f"state '{q}' is not accepted from '{h.start}'")

    terminals: dict[str, int] = {}
    terminal_info: dict[str, tuple[str, Profile, str]] = {}
    nonterminals: dict[str, SimpleType] = {}
    nonterminal_info: dict[str, tuple[str, IType]] = {}
    rules: dict[str, Rule] = {}
    taken_names: set[str] = set()
    coercer = CoercionBuilder(taken_names)

    def register_terminal(a: str, target: IType) -> str:
        sets, result = split_chain(target)
        profile = _profile_of(sets)
        sym = terminal_symbol(a, profile, result.state)
        if sym not in terminals:
            terminals[sym] = sum(len(c) for c in profile)
            terminal_info[sym] = (a, profile, result.state)
        return sym

    def register_eve(node: EveNode) -> str:
        sym = nonterminal_symbol(node.nonterminal, node.ty)
        if sym in nonterminals:
            return sym
        nonterminals[sym] = annotated_sort(node.ty)
        nonterminal_info[sym] = (node.nonterminal, node.ty)
        taken_names.add(sym)
        pending.append(node)
        return sym

    pending: list[EveNode] = []
    register_eve(start_node)
    while pending:
        node = pending.pop(0)
        chosen = s.strategy_eve.get(node)
        if not isinstance(chosen, AdamNode):
            raise ReconstructionError(f"no strategy move at {node}")
        delta = chosen.assumption
        deriv = None
        for d, dv in rule_typings(h, m, node.nonterminal, node.ty, limit):
            if d == delta:
                deriv = dv
                break
        if deriv is None:
            raise ReconstructionError(
                f"strategy assumption map at {node} has no derivation")

        rule = h.rules[node.nonterminal]
        arg_sets, _ = split_chain(node.ty)
        binder_names: dict[tuple[str, Color, IType], str] = {}
        binders: list[tuple[str, SimpleType]] = []
        rule_taken = set(taken_names)
        for (x, _), u in zip(rule.binders, arg_sets):
            for j, (c, ty) in enumerate(u.pairs):
                b = fresh_name(f"{x}_{j}", rule_taken)
                binder_names[(x, c, ty)] = b
                binders.append((b, annotated_sort(ty)))

        def term_of(d: Derivation, c: Color) -> Term:
            if isinstance(d, DAx):
                name = d.term.name
                if isinstance(d.term, NonTerminal):
                    sub = register_eve(EveNode(name, d.target))
                    return NonTerminal(sub)
                key = (name, c, d.used)
                if key not in binder_names:
                    raise ReconstructionError(
                        f"axiom leaf for '{name}' at color "
                        f"{format_color(c)} not among the binders")
                got = Var(binder_names[key])
                return coercer.coerce(got, d.used, d.target)
            if isinstance(d, DDelta):
                return Terminal(register_terminal(d.term.symbol, d.target))
            if isinstance(d, DApp):
                fn = term_of(d.function, c)
                args = [term_of(arg, cmax(c, ci))
                        for (ci, _), arg in zip(d.chosen.pairs, d.arguments)]
                return apply(fn, *args)
            raise ReconstructionError(f"unexpected derivation node {d!r}")

        body = term_of(deriv, EPSILON)
        rule_key = nonterminal_symbol(node.nonterminal, node.ty)
        rules[rule_key] = Rule(tuple(binders), body)

    nonterminals.update(coercer.nonterminals)
    rules.update(coercer.rules)
    out = Hors(terminals=terminals, nonterminals=nonterminals, rules=rules,
               start=nonterminal_symbol(h.start, StateType(q)))
    diags = check_wellformed(out)
    if diags:
        raise ReconstructionError("extracted scheme ill-formed: "
                                  + "; ".join(diags))
    return AnnotatedHors(out, terminal_info, nonterminal_info)


# ---------------------------------------------------------------------------
# Verification of the generated run-tree

def verify_runtree(g: AnnotatedHors, h: Hors, m: Apt, q: str,
                   depth: int) -> RunReport:
    """Check a finite unfolding of the witness against the original tree.

    Projection: every annotated node must sit over the same symbol in the
    original value tree.  Transitions: every annotated node's profile must
    satisfy the automaton's formula at its state, and children must carry
    the states and colors the profile announces.  Parity itself is not
    decidable at finite depth; the maximal color per branch is reported.
    """
    report = RunReport(depth=depth)
    run = unfold(g.hors, depth)
    orig = unfold(h, depth)

    def walk(node: TreePrefix, original: TreePrefix, state: str,
             path: tuple[int, ...], max_color: int | None) -> None:
        if node.is_bottom:
            report.branch_max_colors.append((path, max_color))
            return
        info = g.terminal_info.get(node.label)
        if info is None:
            report.transition_violations.append(
                (path, f"unknown annotated symbol '{node.label}'"))
            return
        a, profile, annotated_state = info
        if a not in m.terminals:
            report.transition_violations.append(
                (path, f"symbol '{a}' not in the automaton's alphabet"))
            return
        announced = [q2 for comp in profile for _, q2 in comp]
        if annotated_state not in m.omega or \
                any(q2 not in m.omega for q2 in announced):
            report.transition_violations.append(
                (path, f"'{node.label}' mentions states unknown to the "
                       "automaton"))
            return
        if len(profile) < m.terminals[a]:
            # trailing erased directions are not spelled out in the symbol
            profile = profile + ((),) * (m.terminals[a] - len(profile))
        if annotated_state != state:
            report.transition_violations.append(
                (path, f"node carries state {annotated_state}, "
                       f"expected {state}"))
        if original.is_bottom:
            report.branch_max_colors.append((path, max_color))
            return
        if original.label != a:
            report.projection_mismatches.append(
                (path, original.label, a))
            return
        try:
            ok = satisfies(tuple(frozenset(comp) for comp in profile),
                           annotated_state, a, m)
        except ValueError:
            ok = False
        if not ok:
            report.transition_violations.append(
                (path, f"profile of '{node.label}' does not satisfy the "
                       f"transition at {annotated_state}"))
        here = m.omega[annotated_state]
        max_here = here if max_color is None else max(max_color, here)
        if not profile:
            report.branch_max_colors.append((path, max_here))
            return
        pos = 0
        for k, component in enumerate(profile, start=1):
            for c, q2 in component:
                child = node.children[pos]
                if c != m.omega[q2]:
                    report.transition_violations.append(
                        (path + (pos + 1,),
                         f"profile color {format_color(c)} differs from the "
                         f"color of {q2}"))
                walk(child, original.children[k - 1], q2,
                     path + (pos + 1,), max_here)
                pos += 1
        if pos == 0:
            report.branch_max_colors.append((path, max_here))

    walk(run, orig, q, (), None)
    return report


def format_report(r: RunReport) -> str:
    lines = [f"depth checked: {r.depth}",
             f"projection mismatches: {len(r.projection_mismatches)}",
             f"transition violations: {len(r.transition_violations)}"]
    for path, expected, got in r.projection_mismatches:
        lines.append(f"  projection at {list(path)}: expected '{expected}', "
                     f"generated '{got}'")
    for path, msg in r.transition_violations:
        lines.append(f"  transition at {list(path)}: {msg}")
    colors = sorted({c for _, c in r.branch_max_colors if c is not None})
    lines.append(f"max colors seen on branches: {colors}")
    lines.append("verdict: " + ("consistent" if r.passed else "VIOLATIONS"))
    return "\n".join(lines)
