"""Decision procedure for the colored intersection type system.

`derive` runs a syntax-directed backward search over abstraction-free terms
(or a top-level abstraction spine) and returns a locally correct derivation
tree when the sequent is provable.  Instead of existentially splitting
contexts at applications, the search propagates the color-residual of a
fixed environment; weakening admissibility (denotations are downward
closed) makes this equivalent, and the equivalence is tested against a
literal context-splitting implementation kept in the test suite.

`denotation` computes the full finite typing relation bottom-up, serving as
the brute-force counterpart that the backward search is checked against.

`rule_typings` enumerates, for a nonterminal typed against a rule body, the
minimal assumption maps on nonterminals under which the body is derivable,
together with witnessing derivations.  The parity-game construction takes
its moves from it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .automata import Apt, Color, EPSILON, cmax, color_key, color_set
from .itypes import (ArrowType, ColoredSet, IType, SizeGuardExceeded,
                     colored_set, cset_key, enumerate_colored_sets,
                     enumerate_types, is_terminal_type, split_chain,
                     subtype, type_key, DEFAULT_ENUM_LIMIT)
from .syntax import (App, Fix, Hors, Lam, NonTerminal, SimpleType,
                     Term, Terminal, Var, free_vars, ground_sort, infer_sort,
                     nonterminals_of)

TypeEnv = dict[str, ColoredSet]

# Canonical, hashable view of an environment.
EnvKey = tuple[tuple[str, ColoredSet], ...]


def env_key(env: TypeEnv, names=None) -> EnvKey:
    if names is None:
        names = env.keys()
    return tuple((x, env[x]) for x in sorted(names))


def residual_set(u: ColoredSet, c: Color, cols) -> ColoredSet:
    """Pairs that survive peeling a box of color c off the context:
    (c', t) such that (max(c, c'), t) is present."""
    if isinstance(c, type(EPSILON)) or color_key(c) < 0:
        return u
    out = []
    for d, t in u:
        for c2 in cols:
            if cmax(c, c2) == d:
                out.append((c2, t))
    return colored_set(out)


def residual_env(env: TypeEnv, c: Color, cols) -> TypeEnv:
    return {x: residual_set(u, c, cols) for x, u in env.items()}


# ---------------------------------------------------------------------------
# Derivations

@dataclass(frozen=True)
class DAx:
    env: EnvKey
    term: Term
    target: IType
    used: IType  # the neutral-colored entry the axiom consumed


@dataclass(frozen=True)
class DDelta:
    env: EnvKey
    term: Term
    target: IType


@dataclass(frozen=True)
class DApp:
    env: EnvKey
    term: Term
    target: IType
    chosen: ColoredSet
    function: "Derivation"
    arguments: tuple["Derivation", ...]  # aligned with chosen.pairs


@dataclass(frozen=True)
class DLam:
    env: EnvKey
    term: Term
    target: IType
    body: "Derivation"


Derivation = DAx | DDelta | DApp | DLam


def check_derivation(d: Derivation, m: Apt) -> bool:
    """Independent local-correctness check of every rule instance."""
    cols = color_set(m)

    def check(node: Derivation) -> bool:
        env = dict(node.env)
        if isinstance(node, DAx):
            name = (node.term.name if isinstance(node.term, (Var, NonTerminal))
                    else None)
            if name is None or name not in env:
                return False
            return ((EPSILON, node.used) in env[name]
                    and subtype(node.target, node.used))
        if isinstance(node, DDelta):
            if not isinstance(node.term, Terminal):
                return False
            return is_terminal_type(node.term.symbol, node.target, m)
        if isinstance(node, DApp):
            if not isinstance(node.term, App):
                return False
            fn = node.function
            if fn.term != node.term.function or fn.env != node.env:
                return False
            if fn.target != ArrowType(node.chosen, node.target):
                return False
            if len(node.arguments) != len(node.chosen.pairs):
                return False
            for (c, beta), arg in zip(node.chosen.pairs, node.arguments):
                if arg.term != node.term.argument or arg.target != beta:
                    return False
                if dict(arg.env) != residual_env(env, c, cols):
                    return False
                if not check(arg):
                    return False
            return check(fn)
        if isinstance(node, DLam):
            if not isinstance(node.term, Lam):
                return False
            if not isinstance(node.target, ArrowType):
                return False
            body_env = dict(node.body.env)
            expected = dict(env)
            expected[node.term.binder] = node.target.argument
            if body_env != expected:
                return False
            if node.body.target != node.target.result:
                return False
            return check(node.body)
        return False

    return check(d)


# ---------------------------------------------------------------------------
# Backward search

class Deriver:
    """Reusable backward-search context (shared memo tables)."""

    def __init__(self, m: Apt, sort_env: dict[str, SimpleType],
                 limit: int = DEFAULT_ENUM_LIMIT):
        self.m = m
        self.sort_env = dict(sort_env)
        self.limit = limit
        self.cols = color_set(m)
        self._memo: dict = {}
        self._sorts: dict = {}

    def sort_of(self, t: Term) -> SimpleType:
        s = self._sorts.get(t)
        if s is None:
            s = infer_sort(t, self.sort_env, self.sort_env, self.m.terminals)
            self._sorts[t] = s
        return s

    def derive(self, env: TypeEnv, t: Term, target: IType) -> Derivation | None:
        if isinstance(t, Lam):
            if not isinstance(target, ArrowType):
                return None
            inner_env = dict(env)
            inner_env[t.binder] = target.argument
            sub = Deriver(self.m, {**self.sort_env, t.binder: t.binder_sort},
                          self.limit)
            body = sub.derive(inner_env, t.body, target.result)
            if body is None:
                return None
            return DLam(env_key(env), t, target, body)
        if isinstance(t, Fix):
            raise ValueError("fixpoints are handled by the game, not derive")
        return self._derive(env, t, target)

    def _derive(self, env: TypeEnv, t: Term, target: IType) -> Derivation | None:
        needed = sorted(free_vars(t) | nonterminals_of(t))
        for x in needed:
            if x not in env:
                raise KeyError(f"free name '{x}' not covered by the environment")
        key = (t, env_key(env, needed), target)
        if key in self._memo:
            return self._memo[key]
        result = self._derive_uncached(env, t, target)
        self._memo[key] = result
        return result

    def _derive_uncached(self, env: TypeEnv, t: Term,
                         target: IType) -> Derivation | None:
        if isinstance(t, (Var, NonTerminal)):
            u = env[t.name]
            for c, alpha in u.pairs:
                if isinstance(c, type(EPSILON)) and subtype(target, alpha):
                    return DAx(env_key(env), t, target, alpha)
            return None
        if isinstance(t, Terminal):
            if is_terminal_type(t.symbol, target, self.m):
                return DDelta(env_key(env), t, target)
            return None
        assert isinstance(t, App)
        sigma = self.sort_of(t.argument)
        pairs: list[tuple[Color, IType, Derivation]] = []
        for c in self.cols:
            env_c = residual_env(env, c, self.cols)
            for beta in enumerate_types(sigma, self.m, self.limit):
                sub = self._derive(env_c, t.argument, beta)
                if sub is not None:
                    pairs.append((c, beta, sub))
        chosen = colored_set((c, beta) for c, beta, _ in pairs)
        by_pair = {(c, beta): d for c, beta, d in pairs}
        fn = self._derive(env, t.function, ArrowType(chosen, target))
        if fn is None:
            return None
        args = tuple(by_pair[p] for p in chosen.pairs)
        return DApp(env_key(env), t, target, chosen, fn, args)


def derive(env: TypeEnv, t: Term, target: IType, m: Apt,
           sort_env: dict[str, SimpleType],
           limit: int = DEFAULT_ENUM_LIMIT) -> Derivation | None:
    """Backward proof search; None when the sequent is not provable."""
    return Deriver(m, sort_env, limit).derive(env, t, target)


# ---------------------------------------------------------------------------
# Bottom-up denotation (brute-force counterpart of `derive`)

def denotation(t: Term, sorts: dict[str, SimpleType], m: Apt,
               limit: int = DEFAULT_ENUM_LIMIT,
               spaces: dict[str, list[ColoredSet]] | None = None
               ) -> set[tuple[tuple[ColoredSet, ...], IType]]:
    """The full finite relation between environments and result types.

    The environment tuples follow the iteration order of `sorts`.  Fixpoint
    constructors are not admitted here.  When a variable's colored-set space
    is too large to enumerate, `spaces` may restrict it to a candidate list;
    the relation is then computed over that subspace (internally closed
    under color residuals, which the application rule consumes).
    """
    names = list(sorts)
    cols = color_set(m)
    spaces = spaces or {}

    def var_space(x: str, sort: SimpleType) -> list[ColoredSet]:
        base = spaces.get(x)
        if base is None:
            return enumerate_colored_sets(sort, m, limit)
        closed = list(dict.fromkeys(
            list(base) + [residual_set(u, c, cols) for u in base
                          for c in cols]))
        return closed

    def compute(term: Term, scope: dict[str, SimpleType]):
        """Returns (support names tuple, set of (support env tuple, type))."""
        if isinstance(term, Fix):
            raise ValueError("fixpoints are not admitted in denotation")
        if isinstance(term, (Var, NonTerminal)):
            x = term.name
            if x not in scope:
                raise KeyError(f"free name '{x}' has no declared sort")
            entries = set()
            for u in var_space(x, scope[x]):
                for alpha in enumerate_types(scope[x], m, limit):
                    if any(isinstance(c, type(EPSILON)) and subtype(alpha, a2)
                           for c, a2 in u):
                        entries.add(((u,), alpha))
            return (x,), entries
        if isinstance(term, Terminal):
            chain = ground_sort(m.terminals[term.symbol])
            entries = {((), theta)
                       for theta in enumerate_types(chain, m, limit)
                       if is_terminal_type(term.symbol, theta, m)}
            return (), entries
        if isinstance(term, Lam):
            inner_scope = dict(scope)
            inner_scope[term.binder] = term.binder_sort
            sup_m, d_m = compute(term.body, inner_scope)
            sup = tuple(x for x in sup_m if x != term.binder)
            entries = set()
            if term.binder in sup_m:
                i = sup_m.index(term.binder)
                for envt, r in d_m:
                    rest = envt[:i] + envt[i + 1:]
                    entries.add((rest, ArrowType(envt[i], r)))
            else:
                for u in enumerate_colored_sets(term.binder_sort, m, limit):
                    for envt, r in d_m:
                        entries.add((envt, ArrowType(u, r)))
            return sup, entries
        assert isinstance(term, App)
        sup_f, d_f = compute(term.function, scope)
        sup_a, d_a = compute(term.argument, scope)
        sup = tuple(sorted(set(sup_f) | set(sup_a)))
        # Index the function relation by (env, result) -> argument sets.
        by_result: dict = {}
        for envt, theta in d_f:
            if isinstance(theta, ArrowType):
                by_result.setdefault((envt, theta.result), []).append(theta.argument)
        env_spaces = [var_space(x, scope_of(x, scope)) for x in sup]
        result_sort_ = result_sort_of(term, scope)
        targets = enumerate_types(result_sort_, m, limit)
        entries = set()
        for envt in itertools.product(*env_spaces):
            env = dict(zip(sup, envt))
            env_f = tuple(env[x] for x in sup_f)
            env_a = {x: env[x] for x in sup_a}
            residuals = {c: tuple(residual_set(env_a[x], c, cols) for x in sup_a)
                         for c in cols}
            for alpha in targets:
                for u in by_result.get((env_f, alpha), ()):
                    if all((residuals[c], beta) in d_a for c, beta in u.pairs):
                        entries.add((envt, alpha))
                        break
        return sup, entries

    def scope_of(x: str, scope: dict[str, SimpleType]) -> SimpleType:
        return scope[x]

    def result_sort_of(term: Term, scope: dict[str, SimpleType]) -> SimpleType:
        return infer_sort(term, scope, scope, m.terminals)

    support, dset = compute(t, dict(sorts))
    final_spaces = [spaces.get(x) or enumerate_colored_sets(sorts[x], m, limit)
                    for x in names]
    out = set()
    index = [names.index(x) for x in support]
    by_key: dict = {}
    for sup_env, alpha in dset:
        by_key.setdefault(sup_env, []).append(alpha)
    for envt in itertools.product(*final_spaces):
        key = tuple(envt[i] for i in index)
        for alpha in by_key.get(key, ()):
            out.add((envt, alpha))
    return out


# ---------------------------------------------------------------------------
# Minimal assumption maps for rule bodies (Eve's move generator)

# A requirement is one nonterminal assumption: (name, color, type).
Requirement = tuple[str, Color, IType]
AssumptionMap = tuple[tuple[str, ColoredSet], ...]


def requirement_key(r: Requirement):
    return (r[0], color_key(r[1]), type_key(r[2]))


def assumptions_from(reqs: frozenset[Requirement]) -> AssumptionMap:
    grouped: dict[str, list] = {}
    for name, c, ty in reqs:
        grouped.setdefault(name, []).append((c, ty))
    return tuple((name, colored_set(grouped[name])) for name in sorted(grouped))


class _FootprintSearch:
    """Enumerates minimal nonterminal-assumption sets for one sequent."""

    def __init__(self, m: Apt, sort_env: dict[str, SimpleType],
                 var_env: TypeEnv, limit: int, pair_cap: int = 12):
        self.m = m
        self.sort_env = sort_env
        self.var_env = var_env
        self.limit = limit
        self.pair_cap = pair_cap
        self.cols = color_set(m)
        self._memo: dict = {}
        self._sorts: dict = {}

    def sort_of(self, t: Term) -> SimpleType:
        s = self._sorts.get(t)
        if s is None:
            s = infer_sort(t, self.sort_env, self.sort_env, self.m.terminals)
            self._sorts[t] = s
        return s

    def search(self, t: Term, target: IType, c: Color):
        """List of (requirements frozenset, derivation skeleton), minimal
        under requirement-set inclusion, deterministically ordered."""
        key = (t, target, c)
        if key in self._memo:
            return self._memo[key]
        self._memo[key] = out = self._search(t, target, c)
        return out

    def _argument_options(self, arg: Term, c: Color):
        """Candidate (color, type, derivations) triples for an application
        argument.

        A bare variable is looked up directly: only the environment entries
        themselves are offered.  A pair below an entry never helps, since
        every axiom the smaller type serves is served by the entry too, and
        the entry only enlarges the sequent the refuter may challenge.
        """
        if isinstance(arg, Var):
            u = self.var_env[arg.name]
            options = []
            for c2 in self.cols:
                want = cmax(c, c2)
                for centry, alpha in u.pairs:
                    if centry == want:
                        options.append(
                            (c2, alpha, [(frozenset(),
                                          _SkelAx(arg, alpha, alpha))]))
            return options
        sigma = self.sort_of(arg)
        options = []
        for c2 in self.cols:
            for beta in enumerate_types(sigma, self.m, self.limit):
                sub = self.search(arg, beta, cmax(c, c2))
                if sub:
                    options.append((c2, beta, sub))
        return options

    def _search(self, t: Term, target: IType, c: Color):
        if isinstance(t, Var):
            u = self.var_env[t.name]
            for c2, alpha in u.pairs:
                if c2 == c and subtype(target, alpha):
                    return [(frozenset(), _SkelAx(t, target, alpha))]
            return []
        if isinstance(t, NonTerminal):
            req = (t.name, c, target)
            return [(frozenset({req}), _SkelAx(t, target, target))]
        if isinstance(t, Terminal):
            if is_terminal_type(t.symbol, target, self.m):
                return [(frozenset(), _SkelDelta(t, target))]
            return []
        assert isinstance(t, App), f"unexpected term in rule body: {t!r}"
        options = self._argument_options(t.argument, c)
        if len(options) > self.pair_cap:
            raise SizeGuardExceeded(
                "candidate argument typings at an application",
                2 ** len(options), 2 ** self.pair_cap)
        results = []
        for k in range(len(options) + 1):
            for subset in itertools.combinations(options, k):
                chosen = colored_set((c2, beta) for c2, beta, _ in subset)
                fn_opts = self.search(t.function, ArrowType(chosen, target), c)
                if not fn_opts:
                    continue
                by_pair = {(c2, beta): sub for c2, beta, sub in subset}
                arg_option_lists = [by_pair[p] for p in chosen.pairs]
                for fn_req, fn_skel in fn_opts:
                    for picks in itertools.product(*arg_option_lists):
                        req = fn_req.union(*(r for r, _ in picks)) if picks else fn_req
                        skel = _SkelApp(t, target, chosen, fn_skel,
                                        tuple(s for _, s in picks))
                        results.append((req, skel))
        return _minimal(results)


def _minimal(results):
    """Keep one representative per inclusion-minimal requirement set."""
    first: dict = {}
    for req, skel in results:
        if req not in first:
            first[req] = skel
    decorated = sorted(
        ((len(req), tuple(sorted(map(requirement_key, req))), req)
         for req in first),
        key=lambda d: d[:2])
    kept = []
    for _, _, req in decorated:
        if not any(k <= req for k, _ in kept):
            kept.append((req, first[req]))
    return kept


@dataclass(frozen=True)
class _SkelAx:
    term: Term
    target: IType
    used: IType


@dataclass(frozen=True)
class _SkelDelta:
    term: Term
    target: IType


@dataclass(frozen=True)
class _SkelApp:
    term: Term
    target: IType
    chosen: ColoredSet
    function: object
    arguments: tuple


def _attach_envs(skel, env: TypeEnv, c: Color, cols) -> Derivation:
    here = env_key(residual_env(env, c, cols))
    if isinstance(skel, _SkelAx):
        return DAx(here, skel.term, skel.target, skel.used)
    if isinstance(skel, _SkelDelta):
        return DDelta(here, skel.term, skel.target)
    args = tuple(_attach_envs(a, env, cmax(c, ci), cols)
                 for (ci, _), a in zip(skel.chosen.pairs, skel.arguments))
    fn = _attach_envs(skel.function, env, c, cols)
    return DApp(here, skel.term, skel.target, skel.chosen, fn, args)


def rule_typings(h: Hors, m: Apt, name: str, theta: IType,
                 limit: int = DEFAULT_ENUM_LIMIT
                 ) -> list[tuple[AssumptionMap, Derivation]]:
    """Minimal nonterminal assumption maps under which the rule body of
    `name` derives the result state of `theta`, with derivations.

    `theta`'s argument sets type the rule binders positionally.  Results
    are cached on the scheme (idempotent inserts; safe to share read-mostly).
    """
    cache = getattr(h, "_typings_cache", None)
    if cache is None:
        cache = {}
        setattr(h, "_typings_cache", cache)
    key = (id(m), name, theta, limit)
    hit = cache.get(key)
    if hit is not None and hit[0] is m:
        return hit[1]
    out = _rule_typings_uncached(h, m, name, theta, limit)
    cache[key] = (m, out)
    return out


def _rule_typings_uncached(h: Hors, m: Apt, name: str, theta: IType,
                           limit: int
                           ) -> list[tuple[AssumptionMap, Derivation]]:
    rule = h.rules[name]
    arg_sets, result = split_chain(theta)
    if len(arg_sets) != len(rule.binders):
        raise ValueError(f"type {theta!r} does not match the arity of '{name}'")
    var_env: TypeEnv = {b: u for (b, _), u in zip(rule.binders, arg_sets)}
    sort_env: dict[str, SimpleType] = dict(h.nonterminals)
    sort_env.update({b: s for b, s in rule.binders})
    search = _FootprintSearch(m, sort_env, var_env, limit)
    found = search.search(rule.body, result, EPSILON)
    out = []
    for req, skel in found:
        delta = assumptions_from(req)
        full_env: TypeEnv = dict(var_env)
        full_env.update({n: u for n, u in delta})
        for nt in h.nonterminals:
            full_env.setdefault(nt, colored_set(()))
        deriv = _attach_envs(skel, full_env, EPSILON, color_set(m))
        out.append((delta, deriv))
    out.sort(key=lambda du: tuple((n, cset_key(u)) for n, u in du[0]))
    return out
