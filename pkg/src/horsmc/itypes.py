"""Colored intersection types: the finite interpretation of simple types.

Ground types are automaton states; an arrow type consumes a finite set of
(color, type) pairs.  Everything is kept in a canonical sorted form so that
enumeration order, hashing and printed output are deterministic.
"""

from __future__ import annotations

import functools

from .automata import (Apt, Color, cmax, color_key, color_set,
                       format_color, satisfies)
from .syntax import Ground, SimpleType


# ---------------------------------------------------------------------------
# Types and colored sets.  Instances are interned: equal values are the
# same object, so comparisons and hashing are cheap even for deep types.

class StateType:
    """Ground intersection type: one automaton state."""

    __slots__ = ("state",)
    _cache: dict = {}

    def __new__(cls, state: str):
        t = cls._cache.get(state)
        if t is None:
            t = object.__new__(cls)
            t.state = state
            cls._cache[state] = t
        return t

    def __repr__(self):
        return f"StateType({self.state!r})"

    def __reduce__(self):
        return (StateType, (self.state,))


class ArrowType:
    __slots__ = ("argument", "result")
    _cache: dict = {}

    def __new__(cls, argument: "ColoredSet", result: "IType"):
        key = (id(argument), id(result))
        t = cls._cache.get(key)
        if t is None:
            t = object.__new__(cls)
            t.argument = argument
            t.result = result
            cls._cache[key] = t
        return t

    def __repr__(self):
        return f"ArrowType({self.argument!r}, {self.result!r})"

    def __reduce__(self):
        return (ArrowType, (self.argument, self.result))


IType = StateType | ArrowType


class ColoredSet:
    """Canonical finite set of (color, type) pairs of one common sort."""

    __slots__ = ("pairs",)
    _cache: dict = {}

    def __new__(cls, pairs: tuple):
        key = tuple((color_key(c), id(t)) for c, t in pairs)
        u = cls._cache.get(key)
        if u is None:
            u = object.__new__(cls)
            u.pairs = pairs
            cls._cache[key] = u
        return u

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return pair in self.pairs

    def __repr__(self):
        return f"ColoredSet({self.pairs!r})"

    def __reduce__(self):
        return (ColoredSet, (self.pairs,))


@functools.lru_cache(maxsize=None)
def type_key(t: IType):
    if isinstance(t, StateType):
        return (0, t.state)
    return (1, cset_key(t.argument), type_key(t.result))


def pair_key(pair: tuple[Color, IType]):
    return (color_key(pair[0]), type_key(pair[1]))


@functools.lru_cache(maxsize=None)
def cset_key(u: ColoredSet):
    return tuple(pair_key(p) for p in u.pairs)


def colored_set(pairs) -> ColoredSet:
    """Canonicalize: sort by (color, structure) and drop duplicates."""
    uniq = sorted(set(pairs), key=pair_key)
    return ColoredSet(tuple(uniq))


EMPTY_SET = ColoredSet(())


def arrow_chain(arg_sets: list[ColoredSet], result: IType) -> IType:
    t = result
    for u in reversed(arg_sets):
        t = ArrowType(u, t)
    return t


def split_chain(t: IType) -> tuple[list[ColoredSet], StateType]:
    """Unroll an arrow chain down to its ground result."""
    sets = []
    while isinstance(t, ArrowType):
        sets.append(t.argument)
        t = t.result
    assert isinstance(t, StateType)
    return sets, t


def format_itype(t: IType) -> str:
    if isinstance(t, StateType):
        return t.state
    return f"{format_cset(t.argument)}->{format_itype(t.result)}"


def format_cset(u: ColoredSet) -> str:
    inner = ",".join(f"{format_color(c)}.{format_itype(t)}" for c, t in u.pairs)
    return "{" + inner + "}"


# ---------------------------------------------------------------------------
# Enumeration with a size guard

class SizeGuardExceeded(Exception):
    def __init__(self, what: str, count: int, limit: int):
        super().__init__(f"{what}: {count} candidates exceed the limit {limit}")
        self.count = count
        self.limit = limit


DEFAULT_ENUM_LIMIT = 2 ** 20


def count_types(sigma: SimpleType, m: Apt) -> int:
    """Cardinality of the type space at a sort, without materializing it."""
    if isinstance(sigma, Ground):
        return len(m.states)
    ncol = len(color_set(m))
    return 2 ** (ncol * count_types(sigma.domain, m)) * count_types(sigma.codomain, m)


def enumerate_types(sigma: SimpleType, m: Apt,
                    limit: int = DEFAULT_ENUM_LIMIT) -> list[IType]:
    """All canonical types of a sort, in a deterministic order.

    Refuses (with the computed cardinality) when the space is larger than
    `limit`.
    """
    key = ("types", sigma, limit)
    cached = m._enum_cache.get(key)
    if cached is not None:
        return cached
    n = count_types(sigma, m)
    if n > limit:
        raise SizeGuardExceeded(f"type space at sort {sigma!r}", n, limit)
    if isinstance(sigma, Ground):
        result = [StateType(q) for q in sorted(m.states)]
    else:
        args = enumerate_colored_sets(sigma.domain, m, limit)
        results = enumerate_types(sigma.codomain, m, limit)
        result = [ArrowType(u, r) for u in args for r in results]
    m._enum_cache[key] = result
    return result


def enumerate_colored_sets(sigma: SimpleType, m: Apt,
                           limit: int = DEFAULT_ENUM_LIMIT) -> list[ColoredSet]:
    """All colored sets over the type space at a sort, deterministically."""
    key = ("csets", sigma, limit)
    cached = m._enum_cache.get(key)
    if cached is not None:
        return cached
    base = enumerate_types(sigma, m, limit)
    cols = color_set(m)
    pairs = sorted(((c, t) for c in cols for t in base), key=pair_key)
    if 2 ** len(pairs) > limit:
        raise SizeGuardExceeded(f"colored sets at sort {sigma!r}",
                                2 ** len(pairs), limit)
    out = []
    for mask in range(2 ** len(pairs)):
        chosen = [p for i, p in enumerate(pairs) if mask >> i & 1]
        out.append(colored_set(chosen))
    m._enum_cache[key] = out
    return out


# ---------------------------------------------------------------------------
# Subtyping (covariant results, contravariant colored argument sets)

def subtype(a: IType, b: IType) -> bool:
    """a <= b in the preorder: states by equality, arrows contravariantly
    in the argument set and covariantly in the result."""
    if isinstance(a, StateType) and isinstance(b, StateType):
        return a.state == b.state
    if isinstance(a, ArrowType) and isinstance(b, ArrowType):
        return subtype_set(b.argument, a.argument) and subtype(a.result, b.result)
    raise ValueError(f"sort mismatch: {format_itype(a)} vs {format_itype(b)}")


def subtype_set(u: ColoredSet, v: ColoredSet) -> bool:
    """Every (c, a) of u is dominated by some (c, b) of v with the same color."""
    return all(any(c2 == c and subtype(a, b) for c2, b in v) for c, a in u)


def box_color(c: Color, u: ColoredSet) -> ColoredSet:
    """Raise every pair's color to at least c (the context coloring)."""
    return colored_set((cmax(c, ci), t) for ci, t in u)


# ---------------------------------------------------------------------------
# Terminal types

def is_terminal_type(a: str, t: IType, m: Apt) -> bool:
    """Membership of an arrow chain in the denotation of a terminal.

    The chain's argument sets, restricted to ground entries, must form a
    profile satisfying the transition formula at the chain's result state.
    Non-ground entries make the membership false.
    """
    arity = m.terminals[a]
    sets, result = _chain_or_raise(a, t, arity)
    profile = []
    for u in sets:
        entries = set()
        for c, ty in u:
            if not isinstance(ty, StateType):
                return False
            entries.add((c, ty.state))
        profile.append(frozenset(entries))
    return satisfies(tuple(profile), result.state, a, m)


def _chain_or_raise(a: str, t: IType, arity: int):
    sets = []
    for _ in range(arity):
        if not isinstance(t, ArrowType):
            raise ValueError(f"type too short for terminal '{a}' of arity {arity}")
        sets.append(t.argument)
        t = t.result
    if not isinstance(t, StateType):
        raise ValueError(f"type too long for terminal '{a}' of arity {arity}")
    return sets, t
