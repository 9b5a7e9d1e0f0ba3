"""Alternating parity tree automata over ranked alphabets.

Transitions are positive boolean formulas over (direction, state) atoms;
states carry a priority (color).  Alongside the automaton structure this
module provides disjunctive normal forms, the satisfaction relation between
colored profiles and transition formulas, and a finite-prefix run search
used as a per-depth acceptance oracle.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .syntax import TreePrefix


# ---------------------------------------------------------------------------
# Colors

class _Epsilon:
    """The neutral color: minimal for max, distinct from every natural."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "e"

    def __reduce__(self):
        return (_Epsilon, ())


EPSILON = _Epsilon()

Color = int | _Epsilon


def color_key(c: Color) -> int:
    """Total order on colors: the neutral color below every natural."""
    return -1 if isinstance(c, _Epsilon) else c


def cmax(a: Color, b: Color) -> Color:
    return a if color_key(a) >= color_key(b) else b


def format_color(c: Color) -> str:
    return "e" if isinstance(c, _Epsilon) else str(c)


# ---------------------------------------------------------------------------
# Transition formulas

@dataclass(frozen=True)
class FTrue:
    def __repr__(self):
        return "true"


@dataclass(frozen=True)
class FFalse:
    def __repr__(self):
        return "false"


@dataclass(frozen=True)
class Atom:
    direction: int
    state: str

    def __repr__(self):
        return f"({self.direction},{self.state})"


@dataclass(frozen=True)
class FAnd:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class FOr:
    left: "Formula"
    right: "Formula"


Formula = FTrue | FFalse | Atom | FAnd | FOr

TRUE = FTrue()
FALSE = FFalse()


def conj(*fs: Formula) -> Formula:
    if not fs:
        return TRUE
    out = fs[0]
    for f in fs[1:]:
        out = FAnd(out, f)
    return out


def disj(*fs: Formula) -> Formula:
    if not fs:
        return FALSE
    out = fs[0]
    for f in fs[1:]:
        out = FOr(out, f)
    return out


def format_formula(f: Formula, _level: int = 0) -> str:
    if isinstance(f, FTrue):
        return "true"
    if isinstance(f, FFalse):
        return "false"
    if isinstance(f, Atom):
        return f"({f.direction},{f.state})"
    if isinstance(f, FAnd):
        s = f"{format_formula(f.left, 1)} /\\ {format_formula(f.right, 1)}"
        return f"({s})" if _level > 1 else s
    s = f"{format_formula(f.left, 0)} \\/ {format_formula(f.right, 0)}"
    return f"({s})" if _level > 0 else s


def atoms_of(f: Formula) -> frozenset[tuple[int, str]]:
    if isinstance(f, Atom):
        return frozenset({(f.direction, f.state)})
    if isinstance(f, (FAnd, FOr)):
        return atoms_of(f.left) | atoms_of(f.right)
    return frozenset()


def eval_formula(f: Formula, truth: frozenset[tuple[int, str]]) -> bool:
    """Evaluate under a set of atoms taken to be true."""
    if isinstance(f, FTrue):
        return True
    if isinstance(f, FFalse):
        return False
    if isinstance(f, Atom):
        return (f.direction, f.state) in truth
    if isinstance(f, FAnd):
        return eval_formula(f.left, truth) and eval_formula(f.right, truth)
    return eval_formula(f.left, truth) or eval_formula(f.right, truth)


Clause = frozenset[tuple[int, str]]


def _reduce_antichain(clauses: set[Clause]) -> frozenset[Clause]:
    """Drop clauses that contain another clause: supersets are subsumed in
    an existential acceptance check."""
    keep = []
    for c in sorted(clauses, key=len):
        if not any(k <= c for k in keep):
            keep.append(c)
    return frozenset(keep)


@functools.lru_cache(maxsize=None)
def dnf(f: Formula) -> frozenset[Clause]:
    """Clauses of the disjunctive normal form, antichain-reduced.

    true yields the singleton empty clause, false yields no clause at all.
    """
    if isinstance(f, FTrue):
        return frozenset({frozenset()})
    if isinstance(f, FFalse):
        return frozenset()
    if isinstance(f, Atom):
        return frozenset({frozenset({(f.direction, f.state)})})
    if isinstance(f, FOr):
        return _reduce_antichain(set(dnf(f.left)) | set(dnf(f.right)))
    left, right = dnf(f.left), dnf(f.right)
    return _reduce_antichain({a | b for a in left for b in right})


def sorted_clause(c: Clause) -> list[tuple[int, str]]:
    return sorted(c)


def sorted_dnf(f: Formula) -> list[list[tuple[int, str]]]:
    """Deterministically ordered clause list (for output and iteration)."""
    return sorted((sorted_clause(c) for c in dnf(f)), key=lambda c: (len(c), c))


# ---------------------------------------------------------------------------
# The automaton

@dataclass
class Apt:
    """Alternating parity tree automaton over the scheme's ranked alphabet.

    `delta` may be sparse: missing entries are read as false.  Treated as
    immutable after construction.
    """

    states: tuple[str, ...]
    terminals: dict[str, int]
    delta: dict[tuple[str, str], Formula]
    omega: dict[str, int]
    initial: str
    _enum_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def delta_of(self, q: str, a: str) -> Formula:
        return self.delta.get((q, a), FALSE)

    def priority(self, q: str) -> int:
        return self.omega[q]

    def validate(self) -> None:
        if not self.states:
            raise ValueError("automaton has no states")
        if self.initial not in self.states:
            raise ValueError(f"initial state '{self.initial}' not among states")
        for q in self.states:
            if q not in self.omega:
                raise ValueError(f"state '{q}' has no color")
        for (q, a), f in self.delta.items():
            if q not in self.states:
                raise ValueError(f"transition for unknown state '{q}'")
            if a not in self.terminals:
                raise ValueError(f"transition for unknown symbol '{a}'")
            for d, q2 in atoms_of(f):
                if not 1 <= d <= self.terminals[a]:
                    raise ValueError(
                        f"direction {d} out of range for '{a}' "
                        f"(arity {self.terminals[a]}) in delta({q},{a})")
                if q2 not in self.states:
                    raise ValueError(f"unknown state '{q2}' in delta({q},{a})")


def color_set(m: Apt) -> tuple[Color, ...]:
    """The image of the coloring plus the neutral color, in color order."""
    cols: set[Color] = {EPSILON}
    cols.update(m.omega[q] for q in m.states)
    return tuple(sorted(cols, key=color_key))


# A colored profile for an arity-n symbol: one set of (color, state) pairs
# per direction.
ColoredProfile = tuple[frozenset[tuple[Color, str]], ...]


def satisfies(alpha: ColoredProfile, q: str, a: str, m: Apt) -> bool:
    """Does the profile satisfy the transition formula for (q, a)?

    True when some clause of the DNF is covered: for each atom (k, q') of
    the clause, the pair (omega(q'), q') occurs in component k.  Components
    may contain extra pairs.
    """
    arity = m.terminals[a]
    if len(alpha) != arity:
        raise ValueError(f"profile has {len(alpha)} components, "
                         f"'{a}' has arity {arity}")
    for clause in dnf(m.delta_of(q, a)):
        if all((m.omega[q2], q2) in alpha[k - 1] for k, q2 in clause):
            return True
    return False


# ---------------------------------------------------------------------------
# Finite-prefix run search

def run_search(m: Apt, t: TreePrefix, q: str) -> bool:
    """Is there a finite run over the prefix from state q?

    Unresolved leaves accept unconditionally; the parity condition is
    ignored, so this is only a per-depth oracle (exact for automata whose
    colors make every infinite run accepting).
    """
    memo: dict[tuple[int, str], bool] = {}

    def visit(node: TreePrefix, p: str) -> bool:
        if node.is_bottom:
            return True
        key = (id(node), p)
        if key in memo:
            return memo[key]
        memo[key] = False  # cycles impossible on a finite tree; guard anyway
        ok = False
        for clause in dnf(m.delta_of(p, node.label)):
            if all(visit(node.children[k - 1], q2) for k, q2 in clause):
                ok = True
                break
        memo[key] = ok
        return ok

    return visit(t, q)
