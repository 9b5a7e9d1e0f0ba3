"""Model checking of higher-order recursion schemes against alternating
parity tree automata, through a finite game over colored intersection-type
sequents, with extraction of schemes generating accepting run-trees."""

from .automata import (Apt, Atom, Clause, ColoredProfile, EPSILON, FALSE,
                       Formula, TRUE, FAnd, FOr, atoms_of, cmax, color_key,
                       color_set, conj, disj, dnf, eval_formula,
                       format_color, format_formula, run_search, satisfies,
                       sorted_dnf)
from .game import (ADAM, AdamNode, ColorNode, EVE, EveNode, GameNode,
                   ParityGame, Solution, accepted_states, build_game,
                   check_eve_strategy, solve_brute, to_dot, zielonka)
from .itypes import (ArrowType, ColoredSet, IType, SizeGuardExceeded,
                     StateType, box_color, colored_set, count_types,
                     enumerate_colored_sets, enumerate_types, format_itype,
                     is_terminal_type, subtype, subtype_set)
from .selection import (AnnotatedHors, RunReport, extract_scheme,
                        format_report, verify_runtree)
from .syntax import (App, Arrow, BOTTOM, Fix, GROUND, Ground, Hors,
                     IllFormedScheme, Lam, NonTerminal, Rule, SimpleType,
                     Term, Terminal, TreePrefix, UnresolvedWithinBudget, Var,
                     apply, arrow, bohm_tree, check_wellformed, format_sort,
                     format_term, format_tree, from_lambda_y, is_prefix_of,
                     order, to_lambda_y, unfold)
from .typecheck import (Derivation, TypeEnv, check_derivation, denotation,
                        derive, residual_env, rule_typings)

__all__ = [name for name in dir() if not name.startswith("_")]
