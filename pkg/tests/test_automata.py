import itertools
import random

import pytest

from horsmc import (Apt, Atom, BOTTOM, EPSILON, FALSE, FAnd, FOr, TRUE,
                    TreePrefix, cmax, color_key, color_set, conj, disj, dnf,
                    eval_formula, run_search, satisfies, unfold)
from conftest import loop_apt


def test_epsilon_is_minimal_and_distinct():
    assert color_key(EPSILON) < color_key(0)
    assert EPSILON != 0 and EPSILON != -1
    assert cmax(EPSILON, 3) == 3
    assert cmax(EPSILON, EPSILON) is EPSILON
    assert cmax(2, 1) == 2


class TestDnf:
    def test_conjunction_of_atoms(self):
        f = conj(Atom(2, "q0"), Atom(2, "q1"))
        assert dnf(f) == frozenset({frozenset({(2, "q0"), (2, "q1")})})

    def test_true_is_the_empty_clause(self):
        assert dnf(TRUE) == frozenset({frozenset()})
        assert dnf(FALSE) == frozenset()

    def test_antichain_reduction(self):
        f = FAnd(FOr(Atom(1, "q"), Atom(2, "q")), Atom(1, "q"))
        # evaluation oracle: identical satisfying sets over all assignments
        assert dnf(f) == frozenset({frozenset({(1, "q")})})

    def _random_formula(self, rng, atoms, depth):
        if depth == 0 or rng.random() < 0.3:
            r = rng.random()
            if r < 0.1:
                return TRUE
            if r < 0.2:
                return FALSE
            return Atom(*rng.choice(atoms))
        ctor = FAnd if rng.random() < 0.5 else FOr
        return ctor(self._random_formula(rng, atoms, depth - 1),
                    self._random_formula(rng, atoms, depth - 1))

    def test_soundness_completeness_over_assignments(self):
        atoms = [(1, "q0"), (1, "q1"), (2, "q0"), (2, "q1"), (3, "q0"),
                 (3, "q1")]
        rng = random.Random(7)
        for _ in range(150):
            f = self._random_formula(rng, atoms, 4)
            clauses = dnf(f)
            for bits in itertools.product([False, True], repeat=len(atoms)):
                truth = frozenset(a for a, b in zip(atoms, bits) if b)
                want = eval_formula(f, truth)
                got = any(c <= truth for c in clauses)
                assert want == got, (f, truth)


class TestSatisfies:
    def test_branching_profile_q0(self, ex1_apt):
        alpha = (frozenset(), frozenset({(0, "q0"), (0, "q1")}))
        assert satisfies(alpha, "q0", "if", ex1_apt)

    def test_branching_profile_q1(self, ex1_apt):
        alpha = (frozenset({(0, "q1")}), frozenset({(0, "q0")}))
        assert satisfies(alpha, "q1", "if", ex1_apt)

    def test_empty_profile(self, ex1_apt):
        assert not satisfies((frozenset(), frozenset()), "q0", "if", ex1_apt)
        assert satisfies((), "q0", "Nil", ex1_apt)

    def test_wrong_color_fails(self, ex1_apt):
        alpha = (frozenset(), frozenset({(1, "q0"), (0, "q1")}))
        assert not satisfies(alpha, "q0", "if", ex1_apt)

    def test_monotone_in_profile(self, ex1_apt):
        # exhaustively over profiles for a binary symbol, |Q| = 2
        pool = [(c, q) for c in (EPSILON, 0, 1) for q in ("q0", "q1")]
        subsets = [frozenset(s) for n in range(3)
                   for s in itertools.combinations(pool, n)]
        for q in ex1_apt.states:
            for u1, u2 in itertools.product(subsets, repeat=2):
                if not satisfies((u1, u2), q, "if", ex1_apt):
                    continue
                for e1, e2 in itertools.product(subsets, repeat=2):
                    if u1 <= e1 and u2 <= e2:
                        assert satisfies((e1, e2), q, "if", ex1_apt)

    def test_arity_mismatch_rejected(self, ex1_apt):
        with pytest.raises(ValueError):
            satisfies((frozenset(),), "q0", "if", ex1_apt)


class TestColorSet:
    def test_image_plus_neutral(self):
        m = Apt(states=("q0", "q1"), terminals={}, delta={},
                omega={"q0": 0, "q1": 1}, initial="q0")
        assert color_set(m) == (EPSILON, 0, 1)

    def test_constant_coloring(self, ex1_apt):
        assert color_set(ex1_apt) == (EPSILON, 0)

    def test_neutral_always_present(self):
        assert len(color_set(loop_apt(7))) == 2


class TestRunSearch:
    def test_example_prefixes(self, ex1, ex1_apt):
        for d in range(9):
            assert run_search(ex1_apt, unfold(ex1, d), "q0")
            assert run_search(ex1_apt, unfold(ex1, d), "q1")

    def test_unresolved_leaf_accepts(self, ex1_apt):
        assert run_search(ex1_apt, BOTTOM, "q0")

    def test_false_transition_rejects(self):
        m = Apt(states=("q",), terminals={"a": 0}, delta={},
                omega={"q": 0}, initial="q")
        assert not run_search(m, TreePrefix("a"), "q")

    def test_antitone_under_refinement(self, ex1, ex1_apt):
        # accepting a refinement implies accepting every coarser prefix
        for d in range(1, 8):
            coarse, fine = unfold(ex1, d), unfold(ex1, d + 1)
            for q in ex1_apt.states:
                if run_search(ex1_apt, fine, q):
                    assert run_search(ex1_apt, coarse, q)

    def test_clause_choice_matters(self):
        # delta(q,a) = (1,q0) \/ (1,q1): accepted iff some disjunct runs
        m = Apt(states=("q", "q0", "q1"), terminals={"a": 1, "b": 0, "c": 0},
                delta={("q", "a"): disj(Atom(1, "q0"), Atom(1, "q1")),
                       ("q0", "b"): TRUE,
                       ("q1", "c"): TRUE},
                omega={"q": 0, "q0": 0, "q1": 0}, initial="q")
        t_b = TreePrefix("a", (TreePrefix("b"),))
        t_c = TreePrefix("a", (TreePrefix("c"),))
        assert run_search(m, t_b, "q")
        assert run_search(m, t_c, "q")
        assert not run_search(m, TreePrefix("a", (TreePrefix("a", (BOTTOM,)),)), "q")
