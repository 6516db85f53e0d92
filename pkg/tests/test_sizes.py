import math
import random

import pytest

from spinaldim.errors import PreconditionError
from spinaldim.gf2 import Functional
from spinaldim.sequence import DefiningSequence, constant, grigorchuk, sunic
from spinaldim.sizes import (BRANCH_DIHEDRAL, BRANCH_MAIN, BRANCH_ROOT, descent_step, exponent,
                             greatest_independent_k, multi_descent, size_exponent, t_index_first,
                             t_index_general, unroll_descent)
from spinaldim.verify import compare_sizes, oracle_t_indices

from helpers import corpus

F = Functional.parse


class TestSizeExponent:
    def test_grigorchuk_closed_form(self):
        g = grigorchuk()
        for m in range(3, 20):
            assert exponent(g, m) == 5 * 2 ** (m - 3) + 2

    def test_branches(self):
        assert size_exponent(grigorchuk(), 1).branch == BRANCH_ROOT
        assert exponent(grigorchuk(), 1) == 1
        w = DefiningSequence.from_syllables(2, ["10", "01"], [2, 1])
        br = size_exponent(w, 3)
        assert (br.exponent, br.branch) == (4, BRANCH_DIHEDRAL)
        assert size_exponent(w, 4).branch == BRANCH_MAIN

    def test_breakdown_serialises(self):
        data = size_exponent(sunic(3), 7).to_json()
        assert data["exponent"] == exponent(sunic(3), 7)
        assert data["lambdas"] == [5, 4]
        assert set(data["terms"]) == {"sigma", "middle", "correction", "tail"}

    def test_constant_sequence_is_dihedral(self):
        for m in range(2, 12):
            assert exponent(constant(2), m) == m + 1

    def test_against_oracle_small_corpus(self):
        for w in corpus(8, seed=21):
            for m, f, o in compare_sizes(w, 7):
                assert f == o, (w, m)

    def test_rejects_m_zero(self):
        with pytest.raises(PreconditionError):
            size_exponent(grigorchuk(), 0)


class TestDescent:
    def test_grigorchuk_m5(self):
        st = descent_step(grigorchuk(), 5)
        assert (st.a1, st.delta, st.shifted_exponent) == (1, 1, 12)
        assert st.exponent == 2 + 1 + 1 + 2 * (12 - 2 - 1) == 22

    def test_independent_first_letter(self):
        st = descent_step(sunic(3), 3)
        assert st.delta == 0 and st.shifted_exponent == 3
        assert st.exponent == 7 == exponent(sunic(3), 3)

    def test_boundary_m_equals_a1_plus_one(self):
        # the relation still holds one level above the first syllable
        w = DefiningSequence.from_syllables(2, ["10", "01"], [3, 2])
        assert descent_step(w, 4).exponent == exponent(w, 4) == 5
        with pytest.raises(PreconditionError):
            descent_step(w, 3)

    def test_unroll_matches(self):
        for w in corpus(20, seed=4):
            for m in range(1, 12):
                assert unroll_descent(w, m) == exponent(w, m)

    def test_multi_descent(self):
        g = grigorchuk()
        one = multi_descent(g, 5, 1)
        assert one.exponent == descent_step(g, 5).exponent
        two = multi_descent(g, 6, 2)
        assert two.shifted_exponent == exponent(g.shift(2), 4) and two.exponent == 42
        three = multi_descent(g, 6, 3)
        assert three.spanning_tail and three.spanning_value == 3 + 7 + 8 * (exponent(g, 3) - 3) == 42

    def test_multi_descent_all_lambdas(self):
        for w in corpus(15, seed=9):
            for m in range(2, 11):
                K = w.s_inv(m)
                for lam in range(0, K + 1):
                    try:
                        md = multi_descent(w, m, lam)
                    except PreconditionError:
                        continue
                    e = exponent(w, m)
                    assert md.exponent == e
                    if md.spanning_value is not None:
                        assert md.spanning_value == e
                    if md.first_independence_value is not None:
                        assert md.first_independence_value == e


class TestIndexLemmas:
    def test_grigorchuk_general(self):
        g = grigorchuk()
        assert [t_index_general(g, g.letter(2), m) for m in range(1, 7)] == [1, 1, 3, 3, 3, 3]

    def test_grigorchuk_first(self):
        g = grigorchuk()
        assert [t_index_first(g, m) for m in range(1, 7)] == [1, 3, 3, 4, 4, 4]

    def test_never_spanned(self):
        w = DefiningSequence.periodic(3, ["100", "010"])
        psi = F("001")
        assert greatest_independent_k(w, psi) == math.inf
        assert all(t_index_general(w, psi, m) == 1 for m in range(1, 10))
        assert oracle_t_indices(w, psi, 6) == [1] * 6

    def test_constant(self):
        w = constant(2)
        assert [t_index_first(w, m) for m in range(1, 6)] == [1, 3, 4, 5, 6]
        assert oracle_t_indices(w, w.letter(1), 5) == [1, 3, 4, 5, 6]

    def test_preconditions(self):
        g = grigorchuk()
        with pytest.raises(PreconditionError):
            t_index_general(g, g.letter(1), 4)
        with pytest.raises(PreconditionError):
            t_index_general(g, Functional(0, 2), 4)

    def test_against_oracle(self):
        for w in corpus(4, seed=13):
            for x in range(1, 1 << w.n):
                psi = Functional(x, w.n)
                got = oracle_t_indices(w, psi, 6)
                for m in range(1, 7):
                    f = t_index_first(w, m) if psi == w.letter(1) else t_index_general(w, psi, m)
                    assert f == got[m - 1], (w, psi, m)
