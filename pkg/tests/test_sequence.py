import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from spinaldim.errors import (InsufficientPrefixError, PreconditionError, UnsupportedModeError)
from spinaldim.gf2 import Functional, rank
from spinaldim.sequence import DefiningSequence, constant, grigorchuk, preset, sunic

from helpers import random_sequence

F = Functional.parse


def two_three():
    return DefiningSequence.from_syllables(2, ["10", "01"], [2, 3])


class TestSyllableForm:
    def test_grigorchuk(self):
        form = grigorchuk().syllable_form()
        assert [str(x) for x in form.letters] == ["10", "01", "11"]
        assert form.multiplicities == (1, 1, 1)
        assert [grigorchuk().s(k) for k in range(8)] == list(range(8))

    def test_run_length_of_prefix(self):
        w = DefiningSequence.finite(2, ["10", "10", "01", "01", "01"])
        form = w.syllable_form()
        assert [str(x) for x in form.letters] == ["10", "01"]
        assert form.multiplicities == (2, 3)
        assert form.tail == "truncated"

    def test_constant_has_infinite_tail(self):
        form = constant(2).syllable_form()
        assert len(form.letters) == 1 and form.tail == "infinite"

    def test_round_trip_window(self):
        rng = random.Random(3)
        for _ in range(30):
            w = random_sequence(rng)
            assert w.syllable_form().to_developed_form(40) == w.letters(40)

    def test_open_last_syllable_refused(self):
        w = DefiningSequence.finite(2, ["10", "10", "01"])
        assert w.a(1) == 2
        with pytest.raises(InsufficientPrefixError):
            w.syllable(2)


class TestShift:
    def test_examples(self):
        g = grigorchuk()
        assert g.shift(1) == DefiningSequence.periodic(2, ["01", "11", "10"])
        assert g.shift(0) == g
        assert g.shift(3) == g

    def test_composes(self):
        rng = random.Random(5)
        for _ in range(30):
            w = random_sequence(rng)
            assert w.shift(2).shift(3) == w.shift(5)

    def test_drops_first_syllable(self):
        rng = random.Random(11)
        for _ in range(30):
            w = random_sequence(rng)
            if w.cycle is None and w.head_length == 1:
                continue
            full = w.syllable_form()
            cut = w.shift(w.s(1))
            assert cut.letters(20) == w.letters(w.s(1) + 20)[w.s(1):]
            assert cut.a(1) == w.a(2) and cut.syllable_letter(1) == full.letters[1]

    def test_prefix_exhausted(self):
        w = DefiningSequence.finite(2, ["10", "01"])
        with pytest.raises(InsufficientPrefixError):
            w.shift(2)


class TestIndices:
    def test_s_inv_examples(self):
        assert grigorchuk().s_inv(5) == 4
        assert two_three().s_inv(4) == 2
        assert two_three().s_inv(2) == 1
        assert two_three().s_inv(1) == 0

    def test_s_inv_staircase(self):
        rng = random.Random(1)
        for _ in range(20):
            w = random_sequence(rng)
            if w.cycle is None:
                continue
            for k in range(1, 8):
                for m in range(w.s(k - 1) + 2, w.s(k) + 2):
                    assert w.s_inv(m) == k

    def test_dim_mod_examples(self):
        g = grigorchuk()
        assert g.dim_mod(2) == 1
        assert g.dim_mod(3) == 2
        assert g.dim_mod(100) == 2
        assert g.dim_mod(1) == 0

    def test_dim_mod_monotone_and_dihedral_boundary(self):
        rng = random.Random(2)
        for _ in range(20):
            w = random_sequence(rng)
            dims = [w.dim_mod(m) for m in range(1, 30)]
            assert dims == sorted(dims)
            for m in range(2, 30):
                assert (dims[m - 1] == 1) == (m <= w.a(1) + 1)
            assert w.diminf() <= dims[-1]

    def test_diminf(self):
        assert grigorchuk().diminf() == 2
        assert constant(2).diminf() == 1
        for n in range(2, 6):
            assert sunic(n).diminf() == n
        head = DefiningSequence.periodic(3, ["100", "010"], ["001"])
        assert head.diminf() == 2

    def test_diminf_needs_periodic(self):
        with pytest.raises(UnsupportedModeError):
            DefiningSequence.finite(2, ["10"]).diminf()

    def test_lambda_sunic(self):
        w = sunic(3)
        for k in range(3, 12):
            assert w.lambda_index(k, 2) == k - 2
            assert w.lambda_index(k, 1) == k - 1

    def test_lambda_grigorchuk_smallest(self):
        # the letters 1..3 already span, so the smallest lambda is 0
        assert grigorchuk().lambda_index(3, 2) == 0
        assert grigorchuk().lambda_index(5, 2) == 0
        assert grigorchuk().lambda_index(5, 1) == 4

    def test_delta_examples(self):
        g = grigorchuk()
        assert g.delta_j(5, 1) == 1
        assert g.delta_j(3, 1) == 0
        assert g.delta_j(5, 0) == 1
        with pytest.raises((PreconditionError, IndexError)):
            g.delta_j(3, 5)

    def test_sigma(self):
        assert grigorchuk().sigma_k(3) == 7
        assert grigorchuk().sigma_k(0) == 0
        assert two_three().sigma_k(2) == 14

    def test_first_independence_infinite(self):
        w = DefiningSequence.periodic(3, ["100", "010"])
        assert w.first_independence(F("001")) == math.inf
        assert w.first_independence(F("010")) == 1


class TestCanonicalForm:
    def test_rotated_preperiod_collapses(self):
        a = DefiningSequence.periodic(2, ["10", "01", "11", "10", "01", "11"], ["11"])
        assert a == DefiningSequence.periodic(2, ["11", "10", "01"])

    def test_zero_letter_rejected(self):
        with pytest.raises(Exception):
            DefiningSequence.periodic(2, ["00", "10"])

    def test_json_round_trip(self):
        rng = random.Random(4)
        for _ in range(20):
            w = random_sequence(rng)
            assert DefiningSequence.from_json(w.to_json()) == w
        data = {"n": 2, "letters": ["10", "01"], "mults": [2, 3]}
        assert DefiningSequence.from_json(data) == two_three()

    def test_presets(self):
        assert preset("grigorchuk") == grigorchuk()
        assert preset("sunic 4") == preset("sunic-4") == sunic(4)
        with pytest.raises(KeyError):
            preset("nope")


@settings(max_examples=50, deadline=None)
@given(st.randoms(use_true_random=False))
def test_window_rank_matches_dim_mod(rnd):
    w = random_sequence(rnd)
    for m in range(2, 15):
        assert w.dim_mod(m) == rank([x for x, _ in w.window(m)])
