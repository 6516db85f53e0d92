from fractions import Fraction

import numpy as np
import pytest

from spinaldim.errors import DepthError, OracleCapError, PreconditionError
from spinaldim.fulldim import (FullDimSpec, block_containment_check, btilde, check_delta_lemma,
                               conjugation_identities, delta_vertex, h_exponent_table,
                               h_group_generators, portrait_from_vertex_permutation, sunic_generators)
from spinaldim.oracle import tree_group
from spinaldim.sequence import sunic
from spinaldim.spinal import grigorchuk_generators, spinal_generating_set
from spinaldim.tree import Portrait, adding_machine, delta_graft


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sunic_generators_match_spinal(n):
    d = 7
    gens = sunic_generators(n, d)
    assert len(gens) == n + 1
    if n >= 2:
        assert set(gens) == set(spinal_generating_set(sunic(n), d))
    for g in gens:
        assert (g * g).is_identity()


def test_sunic_generators_errors():
    with pytest.raises(PreconditionError):
        sunic_generators(0, 4)
    with pytest.raises(DepthError):
        sunic_generators(2, 0)


def test_btilde_unfolds():
    d = 9
    b3 = btilde(3, d)
    expected = delta_graft([Portrait.root_swap(d - 3), adding_machine(4, d - 3), btilde(4, d - 3)], d)
    assert b3 == expected
    for n in (3, 4, 5):
        b = btilde(n, d)
        assert b.section("0" * n) == Portrait.root_swap(d - n)
        assert all(b.act(w) == w for w in (format(i, f"0{n}b") for i in range(1 << n)))


def test_btilde_depth_coherent():
    for n in (3, 4):
        deep = btilde(n, 12)
        for d in range(n + 1, 12):
            assert deep.truncate(d) == btilde(n, d)


def test_btilde_errors():
    with pytest.raises(PreconditionError):
        btilde(2, 8)
    with pytest.raises(DepthError):
        btilde(3, 3)
    with pytest.raises(DepthError):
        FullDimSpec(3, 3)
    with pytest.raises(DepthError):
        FullDimSpec(3, 6).group(7)


def test_h_group_two_generated_and_odometer_order():
    spec = FullDimSpec(3, 8)
    assert len(spec.generators()) == 2 and spec.reliable_depth == 8
    a, _ = spec.generators()
    for m in range(3, 9):
        assert a.truncate(m).order() == 8


def test_h3_table_is_deterministic():
    table = h_exponent_table(3, 8)
    assert [(m, e) for m, e, _ in table] == [(4, 10), (5, 19), (6, 35), (7, 51), (8, 163)]
    assert table[-1][2] == Fraction(163, 256)
    assert h_exponent_table(3, 8) == table


def test_delta_vertex():
    assert [delta_vertex(3, i) for i in range(3)] == ["000", "100", "110"]
    a = adding_machine(3, 3)
    for i in range(3):
        assert (a ** (1 << i)).act("111") == delta_vertex(3, i)


def test_conjugation_identities_random():
    rng = np.random.default_rng(3)
    for n in (1, 2, 3):
        for _ in range(4):
            gs = [Portrait.random(5, rng) for _ in range(n)]
            assert conjugation_identities(gs, n + 5) == (True, True)


def test_delta_lemma_grigorchuk():
    g = grigorchuk_generators(6)
    rep3 = check_delta_lemma([g["a"], g["b"], g["c"]], 6)
    assert len(rep3.outcomes) == 8 * 3 and rep3.ok
    rep2 = check_delta_lemma([g["a"], g["b"]], 6)
    assert len(rep2.outcomes) == 4 and rep2.ok and rep2.failures() == []


def test_delta_lemma_commuting_is_vacuous():
    g = grigorchuk_generators(5)
    rep = check_delta_lemma([g["b"], g["c"]], 5)
    assert rep.ok


def test_delta_lemma_limits():
    g = grigorchuk_generators(6)
    with pytest.raises(PreconditionError):
        check_delta_lemma([g["a"]] * 4, 8)
    with pytest.raises(OracleCapError):
        check_delta_lemma([g["a"], g["b"]], 12)


def test_block_containment_h4_in_h3():
    rep = block_containment_check(h_group_generators(4, 7), h_group_generators(3, 7), 3, 7,
                                  derived=True, samples=10, rng=np.random.default_rng(1))
    assert rep.inequality and rep.holds
    assert (rep.lower_exponent, rep.upper_exponent) == (0, 45)
    rep8 = block_containment_check(h_group_generators(4, 8), h_group_generators(3, 8), 3, 8,
                                   derived=True, samples=5)
    assert (rep8.lower_exponent, rep8.upper_exponent) == (112, 157) and rep8.holds


def test_block_containment_trivial_and_negative():
    gens = h_group_generators(3, 6)
    rep = block_containment_check(gens, gens, 0, 6)
    assert rep.lower_exponent == rep.upper_exponent and rep.holds
    g = grigorchuk_generators(6)
    assert not block_containment_check([g["a"], g["b"]], [g["a"]], 1, 6).inequality


def test_portrait_round_trip():
    rng = np.random.default_rng(0)
    for _ in range(20):
        p = Portrait.random(5, rng)
        assert portrait_from_vertex_permutation(p.vertex_permutation(5), 5) == p
