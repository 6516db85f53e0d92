import pytest
from hypothesis import given, strategies as st

from spinaldim.errors import DimensionMismatchError, InvalidFunctionalError
from spinaldim.gf2 import (Functional, GroupLetter, express, in_span, kernel_basis, pairing, rank,
                           span_basis)

F = Functional.parse


def test_rank_examples():
    assert rank([]) == 0
    assert rank([F("10"), F("01"), F("11")]) == 2
    assert rank([F("110"), F("011"), F("101")]) == 2


def test_in_span_examples():
    assert in_span(F("11"), [F("10"), F("01")])
    assert not in_span(F("10"), [F("01")])
    assert in_span(Functional(0, 3), [F("110")])
    assert in_span(Functional(0, 3), [])


def test_kernel_basis_examples():
    assert kernel_basis(F("10")) == [GroupLetter.parse("01")]
    assert kernel_basis(F("11")) == [GroupLetter.parse("11")]
    assert sorted(map(str, kernel_basis(F("100")))) == ["001", "010"]


def test_kernel_of_zero_rejected():
    with pytest.raises(InvalidFunctionalError):
        kernel_basis(Functional(0, 2))


def test_mismatched_n_rejected():
    with pytest.raises(DimensionMismatchError):
        rank([F("10"), F("101")])
    with pytest.raises(DimensionMismatchError):
        in_span(F("10"), [F("101")])
    with pytest.raises(DimensionMismatchError):
        Functional(8, 3)


def test_string_round_trip():
    assert str(F("0110")) == "0110"
    assert F("110") + F("011") == F("101")


def test_span_basis_is_canonical():
    a = span_basis([F("110"), F("011")])
    b = span_basis([F("101"), F("110"), F("011")])
    assert a == b


vectors = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.integers(0, (1 << n) - 1), max_size=7).map(
        lambda xs: [Functional(x, n) for x in xs] or [Functional(0, n)]))


@given(vectors, st.randoms())
def test_rank_permutation_and_duplication_invariant(fs, rnd):
    shuffled = list(fs)
    rnd.shuffle(shuffled)
    assert rank(shuffled) == rank(fs) == rank(fs + fs[:2])
    assert 0 <= rank(fs) <= fs[0].n


@given(vectors, st.data())
def test_in_span_matches_rank(fs, data):
    n = fs[0].n
    psi = Functional(data.draw(st.integers(0, (1 << n) - 1)), n)
    assert in_span(psi, fs) == (rank(fs + [psi]) == rank(fs))


@given(vectors, st.data())
def test_express_finds_a_subset_sum(fs, data):
    n = fs[0].n
    psi = data.draw(st.integers(0, (1 << n) - 1))
    combo = express(psi, [f.bits for f in fs])
    if combo is None:
        assert not in_span(Functional(psi, n), fs)
    else:
        total = 0
        for i in combo:
            total ^= fs[i].bits
        assert total == psi


@given(st.integers(1, 8).flatmap(lambda n: st.integers(1, (1 << n) - 1).map(lambda x: Functional(x, n))))
def test_kernel_basis_properties(psi):
    ker = kernel_basis(psi)
    assert len(ker) == psi.n - 1
    assert all(pairing(psi, b) == 0 for b in ker)
    assert rank(ker) == psi.n - 1
