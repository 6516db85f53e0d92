from fractions import Fraction

import pytest

from spinaldim.cantor import (HULL, IDENTITY, AffineMap, CantorCode, build_omega_from_code, cantor_embed,
                              code_to_point, compose_chain, construction_estimate,
                              construction_multiplicities, f, periodic_surrogate, predicted_dimension,
                              selection_bounds, selector)
from spinaldim.dimension import dimension_exact
from spinaldim.errors import PreconditionError

F = Fraction


def test_affine_basics():
    g = f(2, 1)
    assert g(0) == F(3, 4) and g(1) == 1
    assert (g @ g.inverse()) == IDENTITY
    assert compose_chain([f(1), f(2)])(0) == f(1)(f(2)(0))
    assert f(1).fixed_point() == 1 and f(2).fixed_point() == F(2, 3)
    with pytest.raises(PreconditionError):
        f(0)
    with pytest.raises(PreconditionError):
        IDENTITY.fixed_point()


def test_ifs_images_split_the_hull():
    assert f(1).image(HULL) == (F(5, 6), F(1))
    assert f(2).image(HULL) == (F(2, 3), F(3, 4))
    assert cantor_embed().image((F(0), F(1))) == HULL


def test_code_parsing():
    c = CantorCode.parse("12(1)")
    assert c.prefix == (1, 2) and c.period == (1,)
    assert c.digits(5) == (1, 2, 1, 1, 1) and c[3] == 1 and str(c) == "12(1)"
    assert not CantorCode.parse("21").is_periodic
    for bad in ["", "3", "1(", "()"]:
        with pytest.raises(PreconditionError):
            CantorCode.parse(bad)
    with pytest.raises(PreconditionError):
        CantorCode.parse("12").digits(3)


def test_code_points():
    assert code_to_point("(1)") == 1
    assert code_to_point("(2)") == F(2, 3)
    assert code_to_point("(12)") == compose_chain([f(1), f(2)]).fixed_point()
    assert code_to_point("2") == (F(2, 3), F(3, 4))
    # the gap (3/4, 5/6) between the two first-level pieces
    assert code_to_point("2(1)") == F(3, 4)
    assert code_to_point("1(2)") == F(5, 6)


def test_predicted_values():
    assert predicted_dimension("(2)", 3) == F(53, 192)
    assert predicted_dimension("(1)", 3) == F(9, 32)
    assert predicted_dimension("2(1)", 3) == predicted_dimension("11(1)", 3) == F(9, 32)
    assert predicted_dimension("12(1)", 4) == F(43, 256)
    lo, hi = predicted_dimension("2", 3)
    assert lo <= F(53, 192) <= hi and lo < hi
    with pytest.raises(PreconditionError):
        predicted_dimension("(1)", 2)


def test_multiplicities():
    assert construction_multiplicities((2,), 3) == [2, 3]
    assert construction_multiplicities((2, 2), 3) == [2, 3, 2, 2, 3]
    assert construction_multiplicities((1, 2, 1), 4) == [1, 4, 2, 1, 4, 1, 2, 1, 4]


def test_map_identity():
    assert f(1, -1) @ f(1) == f(2, -1)


def test_hulls_disjoint_across_s():
    images = sorted((f(s, 1) @ f(1, -1)).image(HULL) for s in (3, 4, 5))
    for left, right in zip(images, images[1:]):
        assert left[1] < right[0]


def test_selector_undoes_first_digit():
    for s in (3, 4, 5):
        for b in (1, 2):
            assert selector(s, b) @ f(b) == f(s, 1) @ f(b, -1)


def test_selection_inequality():
    for beta in range(1, 8):
        for alpha in (1, 2):
            assert selection_bounds(alpha, beta)[0] >= F(3, 4)
        for s in range(3, 9):
            assert selection_bounds(s, beta)[1] < F(3, 4)


def test_build_omega():
    w = build_omega_from_code("(2)", 3, digits=2)
    form = w.syllable_form()
    assert form.multiplicities == (2, 3, 2, 2, 3)
    assert [str(x) for x in form.letters] == ["10", "01", "10", "01", "10"]
    assert len(build_omega_from_code("(1)", 4, syllables=40).syllable_form().multiplicities) == 40
    with pytest.raises(PreconditionError):
        build_omega_from_code("(1)", 3)
    with pytest.raises(PreconditionError):
        build_omega_from_code("(1)", 3, letters=("10", "10"), digits=2)


@pytest.mark.parametrize("code,s", [("(2)", 3), ("(1)", 3), ("12(1)", 4), ("(12)", 5)])
def test_surrogates(code, s):
    target = predicted_dimension(code, s)
    gaps = []
    for length in (2, 4, 6, 8):
        sur = periodic_surrogate(code, s, length)
        assert dimension_exact(sur.omega).value == sur.chain_value
        gaps.append(abs(sur.chain_value - target))
    assert all(g > 0 for g in gaps)
    assert gaps[-1] < gaps[0] / 8


@pytest.mark.parametrize("code,s", [("(2)", 3), ("(1)", 3), ("12(1)", 4)])
def test_construction_window_converges(code, s):
    est = construction_estimate(code, s, digits=40)
    assert est.mode == "window"
    assert abs(est.value - predicted_dimension(code, s)) < F(1, 10 ** 12)
