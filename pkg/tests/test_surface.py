import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from okounkov.errors import DomainError, FlagWarning, ModelInconsistent
from okounkov.geometry import add, scale, vec
from okounkov.models import blowup_p2_surface, p2_surface, ruled_surface
from okounkov.surface import (
    SurfaceFlag, SurfaceModel, asymptotic_valuation_surface, check_decomposition,
    flag_order, is_negative_definite, mu_surface, negative_part_breakpoints,
    okounkov_curve, okounkov_polygon, wall_candidates, zariski_decompose,
)

P2 = p2_surface()
BL = blowup_p2_surface()
FLAG_E = SurfaceFlag.build((0, 1), -1)
FLAG_HE = SurfaceFlag.build((1, -1), 0, {"E": 0})
FLAG_L = SurfaceFlag.build((1,), 1)


def test_models_validate():
    for m in (P2, BL, ruled_surface(0), ruled_surface(3)):
        m.validate()


def test_zariski_examples():
    Z = zariski_decompose(BL, (1, 2))
    assert Z.positive == (1, 0) and Z.negative_coeffs == (("E", 2),)
    Z = zariski_decompose(P2, (3,))
    assert Z.positive == (3,) and Z.negative_coeffs == ()
    Z = zariski_decompose(BL, (F(1, 2), F(3, 2)))
    assert Z.positive == (F(1, 2), 0) and Z.coeff("E") == F(3, 2)


def test_zariski_errors():
    with pytest.raises(DomainError, match="not pseudo-effective"):
        zariski_decompose(BL, (1, -2))
    # a "negative curve" of positive square breaks the model audit
    bad = SurfaceModel.build(("H", "E"), [[1, 0], [0, -1]], [("E", (0, 1)), ("X", (1, -2))],
                             [(0, 1), (1, -1)], [(1, 0), (1, -1)])
    with pytest.raises(ModelInconsistent):
        bad.validate()


def test_asymptotic_valuation_examples():
    assert asymptotic_valuation_surface(BL, (3, 0), "E") == 0
    assert asymptotic_valuation_surface(BL, (1, 2), "E") == 2
    assert asymptotic_valuation_surface(BL, (2, 0), "E") == 0


def test_mu_examples():
    assert mu_surface(P2, (5,), (1,)) == 5
    assert mu_surface(BL, (2, -1), (0, 1)) == 1
    assert mu_surface(BL, (2, 0), (1, -1)) == 2


def test_breakpoint_examples():
    assert negative_part_breakpoints(P2, (1,), (1,)) == [0, 1]
    assert negative_part_breakpoints(BL, (2, 0), (1, -1)) == [0, 2]
    assert negative_part_breakpoints(BL, (2, -1), (0, 1)) == [0, 1]
    with pytest.raises(DomainError, match="big cone"):
        negative_part_breakpoints(BL, (1, -1), (0, 1))


def test_breakpoints_with_an_interior_wall():
    # 3H - E - t(H - E) = (3 - t)H + (t - 1)E picks up E in its support after t = 1
    assert negative_part_breakpoints(BL, (3, -1), (1, -1)) == [0, 1, 3]


def test_polygon_with_flag_point_on_negative_curve():
    # flag curve H - E through its point on E, so alpha(t) is the E-coefficient t - 1
    flag = SurfaceFlag.build((1, -1), 0, {"E": 1})
    p = okounkov_polygon(BL, flag, (3, -1))
    assert p.alpha(1) == 0 and p.alpha(3) == 2 and p.alpha(2) == 1
    assert all(p.beta(t) == 2 for t in p.t_breakpoints)
    assert p.polygon.area * 2 == BL.dot((3, -1), (3, -1))


def test_flag_curve_leaves_support_after_ord():
    # D = H + 2E has ord_E = 2; for t >= 2 the class H + (2 - t)E has E.D_t > 0
    with pytest.warns(FlagWarning):  # P = H has H.E = 0
        p = okounkov_polygon(BL, FLAG_E, (1, 2))
    assert p.t_breakpoints[0] == 2 == flag_order(BL, (1, 2), (0, 1))
    assert all("E" not in s for s in p.neg_support_per_piece)


def test_null_locus_flag_warns():
    # H.E = 0: E lies in the augmented base locus of H although N_H = 0
    with pytest.warns(FlagWarning, match="B\\+"):
        okounkov_polygon(BL, FLAG_E, (1, 0))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        okounkov_polygon(BL, FLAG_E, (2, -1))
        okounkov_polygon(BL, FLAG_HE, (1, 0))


def test_okounkov_curve():
    assert okounkov_curve(3) == (0, 3)
    assert okounkov_curve(0) == (0, 0)
    assert okounkov_curve(F(5, 2)) == (0, F(5, 2))
    with pytest.raises(DomainError, match="not effective"):
        okounkov_curve(-1)


def test_limiting_polygon_of_boundary_class():
    p = okounkov_polygon(BL, FLAG_HE, (1, -1))
    assert p.limiting and p.polygon.affine_dim < 2


def test_negative_definite():
    assert is_negative_definite([[-1]])
    assert is_negative_definite([[-2, 1], [1, -2]])
    assert not is_negative_definite([[-1, 2], [2, -1]])


def test_wall_candidates_cover_the_walls():
    # along 3H - tH - E with flag H - E, the polygon changes shape at t = 2
    ts = wall_candidates(BL, FLAG_HE, (3, -1), (-1, 0), 0, 3)
    assert 2 in ts


# -- property suite on random classes ---------------------------------------

bl_classes = st.tuples(st.integers(0, 6), st.integers(-6, 6)).filter(
    lambda v: BL.eff_cone.contains(v) and any(v))
rank3 = SurfaceModel.build(("H", "E1", "E2"), [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
                           [("E1", (0, 1, 0)), ("E2", (0, 0, 1)), ("L", (1, -1, -1))],
                           [(0, 1, 0), (0, 0, 1), (1, -1, -1)],
                           [(1, 0, 0), (1, -1, 0), (1, 0, -1)])
r3_classes = st.tuples(st.integers(0, 5), st.integers(-5, 5), st.integers(-5, 5)).filter(
    lambda v: rank3.eff_cone.contains(v) and any(v))


@settings(max_examples=80, deadline=None)
@given(bl_classes)
def test_decomposition_axioms_blowup(D):
    check_decomposition(BL, D, zariski_decompose(BL, D))


@settings(max_examples=80, deadline=None)
@given(r3_classes)
def test_decomposition_axioms_and_order_independence(D):
    Z = zariski_decompose(rank3, D)
    check_decomposition(rank3, D, Z)
    rev = SurfaceModel(rank3.basis_labels, rank3.intersection_form,
                       tuple(reversed(rank3.negative_curves)), rank3.eff_cone,
                       rank3.nef_cone)
    assert zariski_decompose(rev, D) == Z


@settings(max_examples=60, deadline=None)
@given(bl_classes, st.fractions(min_value=F(1, 4), max_value=4, max_denominator=5))
def test_homogeneity(D, m):
    a = okounkov_polygon(BL, FLAG_HE, D).polygon
    b = okounkov_polygon(BL, FLAG_HE, scale(m, vec(D))).polygon
    assert b == a.scaled(m)


@settings(max_examples=60, deadline=None)
@given(bl_classes)
def test_area_identity(D):
    if not BL.is_big(D):
        return
    res = okounkov_polygon(BL, FLAG_HE, D)
    P = zariski_decompose(BL, D).positive
    assert 2 * res.polygon.area == BL.dot(P, P)
    for t in res.t_breakpoints:
        assert res.beta(t) >= res.alpha(t)


@settings(max_examples=40, deadline=None)
@given(r3_classes)
def test_area_identity_two_point_blowup(D):
    if not rank3.is_big(D):
        return
    flag = SurfaceFlag.build((1, 0, 0), 1)
    res = okounkov_polygon(rank3, flag, D)
    P = zariski_decompose(rank3, D).positive
    assert 2 * res.polygon.area == rank3.dot(P, P)
