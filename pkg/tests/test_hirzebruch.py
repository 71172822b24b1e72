"""Localized classes: fixed-point values of the projective family and the
origin values of the cone family, with the frozen per-point product forms."""

from fractions import Fraction

import pytest

from eck.algebra import Character, RatExpr, SparsePoly, hfactor_expr, hfactor_minus_one_expr
from eck.hirzebruch import (
    ZeroWeight,
    affine_class,
    cone_pushforward,
    projective_class,
    smooth_local,
)
from eck.torus import GeometryConfig


def ch(*coeffs: int) -> Character:
    return Character(tuple(coeffs))


# -- building blocks ---------------------------------------------------------


def test_smooth_local_point():
    assert smooth_local((), 1).equivalent(RatExpr.one(1))


def test_smooth_local_single_line():
    t = ch(1)
    got = smooth_local((t,), 1)
    assert got.equivalent(hfactor_expr(t))


def test_smooth_local_pair():
    a, b = ch(1, 1), ch(1, -1)
    assert smooth_local((a, b), 2).equivalent(hfactor_expr(a) * hfactor_expr(b))


def test_smooth_local_rejects_zero_weight():
    with pytest.raises(ZeroWeight):
        smooth_local((ch(0, 0),), 2)


def test_hfactor_collapses_at_y_minus_one():
    v = hfactor_expr(ch(1)).subs_y(Fraction(-1)).reduced()
    assert v.den == () and v.num == SparsePoly.one(1)


# -- projective classes: frozen point values --------------------------------


def test_quadric_complement_n4_at_p1():
    # (h(T_1^{-2}) - 1) * h(T_2 T_1^{-1}) * h(T_2^{-1} T_1^{-1})
    cls = projective_class("Qc", 4)
    expect = (
        hfactor_minus_one_expr(ch(0, -2, 0))
        * hfactor_expr(ch(0, -1, 1))
        * hfactor_expr(ch(0, -1, -1))
    )
    assert cls.values[1].equivalent(expect)


def test_pair_complement_n4_at_p1():
    # h(T_1^{-2}) * (h(T_2 T_1^{-1}) - 1) * (h(T_2^{-1} T_1^{-1}) - 1)
    cls = projective_class("Xc", 4)
    expect = (
        hfactor_expr(ch(0, -2, 0))
        * hfactor_minus_one_expr(ch(0, -1, 1))
        * hfactor_minus_one_expr(ch(0, -1, -1))
    )
    assert cls.values[1].equivalent(expect)


def test_pair_complement_n4_at_top_point():
    # at p_2 the variety is one hyperplane through the point: h(T_2^{-2}) - 1
    # survives from the x_{-2} hyperplane and the other tangent factors remain
    cls = projective_class("Xc", 4)
    expect = (
        hfactor_minus_one_expr(ch(0, 0, -2))
        * hfactor_expr(ch(0, 1, -1))
        * hfactor_expr(ch(0, -1, -1))
    )
    assert cls.values[2].equivalent(expect)


def test_closed_quadric_n2_is_two_reduced_points():
    cls = projective_class("Q", 2)
    for i in (-1, 1):
        assert cls.values[i].equivalent(RatExpr.one(2))


def test_closed_quadric_matches_smooth_tangent_product():
    # additivity value at a quadric point == product over the quadric's own
    # tangent weights {t_j - t_i : j != +-i}
    for n in (4, 5, 6):
        geo = GeometryConfig(n)
        cls = projective_class("Q", n)
        for i in geo.indices:
            if i == 0:
                continue  # p_0 (odd n) is off the quadric
            wi = geo.proj_weight(i)
            weights = tuple(
                geo.proj_weight(j) - wi for j in geo.indices if j not in (i, -i)
            )
            assert cls.values[i].equivalent(smooth_local(weights, geo.arity))


def test_odd_center_point_off_quadric():
    for n in (3, 5):
        assert projective_class("Q", n).values[0].num.is_zero
        p = projective_class("P", n)
        qc = projective_class("Qc", n)
        assert qc.values[0].equivalent(p.values[0])


def test_additivity_closure_pointwise():
    for n in (2, 3, 4, 5):
        p = projective_class("P", n)
        for closed, opened in (("Q", "Qc"), ("X", "Xc")):
            a = projective_class(closed, n)
            b = projective_class(opened, n)
            for i in p.geometry.indices:
                assert (a.values[i] + b.values[i]).equivalent(p.values[i])


def test_y_minus_one_collapse():
    for n in (3, 4):
        p = projective_class("P", n)
        for i, v in p.values.items():
            r = v.subs_y(Fraction(-1)).reduced()
            assert r.den == () and r.num == SparsePoly.one(r.num.arity)
        qc = projective_class("Qc", n)
        for i, v in qc.values.items():
            if i == 0:
                continue  # off the quadric the complement restricts to 1
            assert v.subs_y(Fraction(-1)).reduced().num.is_zero
        xc = projective_class("Xc", n)
        for v in xc.values.values():  # every fixed point lies on the pair
            assert v.subs_y(Fraction(-1)).reduced().num.is_zero


def test_subspace_class_vanishes_off_subspace():
    ambient = GeometryConfig(4)
    cls = projective_class("Qc", 2, ambient)
    assert cls.values[2].num.is_zero and cls.values[-2].num.is_zero
    assert not cls.values[1].num.is_zero


def test_ambient_independence_of_subspace_values():
    # the same product form, placed in the bigger variable ring
    small = projective_class("Qc", 2)
    big = projective_class("Qc", 2, GeometryConfig(4))
    for i in (-1, 1):
        assert small.values[i].pad_to(3).equivalent(big.values[i])


def test_projective_floors():
    with pytest.raises(ValueError):
        projective_class("P", 0)
    with pytest.raises(ValueError):
        projective_class("X", 1)
    with pytest.raises(ValueError):
        projective_class("banana", 4)


def test_value_at_guards():
    cls = affine_class("CCQ", 4)
    with pytest.raises(ValueError):
        cls.value_at(1)


# -- affine classes ----------------------------------------------------------


def test_pair_cone_complement_n4():
    # (h(TT_2)-1)(h(TT_2^{-1})-1) h(TT_1) h(TT_1^{-1})
    expect = (
        hfactor_minus_one_expr(ch(1, 0, 1))
        * hfactor_minus_one_expr(ch(1, 0, -1))
        * hfactor_expr(ch(1, 1, 0))
        * hfactor_expr(ch(1, -1, 0))
    )
    assert affine_class("CCX", 4).at_origin.equivalent(expect)


def test_punctured_line_class():
    assert affine_class("Cstar", 1).at_origin.equivalent(hfactor_minus_one_expr(ch(1)))


def test_quadric_cone_complement_n2():
    expect = hfactor_minus_one_expr(ch(1, 1)) * hfactor_minus_one_expr(ch(1, -1))
    got = affine_class("CCQ", 2)
    assert got.at_origin.equivalent(expect)
    assert got.at_origin.equivalent(affine_class("CCX", 2).at_origin)


def test_quadric_cone_complement_n3_has_axis_term():
    # k=0 pair term plus (-y)(h(T) - 1) for the x_0 axis
    a, b, t = ch(1, 1), ch(1, -1), ch(1, 0)
    y = SparsePoly.y_power(2)
    pair = hfactor_minus_one_expr(a) * hfactor_minus_one_expr(b) * hfactor_expr(t)
    axis = hfactor_minus_one_expr(t)
    expect = pair + RatExpr.from_poly(SparsePoly.zero(2) - y) * axis
    assert affine_class("CCQ", 3).at_origin.equivalent(expect)


def test_whole_space_class():
    geo = GeometryConfig(3)
    expect = smooth_local(tuple(geo.affine_weight(j) for j in geo.indices), geo.arity)
    assert affine_class("Cn", 3).at_origin.equivalent(expect)


def test_cone_additivity():
    for n in (2, 3, 4):
        cn = affine_class("Cn", n).at_origin
        for closed, opened in (("CQ", "CCQ"), ("CX", "CCX")):
            a = affine_class(closed, n).at_origin
            b = affine_class(opened, n).at_origin
            assert (a + b).equivalent(cn)


def test_cone_bases():
    assert affine_class("CCQ", 0).at_origin.num.is_zero
    assert affine_class("CCQ", 1).at_origin.equivalent(hfactor_minus_one_expr(ch(1)))
    assert affine_class("CQ", 0).at_origin.equivalent(RatExpr.one(1))
    assert affine_class("CQ", 1).at_origin.equivalent(
        affine_class("Cn", 1).at_origin - hfactor_minus_one_expr(ch(1))
    )


def test_affine_guards():
    with pytest.raises(ValueError):
        affine_class("CCX", 1)  # needs at least one hyperbolic pair
    with pytest.raises(ValueError):
        affine_class("banana", 4)


# -- cone pushforward --------------------------------------------------------


def _zero_projective(n: int):
    from eck.hirzebruch import LocalClass

    geo = GeometryConfig(n)
    return LocalClass(
        geometry=geo,
        space="zero",
        n=n,
        values={i: RatExpr.zero(geo.arity) for i in geo.indices},
        recipes={i: () for i in geo.indices},
    )


def test_pushforward_of_zero():
    assert cone_pushforward(_zero_projective(3)).num.is_zero


def test_pushforward_quadric_complement_n2():
    got = cone_pushforward(projective_class("Qc", 2))
    assert got.equivalent(affine_class("CCQ", 2).at_origin)


def test_pushforward_pair_complement_n4():
    got = cone_pushforward(projective_class("Xc", 4))
    assert got.equivalent(affine_class("CCX", 4).at_origin)


def test_pushforward_linearity():
    from eck.hirzebruch import LocalClass

    n = 3
    geo = GeometryConfig(n)
    a = projective_class("Qc", n)
    b = projective_class("Xc", n)
    combined = LocalClass(
        geometry=geo,
        space="sum",
        n=n,
        values={i: a.values[i] + b.values[i] for i in geo.indices},
        recipes={i: () for i in geo.indices},
    )
    lhs = cone_pushforward(combined)
    rhs = cone_pushforward(a) + cone_pushforward(b)
    assert lhs.equivalent(rhs)
