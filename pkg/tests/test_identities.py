"""Formula verification reports and fixed-point integration to genus
polynomials, with frozen small-case values."""

import pytest

from eck.algebra import RatExpr
from eck.hirzebruch import LocalClass, affine_class, projective_class
from eck.identities import (
    FORMULAS,
    ResidualTDependence,
    chi_y,
    integrate_projective,
    verify,
)
from eck.torus import GeometryConfig


def test_formula_registry():
    assert FORMULAS == (
        "proj",
        "con",
        "dope",
        "expl",
        "remark_k",
        "closed_form",
        "milnor_div_y",
        "blowup_consistency",
    )


# -- verification reports ----------------------------------------------------


def test_projective_report_shape():
    r = verify("proj", 4)
    assert r.formula == "proj" and r.n == 4 and r.k is None
    assert [label for label, _ in r.per_point] == ["p_-2", "p_-1", "p_1", "p_2"]
    assert all(flag for _, flag in r.per_point)
    assert r.verified


def test_cone_formula_small():
    r = verify("con", 2)
    assert r.verified and r.per_point and all(flag for _, flag in r.per_point)


def test_truncated_sum_formula_with_k():
    r = verify("remark_k", 6, k=1)
    assert r.k == 1 and r.verified


def test_top_k_coincides_with_pair_cone_complement():
    r = verify("remark_k", 6, k=2)
    assert r.verified
    labels = [label for label, _ in r.per_point]
    assert "Y* = CCX (k=m-1)" in labels
    assert dict(r.per_point)["Y* = CCX (k=m-1)"]
    assert r.note


def test_smallest_case_carries_note():
    r = verify("proj", 2)
    assert r.verified and r.note


def test_all_formulas_n4():
    for formula in FORMULAS:
        if formula == "remark_k":
            r = verify(formula, 4, k=0)
        else:
            r = verify(formula, 4)
        assert r.verified, formula
        assert r.timing_ms >= 0


def test_argument_guards():
    with pytest.raises(ValueError):
        verify("banana", 4)
    with pytest.raises(ValueError):
        verify("proj", 1)
    with pytest.raises(ValueError):
        verify("remark_k", 6)  # k required
    with pytest.raises(ValueError):
        verify("remark_k", 6, k=3)  # 0 <= k <= m-1 = 2
    with pytest.raises(ValueError):
        verify("con", 4, k=1)  # k only meaningful for the truncated sum


# -- integration -------------------------------------------------------------


def test_projective_space_genus_polynomials():
    for n in (1, 2, 3, 4, 5):
        got = integrate_projective(projective_class("P", n))
        assert got.y_coefficients() == {p: (-1) ** p for p in range(n)}
        assert chi_y("P", n).y_coefficients() == got.y_coefficients()


def test_two_point_quadric():
    assert chi_y("Q", 2).y_coefficients() == {0: 2}


def test_quadric_surface():
    assert chi_y("Q", 4).y_coefficients() == {0: 1, 1: -2, 2: 1}


def test_even_quadric_middle_class():
    # dimension 6 quadric: extra middle cohomology doubles the cubic term
    assert chi_y("Q", 8).y_coefficients() == {
        0: 1,
        1: -1,
        2: 1,
        3: -2,
        4: 1,
        5: -1,
        6: 1,
    }


def test_odd_quadric():
    assert chi_y("Q", 5).y_coefficients() == {0: 1, 1: -1, 2: 1, 3: -1}


def test_open_complement_genus():
    # chi_y(Qc_4) = chi_y(P^3) - chi_y(Q_4); top term reaches degree n-1
    assert chi_y("Qc", 4).y_coefficients() == {1: 1, 3: -1}


def test_genus_additivity_all_n():
    for n in range(2, 9):
        p = chi_y("P", n).y_coefficients()
        for closed, opened in (("Q", "Qc"), ("X", "Xc")):
            a = chi_y(closed, n).y_coefficients()
            b = chi_y(opened, n).y_coefficients()
            total: dict[int, object] = {}
            for src in (a, b):
                for k, v in src.items():
                    total[k] = total.get(k, 0) + v
            assert {k: v for k, v in total.items() if v} == p


def test_closed_subvariety_degree_bound():
    # closed subvarieties of P^{n-1} have genus degree <= dim = n-2
    for n in range(2, 9):
        for kind in ("Q", "X"):
            coeffs = chi_y(kind, n).y_coefficients()
            assert max(coeffs) <= n - 2
        assert max(chi_y("P", n).y_coefficients()) == n - 1


def test_integration_must_clear_denominators():
    n = 3
    geo = GeometryConfig(n)
    base = projective_class("P", n)
    broken = LocalClass(
        geometry=geo,
        space="broken",
        n=n,
        values={
            i: (RatExpr.zero(geo.arity) if i == 0 else base.values[i])
            for i in geo.indices
        },
        recipes={i: () for i in geo.indices},
    )
    with pytest.raises(ResidualTDependence):
        integrate_projective(broken)


def test_chi_guards():
    with pytest.raises(ValueError):
        chi_y("CCQ", 4)  # open cones have no finite integral here
    with pytest.raises(ValueError):
        chi_y("P", 0)
