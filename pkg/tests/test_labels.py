import numpy as np
import pytest

from ssd.design_core import classify_columns, is_oa, realize
from ssd.gf import default_field, enumerate_points
from ssd.poly_labels import (LinearForm, QuadraticLabel, eval_label,
                             eval_label_column, forms_dependent, h_set,
                             label_str, parse_label, q1, q1_star, qh,
                             qh_substitution, qh_star, unit_form)


def strs(field, labels):
    return [label_str(field, lab) for lab in labels]


def test_h_set_3_2(gf3):
    assert strs(gf3, h_set(gf3, 2)) == ["X1", "X2", "X1+X2", "2*X1+X2"]


@pytest.mark.parametrize("s,n", [(3, 3), (4, 1), (4, 2), (5, 2), (5, 3)])
def test_h_set_count(s, n):
    f = default_field(s)
    assert len(h_set(f, n)) == (s**n - 1) // (s - 1)


def test_h_set_last_nonzero_is_one(gf5):
    for form in h_set(gf5, 3):
        assert form.coeffs[form.last_nonzero()] == 1


def test_q1_star_3_2(gf3):
    assert strs(gf3, q1_star(gf3, 2)) == [
        "X1^2+X2", "X1^2+X1+X2", "X1^2+2*X1+X2"]


@pytest.mark.parametrize("s,n", [(3, 2), (3, 3), (5, 2)])
def test_q1_star_count(s, n):
    f = default_field(s)
    assert len(q1_star(f, n)) == (s**n - 1) // (s - 1) - 1


def test_q1_star_needs_two_variables(gf3):
    with pytest.raises(ValueError):
        q1_star(gf3, 1)


def test_qh_substitution_rules(gf3):
    # identity for X1
    x1 = unit_form(2, 0)
    assert qh_substitution(gf3, x1, 2) == [x1, unit_form(2, 1)]
    # h touching the last variable rotates the earlier coordinates in
    h = LinearForm((1, 1))
    assert qh_substitution(gf3, h, 2) == [h, unit_form(2, 0)]
    h2 = LinearForm((0, 1, 0))  # X2 with k = 2
    assert qh_substitution(gf3, h2, 3) == [h2, unit_form(3, 0), unit_form(3, 2)]


def test_qh_substitution_rejects_noncanonical(gf3):
    with pytest.raises(ValueError, match="canonical"):
        qh_substitution(gf3, LinearForm((2, 0)), 2)
    with pytest.raises(ValueError, match="canonical"):
        qh_substitution(gf3, LinearForm((0, 0)), 2)


def test_qh_families_3_2(gf3):
    # the four family listings over GF(3), two variables
    fam = {label_str(gf3, h): strs(gf3, qh(gf3, h, 2)) for h in h_set(gf3, 2)}
    assert fam["X2"] == ["X2", "X2^2+X1", "X2^2+X1+X2", "X2^2+X1+2*X2"]
    assert fam["X1+X2"] == ["X1+X2", "(X1+X2)^2+X1", "(X1+X2)^2+2*X1+X2",
                            "(X1+X2)^2+2*X2"]
    assert fam["2*X1+X2"] == ["2*X1+X2", "(2*X1+X2)^2+X1", "(2*X1+X2)^2+X2",
                              "(2*X1+X2)^2+2*X1+2*X2"]


def test_qh_with_x1_equals_q1(gf3):
    assert qh(gf3, unit_form(3, 0), 3) == q1(gf3, 3)


def test_eval_label(gf3, gf4):
    lab = parse_label(gf3, "X1^2+X2")
    assert eval_label(gf3, lab, (1, 1)) == 2
    lab2 = parse_label(gf3, "X1^2+2*X1+X2")
    assert eval_label(gf3, lab2, (2, 0)) == 2
    lab4 = parse_label(gf4, "X1^2+X2")
    assert eval_label(gf4, lab4, (2, 1)) == 2  # 2*2 = 3, 3 + 1 = 2


def test_eval_label_column_matches_scalar(gf4):
    pts = enumerate_points(gf4, 2)
    for lab in q1(gf4, 2):
        col = eval_label_column(gf4, lab, pts)
        assert col.tolist() == [eval_label(gf4, lab, p) for p in pts]


def test_label_round_trip(gf3, gf5):
    for f, n in ((gf3, 2), (gf3, 3), (gf5, 2)):
        labels = list(h_set(f, n)) + list(q1_star(f, n))
        for h in h_set(f, n):
            labels += qh_star(f, h, n)
        for lab in labels:
            text = label_str(f, lab)
            back = parse_label(f, text, n)
            assert label_str(f, back) == text
            pts = enumerate_points(f, n)
            assert (eval_label_column(f, back, pts)
                    == eval_label_column(f, lab, pts)).all()


def test_parse_rejects_garbage(gf3):
    for bad in ("", "X1^2+X1^2", "5*X1", "Y1", "2*(X1)^2"):
        with pytest.raises(ValueError):
            parse_label(gf3, bad, 2)


def test_dependent_forms_fully_aliased(gf5):
    pts = enumerate_points(gf5, 2)
    f1 = LinearForm((1, 2))
    f2 = LinearForm((2, 4))
    assert forms_dependent(gf5, f2, f1)
    c1 = eval_label_column(gf5, f1, pts)
    c2 = eval_label_column(gf5, f2, pts)
    assert classify_columns(c1, c2, 5, 5).kind == "fully_aliased"
    f3 = LinearForm((1, 0))
    assert not forms_dependent(gf5, f1, f3)
    c3 = eval_label_column(gf5, f3, pts)
    assert classify_columns(c1, c3, 5, 5).kind == "orthogonal"


@pytest.mark.parametrize("s,n", [(3, 2), (3, 3), (4, 2), (5, 2)])
def test_h_set_realizes_saturated_oa(s, n):
    f = default_field(s)
    D = realize(f, n, h_set(f, n))
    assert is_oa(D, 2)
    assert D.m * (s - 1) == D.N - 1  # saturated


@pytest.mark.parametrize("s,n", [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (5, 3)])
def test_q1_realizes_saturated_oa(s, n):
    f = default_field(s)
    D = realize(f, n, q1(f, n))
    assert is_oa(D, 2)


def test_q1_isomorphic_to_h_for_n2(gf3, gf4, gf5):
    # explicit row bijection (x1, x2) -> (y1, y2) = (x1, x1^2 + x2) maps the
    # quadratic family onto the linear one: a*Y1 + Y2 = X1^2 + a*X1 + X2
    for f in (gf3, gf4, gf5):
        s = f.order
        pts = enumerate_points(f, 2)
        y_index = np.array([p[0] * s + f.add(f.mul(p[0], p[0]), p[1])
                            for p in pts])
        for a in f.elements():
            quad = QuadraticLabel(unit_form(2, 0), a, unit_form(2, 1))
            qcol = eval_label_column(f, quad, pts)
            lin = LinearForm((a, 1))
            lcol = eval_label_column(f, lin, pts)
            assert (qcol == lcol[y_index]).all()
