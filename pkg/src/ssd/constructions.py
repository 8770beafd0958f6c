"""Turnkey builders for the supersaturated design families, plus the shipped
catalog of three-, four- and five-level designs with their expected exact
aliasing histograms, and the verifier that recomputes every row.

Builder summary (s = level count, runs over F_s^n):

  thm4   H + quadratic companions of X1; N = s^n, m = 2(s^n-1)/(s-1) - 1,
         overall A2 = s^n - s, column X1 orthogonal to everything else.
  thm6   column juxtaposition of k full companion arrays Q_h;
         m = k(s^n-1)/(s-1), overall A2 = C(k,2)(s^n - 1).
  thm7   (s odd) juxtaposition of the quadratic-only parts Q_h*;
         m = k(s^n-s)/(s-1), overall A2 = C(k,2)(s^n - 2s + 1), no pair
         fully aliased.
  thm8   row juxtaposition of k level-classes of a branching column of H;
         N = k s^(n-1), m = (s^n-s)/(s-1), A2 = (s^n-s)(s-k)/(2k).
  thm9   same, branching on the quadratic column X1^2 + X2 of Q1.

For s = 4 the thm6 juxtaposition contains C(k,2) fully aliased pairs; the
catalog ships those designs de-aliased (drop one column of each pair).
"""

from __future__ import annotations

import importlib.resources
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import criteria
from .bounds import certify, lb_theorem1
from .design_core import (Design, branch_fraction, column_juxtapose,
                          design_from_text, fully_aliased_pairs,
                          pair_a2_from_sumsq, pair_sumsq_matrix, realize,
                          remove_fully_aliased, select_columns)
from .gf import Field, default_field, enumerate_points
from .poly_labels import (LinearForm, QuadraticLabel, eval_label_column,
                          h_set, q1, q1_star, qh, qh_star, unit_form)


def construct_thm4(field: Field, n: int) -> Design:
    """H(X1..Xn) next to the quadratic companions of X1."""
    if n < 2:
        raise ValueError("needs at least two variables")
    labels = h_set(field, n) + q1_star(field, n)
    return realize(field, n, labels)


def _default_hs(field: Field, n: int, k: int) -> list[LinearForm]:
    return h_set(field, n)[:k]


def construct_thm6(field: Field, n: int, k: int, hs=None) -> Design:
    """Column juxtaposition of k companion saturated arrays Q_h."""
    t = (field.order**n - 1) // (field.order - 1)
    if not 1 < k <= t:
        raise ValueError(f"k must lie in 2..{t}")
    hs = list(hs) if hs is not None else _default_hs(field, n, k)
    if len(set(hs)) != len(hs):
        raise ValueError("the chosen forms must be distinct")
    if len(hs) != k:
        raise ValueError(f"expected {k} forms, got {len(hs)}")
    designs = [realize(field, n, qh(field, h, n)) for h in hs]
    return column_juxtapose(*designs)


def construct_thm5(field: Field, n: int, h1: LinearForm, h2: LinearForm) -> Design:
    return construct_thm6(field, n, 2, [h1, h2])


def construct_thm7(field: Field, n: int, k: int, hs=None) -> Design:
    """Juxtaposition of the quadratic-only parts Q_h*; s must be odd."""
    if field.order % 2 == 0:
        raise ValueError("defined for odd level counts only")
    t = (field.order**n - 1) // (field.order - 1)
    if not 1 < k <= t:
        raise ValueError(f"k must lie in 2..{t}")
    hs = list(hs) if hs is not None else _default_hs(field, n, k)
    if len(set(hs)) != len(hs):
        raise ValueError("the chosen forms must be distinct")
    designs = [realize(field, n, qh_star(field, h, n)) for h in hs]
    return column_juxtapose(*designs)


def construct_thm8(field: Field, n: int, k: int, branch_h: LinearForm | None = None,
                   g_levels=None) -> Design:
    """Row juxtaposition of k level-classes of a branching column of H."""
    s = field.order
    if not 1 <= k < s:
        raise ValueError(f"the number of kept level classes must lie in 1..{s - 1}")
    labels = h_set(field, n)
    branch = branch_h if branch_h is not None else labels[0]
    g = list(g_levels) if g_levels is not None else list(range(k))
    if len(g) != k:
        raise ValueError("the kept level set must have exactly k values")
    return branch_fraction(field, n, labels, branch, g)


def construct_thm9(field: Field, n: int, k: int, g_levels=None) -> Design:
    """Like thm8, but branching on the quadratic column X1^2 + X2 of Q1."""
    s = field.order
    if not 1 <= k < s:
        raise ValueError(f"the number of kept level classes must lie in 1..{s - 1}")
    labels = q1(field, n)
    x1 = unit_form(n, 0)
    x2 = unit_form(n, 1)
    branch = QuadraticLabel(x1, 0, x2)
    g = list(g_levels) if g_levels is not None else list(range(k))
    if len(g) != k:
        raise ValueError("the kept level set must have exactly k values")
    return branch_fraction(field, n, labels, branch, g)


def example3_branch_type(branch_label) -> int:
    """Classify a branching column of Q1(X1, X2, X3) into the three 18-run types."""
    if isinstance(branch_label, LinearForm):
        return 1
    g = branch_label.g
    # type 2 when the linear tail is exactly X2, type 3 when it reaches X3
    return 2 if g == LinearForm((0, 1, 0)) else 3


def construct_example3(field: Field, branch_label) -> tuple[Design, int]:
    """Branch Q1(X1, X2, X3) on any of its 13 columns, keeping two classes.

    Returns the 18-run, 12-column design together with its type (1, 2 or 3);
    the three types have aliasing histograms (54,0,12), (36,27,3), (42,18,6)
    over the projected A2 values (0, 1/6, 1/2).  The branching label is
    matched by column value, so any equivalent spelling works.
    """
    if field.order != 3:
        raise ValueError("this family lives over GF(3)")
    labels = q1(field, 3)
    pts = enumerate_points(field, 3)
    want = eval_label_column(field, branch_label, pts)
    canonical = next((lab for lab in labels
                      if np.array_equal(eval_label_column(field, lab, pts),
                                        want)), None)
    if canonical is None:
        raise ValueError("the branching label must be one of the 13 columns")
    design = branch_fraction(field, 3, labels, canonical, (0, 1))
    return design, example3_branch_type(canonical)


def corollary2_check(field: Field) -> tuple[Design, dict]:
    """Full quadratic-only juxtaposition at n = 2 for odd s, with its report.

    The report carries the computed overall A2, the two printed closed forms
    (s+1)s(s-1)^2/2 and C(s+1,2)(s^2-2s+1) (algebraically identical), and the
    per-column dependency degrees: s-1 orthogonal and s^2 partially aliased
    partners at (s-1)^2/s^2.
    """
    s = field.order
    if s % 2 == 0:
        raise ValueError("defined for odd level counts only")
    D = construct_thm7(field, 2, s + 1)
    a2 = criteria.a2_overall(D)
    P = pair_sumsq_matrix(D)
    value = Fraction((s - 1) * (s - 1), s * s)
    degrees_ok = True
    for i in range(D.m):
        orth = partial = 0
        for j in range(D.m):
            if j == i:
                continue
            v = pair_a2_from_sumsq(int(P[i, j]), D.N, s, s)
            if v == 0:
                orth += 1
            elif v == value:
                partial += 1
        if orth != s - 1 or partial != s * s:
            degrees_ok = False
    product_form = Fraction((s + 1) * s * (s - 1) ** 2, 2)
    pair_form = Fraction(math.comb(s + 1, 2) * (s * s - 2 * s + 1))
    return D, {
        "a2": a2,
        "product_form": product_form,
        "pair_form": pair_form,
        "matches_product_form": a2 == product_form,
        "matches_pair_form": a2 == pair_form,
        "per_column_degrees_ok": degrees_ok,
    }


# -- the shipped catalog -----------------------------------------------------------

@dataclass(frozen=True)
class Recipe:
    theorem: str                 # "thm4" | "thm6" | "thm6-dealias" | "thm7" | "thm8" | "thm9"
    s: int
    n: int
    k: int | None = None
    expected_N: int = 0
    expected_m: int = 0
    expected_hist: dict = dc_field(default_factory=dict)  # nonzero A2 -> count

    @property
    def row_id(self) -> str:
        bits = [f"s{self.s}", f"N{self.expected_N}", f"m{self.expected_m}",
                self.theorem]
        if self.k is not None:
            bits.append(f"k{self.k}")
        return "/".join(bits)

    @property
    def expected_a2(self) -> Fraction:
        return sum((v * c for v, c in self.expected_hist.items()), Fraction(0))


def _F(a, b=1) -> Fraction:
    return Fraction(a, b)


CATALOG_SPECS: tuple[Recipe, ...] = (
    # three levels
    Recipe("thm8", 3, 2, 2, 6, 3, {_F(1, 2): 3}),
    Recipe("thm4", 3, 2, None, 9, 7, {_F(2, 3): 9}),
    Recipe("thm7", 3, 2, 4, 9, 12, {_F(4, 9): 54}),
    Recipe("thm6", 3, 2, 4, 9, 16, {_F(4, 9): 54, _F(2, 3): 36}),
    Recipe("thm8", 3, 3, 2, 18, 12, {_F(1, 2): 12}),
    Recipe("thm9", 3, 3, 2, 18, 12, {_F(1, 6): 27, _F(1, 2): 3}),
    Recipe("thm4", 3, 3, None, 27, 25, {_F(2, 3): 36}),
    Recipe("thm6", 3, 3, 2, 27, 26, {_F(2, 9): 81, _F(4, 9): 9, _F(2, 3): 6}),
    Recipe("thm7", 3, 3, 13, 27, 156, {_F(2, 9): 6318, _F(4, 9): 702}),
    Recipe("thm6", 3, 3, 13, 27, 169,
           {_F(2, 9): 6318, _F(4, 9): 702, _F(2, 3): 468}),
    Recipe("thm8", 3, 4, 2, 54, 39, {_F(1, 2): 39}),
    Recipe("thm9", 3, 4, 2, 54, 39, {_F(1, 6): 108, _F(1, 2): 3}),
    # four levels
    Recipe("thm8", 4, 2, 2, 8, 4, {_F(1): 6}),
    Recipe("thm8", 4, 2, 3, 12, 4, {_F(1, 3): 6}),
    Recipe("thm4", 4, 2, None, 16, 9, {_F(1): 12}),
    Recipe("thm6-dealias", 4, 2, 5, 16, 15, {_F(1): 45}),
    Recipe("thm8", 4, 3, 2, 32, 20, {_F(1): 30}),
    Recipe("thm8", 4, 3, 3, 48, 20, {_F(1, 3): 30}),
    Recipe("thm9", 4, 3, 3, 48, 20, {_F(1, 9): 72, _F(1, 3): 6}),
    Recipe("thm4", 4, 3, None, 64, 41, {_F(1): 60}),
    Recipe("thm6-dealias", 4, 3, 21, 64, 231, {_F(1): 3465}),
    # five levels
    Recipe("thm8", 5, 2, 2, 10, 5, {_F(3, 2): 10}),
    Recipe("thm8", 5, 2, 3, 15, 5, {_F(2, 3): 10}),
    Recipe("thm8", 5, 2, 4, 20, 5, {_F(1, 4): 10}),
    Recipe("thm4", 5, 2, None, 25, 11, {_F(4, 5): 25}),
    Recipe("thm7", 5, 2, 6, 25, 30, {_F(16, 25): 375}),
    Recipe("thm6", 5, 2, 6, 25, 36, {_F(16, 25): 375, _F(4, 5): 150}),
    Recipe("thm8", 5, 3, 2, 50, 30, {_F(3, 2): 60}),
    Recipe("thm9", 5, 3, 2, 50, 30, {_F(3, 10): 250, _F(3, 2): 10}),
    Recipe("thm8", 5, 3, 3, 75, 30, {_F(2, 3): 60}),
    Recipe("thm9", 5, 3, 3, 75, 30, {_F(2, 15): 250, _F(2, 3): 10}),
)


def build_recipe(recipe: Recipe, field: Field | None = None) -> Design:
    f = field if field is not None else default_field(recipe.s)
    if recipe.theorem == "thm4":
        return construct_thm4(f, recipe.n)
    if recipe.theorem == "thm6":
        return construct_thm6(f, recipe.n, recipe.k)
    if recipe.theorem == "thm6-dealias":
        return remove_fully_aliased(construct_thm6(f, recipe.n, recipe.k))
    if recipe.theorem == "thm7":
        return construct_thm7(f, recipe.n, recipe.k)
    if recipe.theorem == "thm8":
        return construct_thm8(f, recipe.n, recipe.k)
    if recipe.theorem == "thm9":
        return construct_thm9(f, recipe.n, recipe.k)
    raise ValueError(f"unknown construction {recipe.theorem!r}")


def catalog(field_map=None) -> list[tuple[Recipe, Design]]:
    """Build every catalog design (31 rows across the three level counts)."""
    out = []
    for recipe in CATALOG_SPECS:
        f = field_map.get(recipe.s) if field_map else None
        out.append((recipe, build_recipe(recipe, f)))
    return out


@dataclass(frozen=True)
class RowResult:
    row_id: str
    ok: bool
    message: str


def verify_design(recipe: Recipe, D: Design) -> RowResult:
    """Recompute one catalog row and compare every expected invariant exactly."""
    problems = []
    if D.N != recipe.expected_N or D.m != recipe.expected_m:
        problems.append(f"shape {D.N}x{D.m} != "
                        f"{recipe.expected_N}x{recipe.expected_m}")
    else:
        hist = criteria.projected_a2_histogram(D)
        nonzero = {v: c for v, c in hist.items() if v != 0}
        if nonzero != recipe.expected_hist:
            problems.append(f"histogram mismatch: {_fmt_hist(nonzero)} != "
                            f"{_fmt_hist(recipe.expected_hist)}")
        a2 = criteria.a2_overall(D)
        if a2 != recipe.expected_a2:
            problems.append(f"A2 {a2} != {recipe.expected_a2}")
        if fully_aliased_pairs(D):
            problems.append("contains fully aliased pairs")
        cert = certify(D)
        if not cert.achieved_theorem1:
            problems.append(
                f"bound not achieved: A2 {cert.a2} vs {cert.theorem1}")
        if cert.coincidence_spread > 1:
            problems.append(
                f"coincidence spread {cert.coincidence_spread} > 1")
    if problems:
        return RowResult(recipe.row_id, False, "; ".join(problems))
    return RowResult(recipe.row_id, True,
                     f"A2 = {recipe.expected_a2}, "
                     f"{_fmt_hist(recipe.expected_hist)}")


def _fmt_hist(hist: dict) -> str:
    if not hist:
        return "{}"
    parts = [f"{v}: {c}" for v, c in sorted(hist.items())]
    return "{" + ", ".join(parts) + "}"


def catalog_verify(field_map=None, rows=None) -> list[RowResult]:
    """Verify every catalog row; returns one result per row."""
    out = []
    for recipe, design in rows if rows is not None else catalog(field_map):
        out.append(verify_design(recipe, design))
    return out


# -- bundled reference tables -------------------------------------------------------

APPENDIX_FILES = {
    6: "appendix_table6.ssd",
    7: "appendix_table7.ssd",
    8: "appendix_table8.ssd",
}

# expected invariants of the bundled files: (A2, full histogram incl. zero,
# 0-based columns to drop for the quadratic-only subdesign, its A2, its hist)
APPENDIX_EXPECT = {
    6: (_F(48), {_F(0): 30, _F(4, 9): 54, _F(2, 3): 36},
        (0, 4, 8, 12), _F(24), {_F(0): 12, _F(4, 9): 54}),
    7: (_F(45), {_F(0): 60, _F(1): 45}, None, None, None),
    8: (_F(360), {_F(0): 105, _F(16, 25): 375, _F(4, 5): 150},
        (0, 6, 12, 18, 24, 30), _F(240), {_F(0): 60, _F(16, 25): 375}),
}


def load_appendix(which: int) -> Design:
    """Load one of the bundled reference designs (9-, 16- or 25-run)."""
    name = APPENDIX_FILES[which]
    text = importlib.resources.files("ssd").joinpath("data", name).read_text()
    return design_from_text(text)


def verify_appendix(which: int) -> RowResult:
    """Evaluate a bundled file and compare with its recorded invariants."""
    a2_exp, hist_exp, drop, sub_a2, sub_hist = APPENDIX_EXPECT[which]
    D = load_appendix(which)
    problems = []
    hist = dict(criteria.projected_a2_histogram(D))
    if criteria.a2_overall(D) != a2_exp:
        problems.append(f"A2 {criteria.a2_overall(D)} != {a2_exp}")
    if hist != hist_exp:
        problems.append(f"histogram mismatch: {_fmt_hist(hist)}")
    if drop is not None:
        sub = select_columns(D, [i for i in range(D.m) if i not in drop])
        if criteria.a2_overall(sub) != sub_a2:
            problems.append(f"subdesign A2 {criteria.a2_overall(sub)} != {sub_a2}")
        if dict(criteria.projected_a2_histogram(sub)) != sub_hist:
            problems.append("subdesign histogram mismatch")
    row_id = f"bundled/{APPENDIX_FILES[which]}"
    if problems:
        return RowResult(row_id, False, "; ".join(problems))
    return RowResult(row_id, True, f"A2 = {a2_exp}, {_fmt_hist(hist_exp)}")


def dealias_check(field: Field, n: int, k: int) -> dict:
    """The four-level de-aliasing bookkeeping: pair count before, size after."""
    before = construct_thm6(field, n, k)
    pairs = fully_aliased_pairs(before)
    after = remove_fully_aliased(before)
    a2 = criteria.a2_overall(after)
    bound = lb_theorem1(after.N, after.m, field.order)
    return {
        "aliased_pairs": len(pairs),
        "m_after": after.m,
        "a2_after": a2,
        "bound": bound,
        "achieves_bound": a2 == bound,
        "design": after,
    }
