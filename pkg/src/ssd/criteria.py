"""Aliasing criteria: power moments, exact overall/projected A2, chi-square,
f and d^2 aggregates, generalized wordlength patterns, and E(s^2).

Exact rational arithmetic is the source of truth everywhere a bound or a
catalog value is compared: projected A2 of a balanced pair (c_i, c_j) is

    A2(c_i, c_j) = chi2(c_i, c_j) / N = (s_i s_j sum_ab n_ab^2 - N^2) / N^2,

an integer ratio, and the overall A2 is both the closed form in the second
power moment K2 (equal levels) and the sum of all projected values.  The
character route recomputes projected A2 through canonical additive
characters, A2(x, y) = N^-2 sum_{u1,u2 != 0} |sum_i chi(u1 x_i + u2 y_i)|^2,
and is used as a floating cross-check, never as the authority.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .design_core import (Design, cell_table, coincidences, pair_a2_from_sumsq,
                          pair_sumsq_matrix)
from .gf import Field, default_field

GWLP_DEFAULT_JMAX = 3
GWLP_DEFAULT_BUDGET = 2_000_000


def _require_balanced(D: Design) -> None:
    if not D.is_balanced:
        raise ValueError("requires a balanced design")


def power_moment(D: Design, t: int) -> Fraction:
    """t-th power moment of the row coincidence counts, exact."""
    if t < 1:
        raise ValueError("the moment order must be positive")
    delta = coincidences(D)
    iu = np.triu_indices(D.N, 1)
    counts = Counter(delta[iu].tolist())
    total = sum(c * v**t for v, c in counts.items())
    return Fraction(total, D.N * (D.N - 1) // 2)


def projected_a2(D: Design, i: int, j: int) -> Fraction:
    """Exact projected A2 of a column pair, by cell counting."""
    tab = cell_table(D, i, j).astype(np.int64)
    return pair_a2_from_sumsq(int((tab * tab).sum()), D.N,
                              D.levels[i], D.levels[j])


def projected_a2_pairs(D: Design, P: np.ndarray | None = None):
    """Iterate (i, j, exact projected A2) over all unordered pairs."""
    if P is None:
        P = pair_sumsq_matrix(D)
    N = D.N
    for i in range(D.m):
        for j in range(i + 1, D.m):
            yield i, j, pair_a2_from_sumsq(int(P[i, j]), N,
                                           D.levels[i], D.levels[j])


def projected_a2_histogram(D: Design, P: np.ndarray | None = None) -> Counter:
    """Histogram of projected A2 values over all C(m, 2) pairs (zeros included)."""
    hist: Counter = Counter()
    for _, _, v in projected_a2_pairs(D, P):
        hist[v] += 1
    return hist


def a2_overall(D: Design) -> Fraction:
    """Exact overall A2.

    With equal levels this is the closed form
    [(N-1) s^2 K2 + m^2 s^2 - N m (m + s - 1)] / (2N); with mixed levels it is
    the sum of all pairwise projected values.  Both routes agree exactly on
    balanced designs.
    """
    _require_balanced(D)
    if len(set(D.levels)) == 1:
        s, m, N = D.levels[0], D.m, D.N
        k2 = power_moment(D, 2)
        return ((N - 1) * s * s * k2 + m * m * s * s
                - N * m * (m + s - 1)) / Fraction(2 * N)
    return a2_overall_from_pairs(D)


def a2_overall_from_pairs(D: Design, P: np.ndarray | None = None) -> Fraction:
    """Overall A2 as the sum of all pairwise projected values."""
    _require_balanced(D)
    if P is None:
        P = pair_sumsq_matrix(D)
    N2 = D.N * D.N
    num = 0
    den = N2
    for i in range(D.m):
        si = D.levels[i]
        for j in range(i + 1, D.m):
            num += si * D.levels[j] * int(P[i, j]) - N2
    return Fraction(num, den)


def pair_dependency_stats(D: Design, i: int, j: int) -> tuple[Fraction, Fraction, Fraction]:
    """(chi2, f, d2) of one pair, exact.

    chi2 = sum (n_ab - e)^2 / e and d2 = sum (n_ab - e)^2 with e = N/(s_i s_j);
    f = sum |n_ab - e|.  For equal levels d2 = (N/s^2) chi2.
    """
    tab = cell_table(D, i, j).astype(np.int64)
    N = D.N
    si, sj = D.levels[i], D.levels[j]
    ssq = int((tab * tab).sum())
    chi2 = Fraction(si * sj * ssq - N * N, N)
    e = Fraction(N, si * sj)
    f = sum((abs(Fraction(int(v)) - e) for v in tab.ravel()), Fraction(0))
    d2 = Fraction(si * sj * ssq - N * N, si * sj)
    return chi2, f, d2


def e_s2(D: Design) -> Fraction:
    """E(s^2) of a two-level design: N^2 A2 / C(m, 2)."""
    if any(s != 2 for s in D.levels):
        raise ValueError("E(s^2) is defined for two-level designs only")
    if D.m < 2:
        raise ValueError("need at least two columns")
    return Fraction(D.N * D.N) * a2_overall(D) / math.comb(D.m, 2)


# -- character route ------------------------------------------------------------

def _field_for_level(s: int, field_map=None) -> Field:
    if field_map and s in field_map:
        return field_map[s]
    try:
        return default_field(s)
    except ValueError as exc:
        raise ValueError(f"no field realization for {s} levels: {exc}") from exc


def projected_a2_char(D: Design, i: int, j: int, field_map=None) -> float:
    """Projected A2 via canonical additive characters (floating cross-check)."""
    si, sj = D.levels[i], D.levels[j]
    fi = _field_for_level(si, field_map)
    fj = _field_for_level(sj, field_map)
    x, y = D.matrix[:, i], D.matrix[:, j]
    total = 0.0
    for u1 in fi.units():
        a = fi.char_table[fi.mul_table[u1, x]] if fi.mul_table is not None \
            else np.array([fi.char(fi.mul(u1, int(v))) for v in x])
        for u2 in fj.units():
            b = fj.char_table[fj.mul_table[u2, y]] if fj.mul_table is not None \
                else np.array([fj.char(fj.mul(u2, int(v))) for v in y])
            total += abs((a * b).sum()) ** 2
    return total / (D.N * D.N)


def _char_columns(D: Design, field_map=None) -> tuple[np.ndarray, np.ndarray]:
    """Character contrast columns chi(u * x) for every column and u != 0.

    Returns the (N, sum(s_k - 1)) complex matrix and per-column start offsets.
    """
    blocks = []
    starts = [0]
    for k in range(D.m):
        f = _field_for_level(D.levels[k], field_map)
        x = D.matrix[:, k]
        for u in f.units():
            blocks.append(f.char_table[f.mul_table[u, x]])
        starts.append(starts[-1] + D.levels[k] - 1)
    C = np.stack(blocks, axis=1)
    return C, np.array(starts[:-1])


def char_a2_matrix(D: Design, field_map=None) -> np.ndarray:
    """m x m float matrix of character-route projected A2 values (all pairs)."""
    C, starts = _char_columns(D, field_map)
    T = C.T @ C
    sq = np.abs(T) ** 2
    red = np.add.reduceat(np.add.reduceat(sq, starts, axis=0), starts, axis=1)
    np.fill_diagonal(red, 0.0)
    return red / (D.N * D.N)


def _gwlp_cost(D: Design, jmax: int) -> int:
    # j = 1, 2 run as whole-matrix products and are effectively free; only the
    # per-subset loops of j >= 3 count against the budget.
    mx = max(s - 1 for s in D.levels)
    return sum(math.comb(D.m, j) * mx**j for j in range(3, jmax + 1))


def gwlp(D: Design, jmax: int = GWLP_DEFAULT_JMAX,
         budget: int = GWLP_DEFAULT_BUDGET, field_map=None) -> list[float]:
    """Generalized wordlength pattern prefix [A_1 .. A_jmax] via characters.

    A_j = N^-2 sum over j-subsets and nonzero character indices of
    |column sum of the row-wise contrast products|^2.  Cost grows like
    C(m, j) (s-1)^j; a budget guards the combinatorial blow-up.
    """
    if jmax < 1 or jmax > D.m:
        raise ValueError("jmax must lie in 1..m")
    if _gwlp_cost(D, jmax) > budget:
        raise ValueError(
            f"wordlength computation up to j={jmax} exceeds the budget of "
            f"{budget} terms (raise the budget to force it)")
    C, starts = _char_columns(D, field_map)
    N = D.N
    out = []
    col_slices = [slice(starts[k], starts[k] + D.levels[k] - 1)
                  for k in range(D.m)]
    # j = 1
    out.append(float((np.abs(C.sum(axis=0)) ** 2).sum()) / (N * N))
    if jmax >= 2:
        out.append(float(np.triu(char_a2_matrix(D, field_map), 1).sum()))
    for j in range(3, jmax + 1):
        acc = 0.0
        for combo in itertools.combinations(range(D.m), j):
            V = C[:, col_slices[combo[0]]]
            for k in combo[1:]:
                V = (V[:, :, None] * C[:, None, col_slices[k]]).reshape(N, -1)
            acc += float((np.abs(V.sum(axis=0)) ** 2).sum())
        out.append(acc / (N * N))
    return out


# -- aggregate report ------------------------------------------------------------

def round_half_away(x: Fraction, digits: int = 2) -> float:
    """Round a rational half away from zero at the given decimal precision."""
    q = Fraction(10) ** digits
    scaled = x * q
    sign = -1 if scaled < 0 else 1
    return float(sign * ((abs(scaled) + Fraction(1, 2)).__floor__()) / q)


@dataclass(frozen=True)
class CriteriaReport:
    N: int
    m: int
    levels: tuple[int, ...]
    K1: Fraction
    K2: Fraction
    A2: Fraction
    histogram: dict          # Fraction -> pair count, zeros included
    ave_chi2: Fraction
    max_chi2: Fraction
    ave_f: Fraction
    max_f: Fraction
    E_d2: Fraction
    max_d2: Fraction
    gwlp: tuple[float, ...]
    E_s2: Fraction | None


def aggregate_stats(D: Design, gwlp_jmax: int | None = None,
                    gwlp_budget: int = GWLP_DEFAULT_BUDGET,
                    field_map=None) -> CriteriaReport:
    """Evaluate every pairwise criterion of a design, exactly.

    gwlp_jmax=None picks the largest prefix (up to 3) affordable within the
    budget; pass an explicit value to force deeper terms.
    """
    _require_balanced(D)
    if D.m < 2:
        raise ValueError("need at least two columns")
    P = pair_sumsq_matrix(D)
    hist = projected_a2_histogram(D, P)
    a2 = a2_overall(D)
    if a2 != sum((v * c for v, c in hist.items()), Fraction(0)):
        raise AssertionError("overall A2 disagrees with the pairwise sum")
    npairs = math.comb(D.m, 2)
    chi2_sum = f_sum = d2_sum = Fraction(0)
    chi2_max = f_max = d2_max = Fraction(0)
    for i in range(D.m):
        for j in range(i + 1, D.m):
            chi2, f, d2 = pair_dependency_stats(D, i, j)
            chi2_sum += chi2
            f_sum += f
            d2_sum += d2
            chi2_max = max(chi2_max, chi2)
            f_max = max(f_max, f)
            d2_max = max(d2_max, d2)
    if gwlp_jmax is None:
        gwlp_jmax = GWLP_DEFAULT_JMAX
        while gwlp_jmax > 2 and _gwlp_cost(D, gwlp_jmax) > gwlp_budget:
            gwlp_jmax -= 1
    pattern = tuple(gwlp(D, gwlp_jmax, max(gwlp_budget,
                                           _gwlp_cost(D, gwlp_jmax)),
                         field_map))
    es2 = e_s2(D) if all(s == 2 for s in D.levels) else None
    return CriteriaReport(
        N=D.N, m=D.m, levels=D.levels,
        K1=power_moment(D, 1), K2=power_moment(D, 2),
        A2=a2, histogram=dict(sorted(hist.items())),
        ave_chi2=chi2_sum / npairs, max_chi2=chi2_max,
        ave_f=f_sum / npairs, max_f=f_max,
        E_d2=d2_sum / npairs, max_d2=d2_max,
        gwlp=pattern, E_s2=es2)
