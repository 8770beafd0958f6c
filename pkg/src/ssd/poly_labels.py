"""Column labels: nonzero linear forms, the canonical set H, and quadratic labels.

A design column is named by a polynomial in the point coordinates X1..Xn:
either a linear form c1*X1 + ... + cn*Xn, or a quadratic label
l(X)^2 + a*l(X) + g(X) built on a linear form l.  The canonical set H
consists of the nonzero linear forms whose *last* nonzero coefficient is 1;
evaluated over F_s^n it is a saturated strength-2 orthogonal array.  For each
h in H, a companion saturated array Q_h is obtained by the change of basis
Y1 = h, Y2..Yk = X1..X(k-1), Y(k+1).. = X(k+1).. (k the position of the last
nonzero coefficient of h) and attaching quadratic labels Y1^2 + a*Y1 + g with
g ranging over H(Y2..Yn), rewritten eagerly in X coordinates.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .gf import Field


@dataclass(frozen=True)
class LinearForm:
    """c1*X1 + ... + cn*Xn, coefficients as field symbols."""

    coeffs: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def last_nonzero(self) -> int:
        """0-based index of the last nonzero coefficient, or -1."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1


@dataclass(frozen=True)
class QuadraticLabel:
    """l(X)^2 + a*l(X) + g(X)."""

    ell: LinearForm
    a: int
    g: LinearForm

    @property
    def n(self) -> int:
        return self.ell.n


Label = LinearForm | QuadraticLabel


def unit_form(n: int, i: int) -> LinearForm:
    """The coordinate form X{i+1}."""
    c = [0] * n
    c[i] = 1
    return LinearForm(tuple(c))


def scale_form(field: Field, c: int, f: LinearForm) -> LinearForm:
    return LinearForm(tuple(field.mul(c, x) for x in f.coeffs))


def add_forms(field: Field, f1: LinearForm, f2: LinearForm) -> LinearForm:
    return LinearForm(tuple(field.add(a, b) for a, b in zip(f1.coeffs, f2.coeffs)))


def forms_dependent(field: Field, f1: LinearForm, f2: LinearForm) -> bool:
    """True when f1 = c*f2 for some nonzero c (both nonzero)."""
    if f1.is_zero or f2.is_zero:
        return False
    i = f2.last_nonzero()
    if f1.coeffs[i] == 0:
        return False
    c = field.div(f1.coeffs[i], f2.coeffs[i])
    return scale_form(field, c, f2) == f1


def h_set(field: Field, n: int) -> list[LinearForm]:
    """All nonzero linear forms in X1..Xn whose last nonzero coefficient is 1.

    There are (s^n - 1)/(s - 1) of them; the order is lexicographic on the
    reversed coefficient vector (c_n, ..., c_1), which is deterministic and
    puts X1 first.
    """
    if n < 1:
        raise ValueError("need at least one variable")
    s = field.order
    out = []
    for rev in itertools.product(range(s), repeat=n):
        nz = next((c for c in rev if c), None)
        if nz == 1:
            out.append(LinearForm(tuple(reversed(rev))))
    return out


def l_set(field: Field, n: int) -> list[LinearForm]:
    """All nonzero linear forms in X1..Xn (every nonzero scalar multiple)."""
    s = field.order
    return [LinearForm(tuple(reversed(rev)))
            for rev in itertools.product(range(s), repeat=n)
            if any(rev)]


def _embedded_h_tail(field: Field, n: int) -> list[LinearForm]:
    """H(X2..Xn) embedded into n variables with zero X1 coefficient."""
    return [LinearForm((0,) + g.coeffs) for g in h_set(field, n - 1)]


def q1_star(field: Field, n: int) -> list[QuadraticLabel]:
    """Quadratic labels X1^2 + a*X1 + h for a in F_s, h in H(X2..Xn).

    (s^n - 1)/(s - 1) - 1 labels, ordered by a ascending then h in canonical
    order.
    """
    if n < 2:
        raise ValueError("quadratic label sets need at least two variables")
    x1 = unit_form(n, 0)
    tails = _embedded_h_tail(field, n)
    return [QuadraticLabel(x1, a, g) for a in field.elements() for g in tails]


def q1(field: Field, n: int) -> list[Label]:
    return [unit_form(n, 0), *q1_star(field, n)]


def qh_substitution(field: Field, h: LinearForm, n: int) -> list[LinearForm]:
    """Change of basis attached to h in H: Y1 = h, then shifted coordinates.

    Returns [Y1..Yn] as linear forms in X; the map is invertible because h's
    last nonzero coefficient (position k, value 1) is covered only by Y1.
    """
    if h.n != n:
        raise ValueError("form has the wrong number of variables")
    k = h.last_nonzero()
    if k < 0 or h.coeffs[k] != 1:
        raise ValueError(
            "not a canonical form: the last nonzero coefficient must be 1")
    ys = [h]
    ys += [unit_form(n, i) for i in range(k)]          # Y2..Y(k+1) = X1..Xk
    ys += [unit_form(n, i) for i in range(k + 1, n)]   # the rest unchanged
    return ys


def qh_star(field: Field, h: LinearForm, n: int) -> list[QuadraticLabel]:
    """Quadratic labels of the Q_h family, rewritten in X coordinates."""
    if n < 2:
        raise ValueError("quadratic label sets need at least two variables")
    ys = qh_substitution(field, h, n)
    tails = []
    for gy in h_set(field, n - 1):
        acc = LinearForm((0,) * n)
        for j, d in enumerate(gy.coeffs):
            if d:
                acc = add_forms(field, acc, scale_form(field, d, ys[j + 1]))
        tails.append(acc)
    return [QuadraticLabel(h, a, g) for a in field.elements() for g in tails]


def qh(field: Field, h: LinearForm, n: int) -> list[Label]:
    return [h, *qh_star(field, h, n)]


# -- evaluation ---------------------------------------------------------------

def eval_label(field: Field, label: Label, point) -> int:
    """Evaluate a label at a single point of F_s^n."""
    if isinstance(label, LinearForm):
        acc = 0
        for c, x in zip(label.coeffs, point):
            if c:
                acc = field.add(acc, field.mul(c, int(x)))
        return acc
    v = eval_label(field, label.ell, point)
    out = field.add(field.mul(v, v), field.mul(label.a, v))
    return field.add(out, eval_label(field, label.g, point))


def eval_label_column(field: Field, label: Label, points: np.ndarray) -> np.ndarray:
    """Evaluate a label at every row of an (N, n) point array."""
    if field.add_table is None:
        return np.array([eval_label(field, label, p) for p in points],
                        dtype=np.int64)
    add, mul = field.add_table, field.mul_table

    def lin(form: LinearForm) -> np.ndarray:
        acc = np.zeros(len(points), dtype=np.int64)
        for i, c in enumerate(form.coeffs):
            if c:
                acc = add[acc, mul[c, points[:, i]]]
        return acc

    if isinstance(label, LinearForm):
        return lin(label)
    v = lin(label.ell)
    out = add[mul[v, v], mul[label.a, v]]
    return add[out, lin(label.g)]


# -- printing / parsing -------------------------------------------------------

def _lin_str(form: LinearForm) -> str:
    terms = []
    for i, c in enumerate(form.coeffs):
        if c == 0:
            continue
        terms.append(f"X{i + 1}" if c == 1 else f"{c}*X{i + 1}")
    return "+".join(terms) if terms else "0"


def label_str(field: Field, label: Label) -> str:
    """Canonical printed form, e.g. "X1^2+2*X1+X2" or "(X1+X2)^2+2*X2".

    Quadratic labels are normalised by merging a*l + g into one linear part,
    so two labels with the same column have the same string.
    """
    if isinstance(label, LinearForm):
        return _lin_str(label)
    merged = add_forms(field, scale_form(field, label.a, label.ell), label.g)
    k = label.ell.last_nonzero()
    single = sum(1 for c in label.ell.coeffs if c) == 1 and label.ell.coeffs[k] == 1
    base = f"X{k + 1}^2" if single else f"({_lin_str(label.ell)})^2"
    if merged.is_zero:
        return base
    return f"{base}+{_lin_str(merged)}"


_TERM_RE = re.compile(r"^(?:(\d+)\*)?(?:X(\d+)|\(([^()]*)\))(\^2)?$")


def _split_terms(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_label(field: Field, text: str, n: int | None = None) -> Label:
    """Parse the grammar produced by label_str; round-trips by printed form."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty label")
    if n is None:
        idx = [int(v) for v in re.findall(r"X(\d+)", text)]
        if not idx:
            raise ValueError(f"no variables in label {text!r}")
        n = max(idx)

    def parse_linear(sub: str) -> LinearForm:
        acc = LinearForm((0,) * n)
        for term in _split_terms(sub):
            m = _TERM_RE.match(term)
            if not m or m.group(4):
                raise ValueError(f"bad linear term {term!r}")
            coef = int(m.group(1)) if m.group(1) else 1
            if coef >= field.order:
                raise ValueError(f"coefficient {coef} out of range")
            if m.group(2):
                base = unit_form(n, int(m.group(2)) - 1)
            else:
                base = parse_linear(m.group(3))
            acc = add_forms(field, acc, scale_form(field, coef, base))
        return acc

    quad_base = None
    linear_terms = []
    for term in _split_terms(text):
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"bad term {term!r} in label {text!r}")
        if m.group(4):  # squared term
            if m.group(1):
                raise ValueError("squared term cannot carry a coefficient")
            if quad_base is not None:
                raise ValueError("more than one squared term")
            if m.group(2):
                quad_base = unit_form(n, int(m.group(2)) - 1)
            else:
                quad_base = parse_linear(m.group(3))
        else:
            linear_terms.append(term)
    merged = parse_linear("+".join(linear_terms)) if linear_terms else LinearForm((0,) * n)
    if quad_base is None:
        if merged.is_zero:
            raise ValueError(f"zero label {text!r}")
        return merged
    return QuadraticLabel(quad_base, 0, merged)
