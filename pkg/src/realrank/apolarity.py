"""Catalecticants, apolar ideals, Sylvester's complex rank and decomposition recovery.

Dual forms (elements of f^perp) are stored as BinaryForm objects read in
dual variables (u, v): coefficient j multiplies u^(k-j) v^j, and u, v act
as d/dx, d/dy.  A root (alpha:beta) of a dual form corresponds to the
linear form alpha*x + beta*y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import DegreeError, NotApolarError, ZeroPolynomialError
from .interval import Interval, solve_interval_system
from .linalg import in_span, nullspace, rank, rref, solve
from .poly_core import (
    BinaryForm,
    RealRoot,
    as_fraction,
    form_is_squarefree,
    integerize,
    isolate_real_roots,
)


# ---------------------------------------------------------------------------
# weighted coordinates and catalecticants


@dataclass(frozen=True)
class WeightedCoords:
    d: int
    a: tuple

    def to_form(self) -> BinaryForm:
        return from_weighted(self)


def to_weighted(f: BinaryForm) -> WeightedCoords:
    d = f.degree
    return WeightedCoords(d, tuple(c / comb(d, i) for i, c in enumerate(f.coeffs)))


def from_weighted(w: WeightedCoords) -> BinaryForm:
    d = w.d
    return BinaryForm(tuple(as_fraction(a) * comb(d, i) for i, a in enumerate(w.a)))


@dataclass(frozen=True)
class Catalecticant:
    k: int
    entries: tuple  # (d-k+1) x (k+1), entry (i, j) = a_{i+j}

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    def rank(self) -> int:
        return rank(self.entries)

    def kernel(self) -> List[List[Fraction]]:
        return nullspace(self.entries, self.k + 1)


def catalecticant_from_weighted(a: Sequence, k: int) -> Catalecticant:
    d = len(a) - 1
    if not 0 <= k <= d:
        raise DegreeError(f"catalecticant index {k} outside [0, {d}]")
    return Catalecticant(k, tuple(tuple(a[i + j] for j in range(k + 1)) for i in range(d - k + 1)))


def catalecticant(f: BinaryForm, k: int) -> Catalecticant:
    return catalecticant_from_weighted(to_weighted(f).a, k)


def contract(g: BinaryForm, f: BinaryForm) -> BinaryForm:
    """Apply g(d/dx, d/dy) to f."""
    k, d = g.degree, f.degree
    if k > d:
        return BinaryForm((0,))
    out = [Fraction(0)] * (d - k + 1)
    for j, w in enumerate(g.coeffs):
        if w == 0:
            continue
        # d/dx^(k-j) d/dy^j of x^(d-i) y^i
        for i, c in enumerate(f.coeffs):
            if c == 0 or d - i < k - j or i < j:
                continue
            mult = (factorial(d - i) // factorial(d - i - (k - j))) * (factorial(i) // factorial(i - j))
            out[i - j] += w * c * mult
    return BinaryForm(tuple(out))


def _vector_to_dual(v: Sequence) -> BinaryForm:
    return BinaryForm(tuple(integerize([as_fraction(x) for x in v])))


def _monomial_basis(k: int) -> List[BinaryForm]:
    return [BinaryForm.monomial(k, j) for j in range(k + 1)]


def apolar_component(f: BinaryForm, k: int) -> List[BinaryForm]:
    """Basis of (f^perp)_k as dual forms; for k > d the whole space."""
    if f.is_zero():
        raise ZeroPolynomialError("apolar component of the zero form")
    if k < 0:
        raise DegreeError("negative degree")
    if k > f.degree:
        return _monomial_basis(k)
    return [_vector_to_dual(v) for v in catalecticant(f, k).kernel()]


# ---------------------------------------------------------------------------
# apolar ideal


@dataclass(frozen=True)
class ApolarIdeal:
    form: BinaryForm
    r1: BinaryForm
    r2: BinaryForm
    kernel_bases: Dict[int, tuple] = field(compare=False)

    @property
    def degrees(self) -> Tuple[int, int]:
        return self.r1.degree, self.r2.degree

    @property
    def s(self) -> int:
        return self.r1.degree

    @property
    def t(self) -> int:
        return self.r2.degree

    def component(self, k: int) -> tuple:
        if k in self.kernel_bases:
            return self.kernel_bases[k]
        return tuple(apolar_component(self.form, k))

    def dimension(self, k: int) -> int:
        s, t = self.degrees
        if k < s:
            return 0
        if k < t:
            return k - s + 1
        return 2 * k - self.form.degree


def apolar_ideal(f: BinaryForm) -> ApolarIdeal:
    if f.is_zero():
        raise ZeroPolynomialError("apolar ideal of the zero form")
    d = f.degree
    a = to_weighted(f).a
    bases: Dict[int, tuple] = {}
    for k in range(d + 1):
        bases[k] = tuple(_vector_to_dual(v) for v in catalecticant_from_weighted(a, k).kernel())
    s = next((k for k in range(d + 1) if bases[k]), d + 1)
    t = d + 2 - s
    comp_s = bases[s] if s <= d else tuple(_monomial_basis(s))
    r1 = comp_s[0]
    if t == s:
        r2 = comp_s[1]
    else:
        comp_t = bases[t] if t <= d else tuple(_monomial_basis(t))
        multiples = [list((r1 * BinaryForm.monomial(t - s, j)).coeffs) for j in range(t - s + 1)]
        r2 = next(g for g in comp_t if not in_span(multiples, g.coeffs))
    return ApolarIdeal(f, r1, r2, bases)


def apolar_generators(f: BinaryForm) -> Tuple[BinaryForm, BinaryForm]:
    ideal = apolar_ideal(f)
    return ideal.r1, ideal.r2


# ---------------------------------------------------------------------------
# complex rank (Sylvester)


@dataclass(frozen=True)
class ComplexRank:
    rank: int
    witness: Optional[BinaryForm]
    generator_degrees: Tuple[int, int]


def _squarefree_member(basis: Sequence[BinaryForm], tries: int = 64) -> Optional[BinaryForm]:
    for g in basis:
        if form_is_squarefree(g):
            return g
    if len(basis) < 2:
        return None
    for n in range(1, tries + 1):
        g = basis[0]
        for i, b in enumerate(basis[1:], start=1):
            g = g + b * Fraction(n ** i)
        if form_is_squarefree(g):
            return g
    return None


def complex_rank(f: BinaryForm, ideal: Optional[ApolarIdeal] = None) -> ComplexRank:
    """Sylvester's algorithm: s if r1 is squarefree (or the pencil in degree s), else d+2-s."""
    if f.is_zero():
        raise ZeroPolynomialError("complex rank of the zero form")
    ideal = ideal or apolar_ideal(f)
    s, t = ideal.degrees
    if s == t:
        return ComplexRank(s, _squarefree_member(ideal.component(s)), (s, t))
    if form_is_squarefree(ideal.r1):
        return ComplexRank(s, ideal.r1, (s, t))
    basis = [ideal.r2] + [ideal.r1 * BinaryForm.monomial(t - s, j) for j in range(t - s + 1)]
    return ComplexRank(t, _squarefree_member(basis), (s, t))


# ---------------------------------------------------------------------------
# decompositions


@dataclass(frozen=True)
class Decomposition:
    """f = sum c_i * (u_i x + v_i y)^d with exact rationals."""

    terms: tuple  # ((c, (u, v)), ...)
    degree: int

    @property
    def length(self) -> int:
        return len(self.terms)

    def reconstruct(self) -> BinaryForm:
        d = self.degree
        total = BinaryForm.zero(d)
        for c, (u, v) in self.terms:
            total = total + BinaryForm.linear(u, v) ** d * c
        return total

    def verify(self, f: BinaryForm) -> bool:
        return self.reconstruct() == f


@dataclass(frozen=True)
class IntervalDecomposition:
    """Decomposition with irrational linear forms, certified by intervals.

    Linear forms are t_i x + y for the real roots t_i of ``q`` (plus x if
    q vanishes at (1:0)); coefficients are enclosed by ``coefficients``.
    """

    q: BinaryForm
    roots: tuple  # RealRoot objects for affine roots
    has_infinity: bool
    coefficients: tuple  # Interval per term (affine roots first, then x)
    residual_width: Fraction
    degree: int

    @property
    def length(self) -> int:
        return len(self.roots) + (1 if self.has_infinity else 0)

    def approximate_terms(self) -> list:
        out = [(float(c.mid()), (float(r.midpoint()), 1.0))
               for c, r in zip(self.coefficients, self.roots)]
        if self.has_infinity:
            out.append((float(self.coefficients[-1].mid()), (1.0, 0.0)))
        return out


def _weighted_row_values(lin: Tuple, d: int) -> list:
    u, v = lin
    return [u ** (d - j) * v ** j for j in range(d + 1)]


def _normalize_term(c: Fraction, lin: Tuple, d: int):
    """Rescale (c, l) so that l has coprime integer coordinates, first nonzero positive."""
    u, v = lin
    num = integerize([u, v])
    if (num[0] or num[1]) < 0:
        num = [-num[0], -num[1]]
    lam = Fraction(num[0], 1) / u if u != 0 else Fraction(num[1], 1) / v
    return c / lam ** d, (Fraction(num[0]), Fraction(num[1]))


def recover_decomposition(f: BinaryForm, q: BinaryForm,
                          residual_tol: Fraction = Fraction(1, 10 ** 40)
                          ) -> Union[Decomposition, IntervalDecomposition]:
    """Coefficients c_i with f = sum c_i l_i^d where l_i run over the roots of q."""
    d = f.degree
    if f.is_zero() or q.is_zero():
        raise ZeroPolynomialError("zero input")
    if not contract(q, f).is_zero():
        raise NotApolarError("q does not annihilate f")
    if not form_is_squarefree(q):
        raise NotApolarError("q is not squarefree")
    iso = isolate_real_roots(q)
    if iso.real_count_with_multiplicity != q.degree:
        raise NotApolarError("q has non-real roots")
    a = to_weighted(f).a
    if all(r.is_exact for r in iso.roots):
        lins = [(r.lo, Fraction(1)) for r in iso.roots]
        if iso.infinity_multiplicity:
            lins.append((Fraction(1), Fraction(0)))
        cols = [_weighted_row_values(l, d) for l in lins]
        system = [[cols[i][j] for i in range(len(lins))] for j in range(d + 1)]
        c = solve(system, a)
        if c is None:
            raise NotApolarError("linear system inconsistent")
        dec = Decomposition(tuple(_normalize_term(ci, l, d) for ci, l in zip(c, lins) if ci != 0), d)
        if not dec.verify(f):
            raise NotApolarError("reconstruction failed")
        return dec
    return _interval_decomposition(f, q, iso, a, residual_tol)


def _interval_decomposition(f, q, iso, a, tol):
    d = f.degree
    has_inf = bool(iso.infinity_multiplicity)
    width = Fraction(1, 10 ** 60)
    for _ in range(6):
        roots = [r.refine(width) for r in iso.roots]
        lins = [(Interval(r.lo, r.hi), Interval.point(1)) for r in roots]
        if has_inf:
            lins.append((Interval.point(1), Interval.point(0)))
        n = len(lins)
        # choose n independent rows using midpoint values
        mid_cols = []
        for i, r in enumerate(roots):
            mid_cols.append(_weighted_row_values((r.midpoint(), Fraction(1)), d))
        if has_inf:
            mid_cols.append(_weighted_row_values((Fraction(1), Fraction(0)), d))
        mid_rows = [[mid_cols[i][j] for i in range(n)] for j in range(d + 1)]
        _, piv_rows = rref([list(col) for col in zip(*mid_rows)])
        rows = piv_rows[:n]
        if len(rows) < n:
            raise NotApolarError("degenerate root configuration")
        ival_rows = []
        for j in range(d + 1):
            ival_rows.append([lins[i][0] ** (d - j) * lins[i][1] ** j for i in range(n)])
        try:
            c = solve_interval_system([ival_rows[j] for j in rows], [Interval.point(a[j]) for j in rows])
        except ZeroDivisionError:
            width /= 10 ** 20
            continue
        worst = Fraction(0)
        ok = True
        for j in range(d + 1):
            res = sum((ci * e for ci, e in zip(c, ival_rows[j])), Interval.point(0)) - a[j]
            if not res.contains_zero():
                ok = False
            worst = max(worst, res.width)
        if not ok:
            raise NotApolarError("residual interval excludes zero")
        if worst <= tol:
            return IntervalDecomposition(q, tuple(roots), has_inf, tuple(c), worst, d)
        width /= 10 ** 20
    raise NotApolarError("could not certify the residual at the requested width")
