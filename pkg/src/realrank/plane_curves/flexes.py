"""Real inflection points and odd-order tangent lines.

The system {f = 0, H = 0} is solved after a seeded random change of
coordinates: the resultant in one affine coordinate gives the x-values,
and the first nonvanishing subresultant gives y as a rational function of
x.  Every subsequent test (singularity, tangency order) is an exact
vanishing test of a polynomial in x at an isolated real root.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .. import kernels as K
from ..errors import DegenerateInputError, SingularCurveError
from ..interval import FixedInterval, Interval
from ..multivariate import MPoly
from ..poly_core import (
    BinaryForm,
    RealRoot,
    UniPoly,
    binary_resultant,
    gcd,
    interpolate,
    real_roots_of_ints,
    sturm_count,
)
from .curve import PlaneCurve, cross, hessian


@dataclass(frozen=True)
class FlexRecord:
    point: Tuple[Interval, Interval, Interval]
    tangent: Tuple[Interval, Interval, Interval]
    tangency_order: int
    parity: str  # "odd" or "even"
    exact_point: Optional[Tuple[Fraction, Fraction, Fraction]] = None

    def tangent_approx(self) -> Tuple[Fraction, Fraction, Fraction]:
        """Midpoints of the tangent coefficients, scaled to unit max-norm."""
        mids = [c.mid() for c in self.tangent]
        m = max(abs(v) for v in mids)
        return tuple(v / m for v in mids)

    def point_approx(self) -> Tuple[float, float, float]:
        return tuple(float(c.mid()) for c in self.point)


@dataclass(frozen=True)
class FlexReport:
    flexes: Tuple[FlexRecord, ...]
    singular_points: Tuple[Tuple[Interval, Interval, Interval], ...]
    transform: Tuple[Tuple[int, int, int], ...]
    resultant_degree: int = 0


# ---------------------------------------------------------------------------
# subresultants by evaluation and interpolation


def _y_coeffs(f: MPoly) -> List[UniPoly]:
    """f(X, Y) (nvars 2) as a list of UniPolys in X, ascending in Y."""
    dy = f.degree_in(1)
    out = [dict() for _ in range(dy + 1)]
    for (ex, ey), c in f.terms.items():
        out[ey][ex] = c
    res = []
    for d in out:
        n = max(d) + 1 if d else 0
        res.append(UniPoly(tuple(d.get(i, 0) for i in range(n))))
    return res


def _subres_matrix(a: List[int], b: List[int], j: int, i: int) -> List[List[int]]:
    """M_{j,i} for descending coefficient lists a (deg m) and b (deg n)."""
    m, n = len(a) - 1, len(b) - 1
    width = m + n - j
    rows = []
    for k in range(n - j):
        row = [0] * width
        for t, c in enumerate(a):
            row[k + t] = c
        rows.append(row)
    for k in range(m - j):
        row = [0] * width
        for t, c in enumerate(b):
            row[k + t] = c
        rows.append(row)
    lead = m + n - 2 * j - 1
    col_i = width - 1 - i  # column of Y^i
    return [r[:lead] + [r[col_i]] for r in rows]


def _degree_bound(fa: List[UniPoly], fb: List[UniPoly], j: int, i: int) -> int:
    """Weighted bound on the X-degree of det M_{j,i}.

    The entry in a row holding Y^s * a and the column of Y^p has X-degree
    at most (wa + s) - p, where wa bounds deg_X(a_q) + q.
    """
    m, n = len(fa) - 1, len(fb) - 1
    wa = max((c.degree + k for k, c in enumerate(fa) if not c.is_zero()), default=0)
    wb = max((c.degree + k for k, c in enumerate(fb) if not c.is_zero()), default=0)
    width = m + n - j
    rows = sum(wa + s for s in range(n - j)) + sum(wb + s for s in range(m - j))
    cols = [width - 1 - c for c in range(m + n - 2 * j - 1)] + [i]
    return max(rows - sum(cols), 0)


def subresultant_coefficients(fa: List[UniPoly], fb: List[UniPoly], j: int) -> List[UniPoly]:
    """Coefficients (ascending in Y) of the j-th subresultant, as polynomials in X."""
    m, n = len(fa) - 1, len(fb) - 1
    bound = max(_degree_bound(fa, fb, j, i) for i in range(j + 1))
    nodes = []
    k = 0
    while len(nodes) < bound + 1:
        nodes.append(k)
        k = -k if k > 0 else -k + 1
    ia = [[_int_eval(c, x) for c in reversed(fa)] for x in nodes]
    ib = [[_int_eval(c, x) for c in reversed(fb)] for x in nodes]
    out = []
    for i in range(j + 1):
        vals = [K.bareiss_det(_subres_matrix(a, b, j, i)) for a, b in zip(ia, ib)]
        out.append(interpolate(nodes, vals))
    return out


def _int_eval(p: UniPoly, x: int) -> int:
    v = p(Fraction(x))
    if v.denominator != 1:
        raise ValueError("expected integer coefficients")
    return v.numerator


# ---------------------------------------------------------------------------
# decisions at a real root: intervals first, exact gcd tests as fallback

_WIDTHS = (Fraction(1, 10 ** 50), Fraction(1, 10 ** 150), Fraction(1, 10 ** 450))


class _RootField:
    """Tests at one real root r of a squarefree integer polynomial Q."""

    def __init__(self, root: RealRoot):
        self.root = root
        self.q = UniPoly.from_ints(list(root.factor))

    def vanishes(self, p: UniPoly) -> bool:
        """Exact test p(r) == 0 through gcd(p, Q)."""
        if p.is_zero():
            return True
        if self.root.is_exact:
            return p(self.root.lo) == 0
        g = gcd(p, self.q)
        if g.degree < 1:
            return False
        return sturm_count(g, (self.root.lo, self.root.hi)) >= 1

    def box(self, width: Fraction) -> FixedInterval:
        r = self.root.refine(width)
        bits = 4 * (width.denominator.bit_length() + 8)
        return FixedInterval.of(Interval(r.lo, r.hi), bits)


def horner(coeffs, x: FixedInterval) -> FixedInterval:
    r = FixedInterval.of(0, x.bits)
    for c in reversed(coeffs):
        r = r * x + c
    return r


def _eval_mpoly_interval(f: MPoly, box: Sequence[FixedInterval]) -> FixedInterval:
    bits = box[0].bits
    total = FixedInterval.of(0, bits)
    for e, c in f.terms.items():
        term = FixedInterval.of(c, bits)
        for i, k in enumerate(e):
            if k:
                term = term * box[i] ** k
        total = total + term
    return total


def _eval_mpoly_exact(f: MPoly, pt: Sequence[UniPoly]) -> UniPoly:
    total = UniPoly()
    cache = {}
    for e, c in f.terms.items():
        term = UniPoly((c,))
        for i, k in enumerate(e):
            if k:
                if (i, k) not in cache:
                    cache[(i, k)] = pt[i] ** k
                term = term * cache[(i, k)]
        total = total + term
    return total


def _restriction(f: MPoly, pt: Sequence, w: Sequence, zero, one) -> list:
    """Coefficients in t of f(pt + t w) for ring elements (intervals or UniPolys)."""
    d = f.total_degree()
    powers = []
    for i in range(3):
        row = [[one]]
        for e in range(1, d + 1):
            prev = row[-1]
            nxt = [zero] * (e + 1)
            for k, c in enumerate(prev):
                nxt[k] = nxt[k] + c * pt[i]
                nxt[k + 1] = nxt[k + 1] + c * w[i]
            row.append(nxt)
        powers.append(row)
    out = [zero] * (d + 1)
    for e, c in f.terms.items():
        acc = [one * c]
        for i in range(3):
            pw = powers[i][e[i]]
            nxt = [zero] * (len(acc) + len(pw) - 1)
            for a, ca in enumerate(acc):
                for b, cb in enumerate(pw):
                    nxt[a + b] = nxt[a + b] + ca * cb
            acc = nxt
        for k, v in enumerate(acc):
            out[k] = out[k] + v
    return out


# ---------------------------------------------------------------------------
# coordinate change


def _transform(f: MPoly, m: Sequence[Sequence[int]]) -> MPoly:
    x = MPoly.gens(3)
    images = [sum((x[j] * m[i][j] for j in range(3)), MPoly(3)) for i in range(3)]
    return f.substitute(images)


def _random_matrix(rng: random.Random) -> Tuple[Tuple[int, int, int], ...]:
    while True:
        m = tuple(tuple(rng.randint(-6, 6) for _ in range(3)) for _ in range(3))
        det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        if det != 0:
            return m


def _line_at_infinity_form(f: MPoly) -> BinaryForm:
    d = f.total_degree()
    coeffs = [Fraction(0)] * (d + 1)
    for e, c in f.terms.items():
        if e[2] == 0:
            coeffs[e[1]] = c  # x^(d-i) y^i with i = exponent of x1
    return BinaryForm(tuple(coeffs))


def _affine(f: MPoly) -> MPoly:
    """f(X, Y, 1) as a polynomial in two variables."""
    terms = {}
    for e, c in f.terms.items():
        key = (e[0], e[1])
        terms[key] = terms.get(key, 0) + c
    return MPoly(2, terms)


class _NonGeneric(Exception):
    pass


def real_flexes(curve: PlaneCurve, seed: int = 0, report: bool = False):
    """Real points of {f = H = 0} with their tangent lines and tangency orders.

    Singular real points are not flexes; they are listed separately in the
    full report (``report=True``) and skipped in the plain list.
    """
    if curve.degree < 3:
        from ..errors import DegreeError
        raise DegreeError("flexes need degree >= 3")
    f = curve.integer_form()
    h = hessian(f)
    if h.is_zero():
        raise DegenerateInputError("the Hessian vanishes identically")
    rng = random.Random(f"flex|{seed}")
    for _ in range(40):
        m = _random_matrix(rng)
        try:
            out = _flexes_in_coordinates(f, h, m)
        except _NonGeneric:
            continue
        return out if report else list(out.flexes)
    raise DegenerateInputError("no generic coordinate system found")


def _flexes_in_coordinates(f: MPoly, h: MPoly, m) -> FlexReport:
    d = f.total_degree()
    fp = _transform(f, m)
    hp = _transform(h, m)
    # leading coefficients in the second variable are nonzero constants
    if fp.evaluate((0, 1, 0)) == 0 or hp.evaluate((0, 1, 0)) == 0:
        raise _NonGeneric
    # no common points on the line x2' = 0
    if binary_resultant(_line_at_infinity_form(fp), _line_at_infinity_form(hp)) == 0:
        raise _NonGeneric
    F, G = _affine(fp), _affine(hp)
    fa, fb = _y_coeffs(F), _y_coeffs(G)
    res = subresultant_coefficients(fa, fb, 0)[0]
    if res.is_zero():
        raise DegenerateInputError("f and its Hessian share a component (positive-dimensional flex locus)")
    sub_cache = {}

    def sub(j):
        if j not in sub_cache:
            sub_cache[j] = subresultant_coefficients(fa, fb, j)
        return sub_cache[j]

    flexes, singular = [], []
    grads = [f.derivative(i) for i in range(3)]
    x = UniPoly((0, 1))
    for root in real_roots_of_ints(res.to_ints()):
        rf = _RootField(root)
        rec = _analyze_root(f, h, grads, m, rf, sub, min(len(fa), len(fb)) - 1, x)
        if rec[0] == "singular":
            singular.append(rec[1])
        else:
            flexes.append(rec[1])
    flexes.sort(key=lambda r: r.point_approx())
    return FlexReport(tuple(flexes), tuple(singular), m, res.degree)


def _nonzero(rf: _RootField, interval_at, exact) -> bool:
    """Decide p(r) != 0: intervals on a refining ladder, then an exact test."""
    for w in _WIDTHS:
        if interval_at(rf.box(w)).sign() != 0:
            return True
    if rf.vanishes(exact()):
        return False
    w = _WIDTHS[-1]
    while True:
        w = w * w
        if interval_at(rf.box(w)).sign() != 0:
            return True


def _normalize_box(box):
    """Scale by a positive rational so the largest midpoint has size about 1."""
    box = tuple(c.to_interval() if isinstance(c, FixedInterval) else c for c in box)
    m = max(abs(c.mid()) for c in box)
    if m == 0:
        return box
    scale = Fraction(1, 1) / m.limit_denominator(10 ** 6) if m > 10 ** -6 else 1 / m
    return tuple(c * scale for c in box)


def _analyze_root(f, h, grads, m, rf: _RootField, sub, jmax, x):
    j = 1
    while True:
        if j > jmax:
            raise _NonGeneric
        s = sub(j)
        sj = s[j]
        if _nonzero(rf, lambda X, p=sj: horner(list(p.coeffs), X), lambda p=sj: p):
            break
        j += 1
    num = -s[j - 1]
    den = s[j] * j
    prime = (x * den, num, den)
    pt = tuple(sum((prime[c] * m[r][c] for c in range(3)), UniPoly()) for r in range(3))

    def pt_box(X):
        return [horner(list(c.coeffs), X) for c in pt]

    def grad_box(X):
        b = pt_box(X)
        return [_eval_mpoly_interval(g, b) for g in grads]

    smooth = False
    for i in range(3):
        if _nonzero(rf, lambda X, i=i: grad_box(X)[i], lambda i=i: _eval_mpoly_exact(grads[i], pt)):
            smooth = True
            break
    width = _WIDTHS[0]
    X = rf.box(width)
    fbox = tuple(pt_box(X))
    box = _normalize_box(fbox)
    if not smooth:
        return ("singular", box)
    # a wrong y-value (two points over one x) shows up as f or H away from zero
    if _eval_mpoly_interval(f, fbox).sign() != 0 or _eval_mpoly_interval(h, fbox).sign() != 0:
        raise _NonGeneric

    def coeff_box(X, k):
        b = pt_box(X)
        g = [_eval_mpoly_interval(gi, b) for gi in grads]
        w = cross(g, b)
        return _restriction(f, b, w, FixedInterval.of(0, X.bits), FixedInterval.of(1, X.bits))[k]

    def coeff_exact(k):
        g = [_eval_mpoly_exact(gi, pt) for gi in grads]
        w = cross(g, pt)
        return _restriction(f, pt, w, UniPoly(), UniPoly((1,)))[k]

    order = None
    for k in range(3, f.total_degree() + 1):
        if _nonzero(rf, lambda X, k=k: coeff_box(X, k), lambda k=k: coeff_exact(k)):
            order = k
            break
    if order is None:
        raise DegenerateInputError("a flex tangent line is a component of the curve")
    if coeff_box(X, 2).sign() != 0:
        raise _NonGeneric
    tangent = _normalize_box(tuple(_eval_mpoly_interval(g, fbox) for g in grads))
    exact = tuple(c.lo for c in box) if rf.root.is_exact else None
    return ("flex", FlexRecord(box, tangent, order, "odd" if order % 2 else "even", exact))


def real_singular_points(curve: PlaneCurve, seed: int = 0):
    return real_flexes(curve, seed=seed, report=True).singular_points


def odd_tangent_set(curve: PlaneCurve, seed: int = 0) -> List[FlexRecord]:
    """Flex records whose tangent meets the curve at odd order (the set H)."""
    rep = real_flexes(curve, seed=seed, report=True)
    if rep.singular_points:
        mids = [float(c.mid()) for c in rep.singular_points[0]]
        big = max(mids, key=abs)
        pt = tuple(round(v / big, 12) + 0.0 for v in mids)
        raise SingularCurveError(f"real singular point near {pt}", pt)
    return [r for r in rep.flexes if r.parity == "odd"]
