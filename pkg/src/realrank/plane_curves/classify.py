"""Real rank of points of P^2 with respect to a plane curve.

A point p off the curve has real rank 2 exactly when some line through p
meets X(R) in two distinct real points, and rank 3 when every line through
p meets X(R) in at most one point.  The lines through p form a pencil; the
number of distinct real intersections is constant on the arcs of the pencil
between consecutive real roots of the discriminant D_p of the restriction.
One exact count per arc therefore decides the rank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .. import kernels as K
from ..multivariate import MPoly
from ..poly_core import as_fraction, gap_samples, integerize, real_roots_of_ints, sylvester_matrix
from .curve import PlaneCurve, cross

RANK1, RANK2, RANK3, INCONCLUSIVE = "rank1", "rank2", "rank3", "inconclusive"
SWEEP_DEPTH = 20


@dataclass(frozen=True)
class PointClass:
    kind: str
    witness_line: Optional[Tuple[int, int, int]] = None
    witness_count: int = 0
    method: str = ""
    directions_checked: int = 0


def chart_form(f: MPoly, origin: Sequence, a_dir: Sequence, b_dir: Sequence) -> Dict[tuple, int]:
    """Integer coefficients of f(z0*origin + z1*a_dir + z2*b_dir), up to a positive scalar."""
    z = MPoly.gens(3)
    images = [z[0] * as_fraction(origin[i]) + z[1] * as_fraction(a_dir[i]) + z[2] * as_fraction(b_dir[i])
              for i in range(3)]
    g = f.substitute(images)
    if g.is_zero():
        raise ValueError("degenerate chart")
    keys = sorted(g.terms)
    return dict(zip(keys, integerize([g.terms[k] for k in keys])))


def _binom_table(n: int) -> List[List[int]]:
    return [[math.comb(i, j) for j in range(i + 1)] for i in range(n + 1)]


class PencilAtPoint:
    """The restriction of the chart form to lines through one chart point.

    With p = O + a A + b B written as (D, na, nb)/D, the line through p in
    direction u A + v B is mu * p' + u A + v B, and its intersections with
    the curve are the roots in mu of sum_m c_m(u, v) mu^m.
    """

    def __init__(self, fc: Dict[tuple, int], degree: int, a: Fraction, b: Fraction):
        a, b = as_fraction(a), as_fraction(b)
        den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self.D, self.na, self.nb = den, a.numerator * (den // a.denominator), b.numerator * (den // b.denominator)
        self.d = degree
        d = degree
        binom = _binom_table(d)
        pD = [self.D ** i for i in range(d + 1)]
        pa = [self.na ** i for i in range(d + 1)]
        pb = [self.nb ** i for i in range(d + 1)]
        c = [[0] * (d - m + 1) for m in range(d + 1)]
        for (i, j, k), coef in fc.items():
            base = coef * pD[i]
            for al in range(j + 1):
                ta = base * binom[j][al] * pa[al]
                for be in range(k + 1):
                    c[i + al + be][k - be] += ta * binom[k][be] * pb[be]
        self.c = c

    @property
    def value_at_point(self) -> int:
        return self.c[self.d][0]

    def restriction(self, u: int, v: int) -> List[int]:
        d = self.d
        out = []
        for m in range(d + 1):
            row = self.c[m]
            n = d - m
            s = 0
            for e, coef in enumerate(row):
                if coef:
                    s += coef * u ** (n - e) * v ** e
            out.append(s)
        return out

    def count(self, u: int, v: int) -> int:
        """Distinct real intersections of the line in direction (u, v) with the curve."""
        g = K.strip(self.restriction(u, v))
        if not g:
            raise ValueError("the line lies on the curve")
        return K.count_real_roots(g)

    def discriminant(self) -> List[int]:
        """D_p(s) for directions (s, 1), as integers (zero list when identically zero)."""
        d = self.d
        n = d * (d - 1)
        nodes = list(range(n + 1))
        vals = []
        for s in nodes:
            g = self.restriction(s, 1)
            gd = [m * g[m] for m in range(1, d + 1)]
            vals.append(K.bareiss_det(sylvester_matrix(g[::-1], gd[::-1])))
        if not any(vals):
            return []
        return K.strip(K.primitive(_interpolate_consecutive(vals)))

    def line_through(self, origin, a_dir, b_dir, u: int, v: int) -> Tuple[int, int, int]:
        p = [self.D * as_fraction(origin[i]) + self.na * as_fraction(a_dir[i]) + self.nb * as_fraction(b_dir[i])
             for i in range(3)]
        w = [u * as_fraction(a_dir[i]) + v * as_fraction(b_dir[i]) for i in range(3)]
        ln = integerize(list(cross(p, w)))
        g = 0
        for x in ln:
            g = math.gcd(g, x)
        return tuple(x // g for x in ln) if g else tuple(ln)


def _interpolate_consecutive(vals: List[int]) -> List[int]:
    """Integer polynomial (ascending) through (i, vals[i]), i = 0..n.

    Forward differences of an integer polynomial at consecutive integers are
    divisible by j!, so the falling-factorial coefficients are integers.
    """
    diffs = list(vals)
    newton = [diffs[0]]
    for j in range(1, len(vals)):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        newton.append(diffs[0] // math.factorial(j))
    out = [newton[-1]]
    for j in range(len(newton) - 2, -1, -1):
        # out <- out * (x - j) + newton[j]
        nxt = [0] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] += c
            nxt[i] -= j * c
        nxt[0] += newton[j]
        out = nxt
    return out


@lru_cache(maxsize=64)
def sweep_directions(budget: int) -> Tuple[Tuple[int, int], ...]:
    """budget rational directions spread over a half turn."""
    out = []
    for k in range(budget):
        th = math.pi * k / budget
        cu = Fraction(math.cos(th)).limit_denominator(4096)
        sv = Fraction(math.sin(th)).limit_denominator(4096)
        den = cu.denominator * sv.denominator // math.gcd(cu.denominator, sv.denominator)
        out.append((int(cu * den), int(sv * den)))
    return tuple(out)


def classify_in_chart(fc: Dict[tuple, int], degree: int, a, b, theta_budget: int = 16,
                      method: str = "exact", chart=None) -> PointClass:
    """Classify the chart point origin + a*A + b*B."""
    pen = PencilAtPoint(fc, degree, a, b)
    if pen.value_at_point == 0:
        return PointClass(RANK1, method="on curve")

    def witness(u, v, n, how, checked):
        line = pen.line_through(*chart, u, v) if chart is not None else None
        return PointClass(RANK2, line, n, how, checked)

    checked = 0
    dirs = sweep_directions(theta_budget)
    for u, v in dirs:
        checked += 1
        n = pen.count(u, v)
        if n >= 2:
            return witness(u, v, n, "sweep", checked)
    if method == "sweep":
        return _certified_sweep(pen, dirs, degree, checked, witness)
    disc = pen.discriminant()
    if not disc:
        return PointClass(INCONCLUSIVE, method="discriminant vanishes", directions_checked=checked)
    roots = real_roots_of_ints(disc) if len(disc) > 1 else []
    for s in gap_samples(roots):
        u, v = s.numerator, s.denominator
        checked += 1
        n = pen.count(u, v)
        if n >= 2:
            return witness(u, v, n, "arc", checked)
    if degree % 2 == 0:
        # an even-degree curve with real points always admits a secant line
        return PointClass(INCONCLUSIVE, method="no secant through the point", directions_checked=checked)
    return PointClass(RANK3, method="arcs", directions_checked=checked)


def _arc_polynomial(disc: List[int], n: int, w1, w2) -> list:
    """Coefficients in lam of D_h(w1 + lam (w2 - w1)), D_h the degree-n homogenization of disc."""
    du, dv = w2[0] - w1[0], w2[1] - w1[1]
    out = [0] * (n + 1)
    upow = [[1]]
    for _ in range(n):
        prev = upow[-1]
        nxt = [0] * (len(prev) + 1)
        for i, c in enumerate(prev):
            nxt[i] += c * w1[0]
            nxt[i + 1] += c * du
        upow.append(nxt)
    vpow = [[1]]
    for _ in range(n):
        prev = vpow[-1]
        nxt = [0] * (len(prev) + 1)
        for i, c in enumerate(prev):
            nxt[i] += c * w1[1]
            nxt[i + 1] += c * dv
        vpow.append(nxt)
    for k, c in enumerate(disc):
        if not c:
            continue
        a, b = upow[k], vpow[n - k]
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += c * x * y
    return out


def _unit(w) -> Tuple[Fraction, Fraction]:
    m = max(abs(w[0]), abs(w[1]))
    return Fraction(w[0], m), Fraction(w[1], m)


def _sign_on(poly: List[int], lo: Fraction, hi: Fraction) -> int:
    """Sign of poly on [lo, hi] when a Taylor bound certifies it, else 0."""
    mid, rad = (lo + hi) / 2, (hi - lo) / 2
    # Taylor coefficients at mid by repeated synthetic division
    c = [Fraction(x) for x in poly]
    taylor = []
    while c:
        acc = Fraction(0)
        q = []
        for x in reversed(c):
            acc = acc * mid + x
            q.append(acc)
        taylor.append(q[-1])
        c = list(reversed(q[:-1]))
    head = taylor[0]
    tail = sum((abs(t) * rad ** i for i, t in enumerate(taylor) if i), Fraction(0))
    if abs(head) > tail:
        return 1 if head > 0 else -1
    return 0


def _certified_sweep(pen: PencilAtPoint, dirs, degree: int, checked: int, witness) -> PointClass:
    """Bisect each arc between neighbouring directions until the discriminant keeps one sign.

    On an arc where D_p has no zero the number of real intersections is
    constant, so the endpoint counts (all <= 1 by now) cover it.
    """
    disc = pen.discriminant()
    if not disc:
        return PointClass(INCONCLUSIVE, method="discriminant vanishes", directions_checked=checked)
    if len(dirs) < 2:
        dirs = sweep_directions(2)  # one arc of a half turn would pass through the zero vector
    n = degree * (degree - 1)
    nd = len(dirs)
    ends = list(dirs[1:]) + [(-dirs[0][0], -dirs[0][1])]
    unstable = 0
    for k in range(nd):
        w1, w2 = _unit(dirs[k]), _unit(ends[k])
        poly = _arc_polynomial(disc, n, w1, w2)
        work = [(Fraction(0), Fraction(1), 0)]
        while work:
            lo, hi, depth = work.pop()
            if _sign_on(poly, lo, hi) != 0:
                continue
            mid = (lo + hi) / 2
            u = w1[0] + mid * (w2[0] - w1[0])
            v = w1[1] + mid * (w2[1] - w1[1])
            den = u.denominator * v.denominator // math.gcd(u.denominator, v.denominator)
            ui, vi = int(u * den), int(v * den)
            checked += 1
            cnt = pen.count(ui, vi)
            if cnt >= 2:
                return witness(ui, vi, cnt, "sweep", checked)
            if depth >= SWEEP_DEPTH:
                unstable += 1
                continue
            work.append((lo, mid, depth + 1))
            work.append((mid, hi, depth + 1))
    if unstable or degree % 2 == 0:
        return PointClass(INCONCLUSIVE, method=f"sweep ({unstable} unstable arcs)", directions_checked=checked)
    return PointClass(RANK3, method="sweep", directions_checked=checked)


def _chart_for_point(p: Sequence[Fraction]):
    k = max(range(3), key=lambda i: abs(p[i]))
    if p[k] == 0:
        raise ValueError("the zero vector is not a point")
    others = [i for i in range(3) if i != k]
    e = [[1 if i == j else 0 for i in range(3)] for j in range(3)]
    return (e[k], e[others[0]], e[others[1]]), p[others[0]] / p[k], p[others[1]] / p[k]


def classify_point(curve: PlaneCurve, p: Sequence, theta_budget: int = 16, method: str = "exact") -> PointClass:
    """rank1 / rank2 (with a witness line) / rank3 / inconclusive for a rational point."""
    pt = [as_fraction(v) for v in p]
    chart, a, b = _chart_for_point(pt)
    fc = chart_form(curve.f, *chart)
    return classify_in_chart(fc, curve.degree, a, b, theta_budget, method, chart)


def line_real_intersections(curve: PlaneCurve, p: Sequence, direction: Sequence) -> int:
    """Distinct real points of X on the line through p spanned with a second point.

    ``direction`` is either a projective point q (three coordinates) or an
    angle-free pair (u, v) interpreted in the chart centered at p.
    """
    pt = [as_fraction(v) for v in p]
    if len(direction) == 3:
        q = [as_fraction(v) for v in direction]
        if not any(cross(pt, q)):
            raise ValueError("the two points coincide")
        return _count_on_line(curve.f, pt, q)
    chart, a, b = _chart_for_point(pt)
    u, v = (as_fraction(x) for x in direction)
    if u == 0 and v == 0:
        raise ValueError("zero direction")
    q = [u * chart[1][i] + v * chart[2][i] for i in range(3)]
    return _count_on_line(curve.f, pt, q)


def _count_on_line(f: MPoly, p, q) -> int:
    """Distinct real roots of the binary form f(s p + t q) on P^1."""
    from .curve import restrict_to_line
    g = restrict_to_line(f, p, q)  # f(p + t q), t = infinity is the point q
    if all(c == 0 for c in g):
        raise ValueError("the line lies on the curve")
    ints = K.strip(integerize(g))
    n = K.count_real_roots(ints) if len(ints) > 1 else 0
    if len(ints) - 1 < len(g) - 1:
        n += 1  # q itself is on the curve
    return n
