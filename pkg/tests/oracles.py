"""Independent sympy oracles for the cross-checks in the acceptance suite.

Nothing here imports the package's algebra; forms are plain coefficient
tuples in the convention coeffs[i] <-> x^(d-i) y^i.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import sympy as sp

x, y, u, v, t = sp.symbols("x y u v t")

GRID_POINTS = 10 ** 4


def _form(coeffs: Sequence) -> sp.Expr:
    d = len(coeffs) - 1
    return sum(sp.Rational(str(c)) * x ** (d - i) * y ** i for i, c in enumerate(coeffs))


def apolar_kernel(coeffs: Sequence, k: int) -> list:
    """Basis of degree-k dual forms g with g(d/dx, d/dy) f = 0, as coefficient lists."""
    f = _form(coeffs)
    d = len(coeffs) - 1
    cols = []
    for j in range(k + 1):
        h = sp.expand(sp.diff(f, x, k - j, y, j)) if k else f
        cols.append([h.coeff(x, d - k - i).coeff(y, i) for i in range(d - k + 1)])
    m = sp.Matrix(d - k + 1, k + 1, lambda r, c: cols[c][r])
    return [list(vec) for vec in m.nullspace()]


def real_rooted_squarefree(g: Sequence, k: int) -> bool:
    """Does the degree-k binary form g have k distinct real roots in P^1?"""
    p = sp.Poly(sum(sp.nsimplify(c, rational=True) * u ** (k - j) for j, c in enumerate(g)), u)
    if p.is_zero:
        return False
    # roots at (0:1) in the (u:v) chart come from a drop in degree
    at_infinity = k - p.degree()
    if at_infinity > 1:
        return False
    if p.degree() == 0:
        return at_infinity == k
    if sp.degree(sp.gcd(p, p.diff(u)), u) > 0:
        return False
    return len(sp.real_roots(p)) == p.degree()


def _combine(basis: list, weights: Sequence) -> list:
    ws = [sp.Rational(w.numerator, w.denominator) if isinstance(w, Fraction) else sp.Integer(w) for w in weights]
    return [sum(w * b[i] for w, b in zip(ws, basis)) for i in range(len(basis[0]))]


def _pencil_candidates(basis: list, k: int) -> list:
    """Rational t inside every arc cut out by the real roots of disc(g0 + t g1) and lead(g0 + t g1).

    Having k distinct real roots is constant on each arc, so one sample per arc decides the pencil.
    """
    g = [basis[0][i] + t * basis[1][i] for i in range(k + 1)]
    gp = sum(c * u ** (k - j) for j, c in enumerate(g))
    crit = set()
    for e in (sp.discriminant(sp.Poly(gp, u), u) if k >= 2 else sp.Integer(1), g[0]):
        e = sp.expand(e)
        if e.free_symbols:
            crit.update(float(r.evalf(30)) for r in sp.real_roots(sp.Poly(e, t)))
    pts = sorted(crit)
    out = [0.0]
    if pts:
        out += [pts[0] - 1, pts[-1] + 1] + [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    return [[1, Fraction(c).limit_denominator(10 ** 12)] for c in out] + [[0, 1]]


def _float_real_rooted(g: list, k: int) -> bool:
    c = [float(a) for a in g]
    # the homogeneous discriminant also covers a root at infinity
    if k == 1:
        return any(c)
    if k == 2:
        return c[1] ** 2 - 4 * c[0] * c[2] > 0
    if k == 3:
        a, b, cc, d = c
        return b * b * cc * cc - 4 * a * cc ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * cc * d > 0
    while c and c[0] == 0:
        c.pop(0)
    if k - (len(c) - 1) > 1:
        return False
    roots = mpmath.polyroots(c, maxsteps=200, extraprec=60)
    return all(abs(mpmath.im(r)) < 1e-9 * (1 + abs(r)) for r in roots)


def _sphere_grid(dim: int, n: int):
    """About n unit vectors on a half of the sphere S^(dim-1)."""
    if dim == 1:
        yield [1]
        return
    per = max(2, round(n ** (1.0 / (dim - 1))))
    angles = [math.pi * (s + 0.5) / per for s in range(per)]

    def rec(m):
        if m == 1:
            for a in angles:
                yield [math.cos(a), math.sin(a)]
            return
        for a in angles:
            for rest in rec(m - 1):
                yield [math.cos(a)] + [math.sin(a) * r for r in rest]

    yield from rec(dim - 1)


def brute_force_real_rank(coeffs: Sequence) -> Optional[int]:
    """Smallest k whose apolar kernel holds a form with k distinct real roots.

    Pencils are scanned on a grid plus every rational critical candidate of the
    discriminant; larger kernels on a grid over the sphere.  None if nothing is found.
    """
    d = len(coeffs) - 1
    for k in range(1, d + 1):
        basis = apolar_kernel(coeffs, k)
        if not basis:
            continue
        if len(basis) == 1:
            if real_rooted_squarefree(basis[0], k):
                return k
            continue
        if len(basis) == 2:
            for w in _pencil_candidates(basis, k):
                if real_rooted_squarefree(_combine(basis, w), k):
                    return k
        fbasis = [[float(c) for c in vec] for vec in basis]
        for w in _sphere_grid(len(basis), GRID_POINTS):
            # a float screen first; every hit is confirmed exactly
            g = [sum(wi * vec[i] for wi, vec in zip(w, fbasis)) for i in range(k + 1)]
            if not _float_real_rooted(g, k):
                continue
            exact = _combine(basis, [Fraction(c).limit_denominator(10 ** 6) for c in w])
            if real_rooted_squarefree(exact, k):
                return k
    return None


# ---------------------------------------------------------------------------
# plane cubics


X0, X1, X2, L, M = sp.symbols("x0 x1 x2 lam mu")


def tangent_discriminant_rank3(curve_text: str, point: Sequence) -> str:
    """'rank1', 'rank3' or 'not rank3' for a point of P^2 and a plane cubic.

    The restriction of the cubic to the line through p and a + s b is a binary
    cubic whose discriminant D(s) is eliminated exactly.  p has rank 3 when every
    line through it meets the curve once, i.e. D < 0 on all of P^1.
    """
    F = sp.sympify(curve_text.replace("^", "**"), locals={"x0": X0, "x1": X1, "x2": X2})
    p = [sp.Rational(str(c)) for c in point]
    if F.subs(dict(zip((X0, X1, X2), p))) == 0:
        return "rank1"
    # a basis a, b of a plane complementary to p
    k = max(range(3), key=lambda i: abs(p[i]))
    others = [i for i in range(3) if i != k]
    a = [sp.Integer(int(i == others[0])) for i in range(3)]
    b = [sp.Integer(int(i == others[1])) for i in range(3)]
    s, w = sp.symbols("s w")
    q = [w * a[i] + s * b[i] for i in range(3)]
    line = [L * p[i] + M * q[i] for i in range(3)]
    g = sp.Poly(sp.expand(F.subs(dict(zip((X0, X1, X2), line)), simultaneous=True)), L, M)
    c = [g.coeff_monomial(L ** (3 - i) * M ** i) for i in range(4)]
    # discriminant of c0 L^3 + c1 L^2 M + c2 L M^2 + c3 M^3
    disc = sp.expand(c[1] ** 2 * c[2] ** 2 - 4 * c[0] * c[2] ** 3 - 4 * c[1] ** 3 * c[3]
                     - 27 * c[0] ** 2 * c[3] ** 2 + 18 * c[0] * c[1] * c[2] * c[3])
    ds = sp.Poly(disc.subs(w, 1), s)
    if ds.is_zero or disc.subs({w: 0, s: 1}) >= 0:
        return "not rank3"
    if ds.degree() > 0 and sp.real_roots(ds):
        return "not rank3"
    return "rank3" if ds.eval(0) < 0 else "not rank3"
