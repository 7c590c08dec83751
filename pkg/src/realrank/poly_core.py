"""Exact univariate polynomials, binary forms, Sturm counting and root isolation.

All arithmetic is over ``fractions.Fraction``.  Heavy integer loops
(pseudo-remainders, Sturm chains, determinants) are delegated to
``realrank.kernels``.
"""

from __future__ import annotations

from dataclasses import dataclass
import math
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Optional, Sequence, Union

from . import kernels as K
from .errors import DegreeError, InvalidDirectionError, ZeroPolynomialError

Number = Union[int, Fraction]


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, float):
        return Fraction(v)
    raise TypeError(f"cannot convert {v!r} to an exact rational")


def _strip_fracs(coeffs: Iterable) -> tuple:
    cs = [as_fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def integerize(coeffs: Sequence[Fraction]) -> list:
    """Scale rational coefficients by a positive integer to a primitive int list."""
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    return K.primitive(ints)


# ---------------------------------------------------------------------------
# univariate polynomials


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial with coefficients in ascending powers."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip_fracs(self.coeffs))

    @classmethod
    def from_ints(cls, ints: Sequence[int]) -> "UniPoly":
        return cls(tuple(Fraction(c) for c in ints))

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "UniPoly":
        p = cls((lead,))
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        r = Fraction(0)
        for c in reversed(self.coeffs):
            r = r * x + c
        return r

    def __add__(self, other):
        other = _as_unipoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_unipoly(other))

    def __rsub__(self, other):
        return _as_unipoly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(tuple(c * other for c in self.coeffs))
        other = _as_unipoly(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        r = UniPoly((1,))
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __divmod__(self, other):
        other = _as_unipoly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        nb = other.degree
        lb = other.lc
        if len(r) - 1 < nb:
            return UniPoly(), self
        q = [Fraction(0)] * (len(r) - nb)
        while len(r) - 1 >= nb and r:
            c = r[-1] / lb
            shift = len(r) - 1 - nb
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                r[i + shift] -= c * b
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return UniPoly(tuple(q)), UniPoly(tuple(r))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(i * self.coeffs[i] for i in range(1, len(self.coeffs))))

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.lc
        return UniPoly(tuple(c / lc for c in self.coeffs))

    def compose(self, other: "UniPoly") -> "UniPoly":
        r = UniPoly()
        for c in reversed(self.coeffs):
            r = r * other + UniPoly((c,))
        return r

    def to_ints(self) -> list:
        """Primitive integer coefficient list (positive rescaling)."""
        return integerize(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*t^{i}" if i else f"{c}")
        return "UniPoly(" + " + ".join(terms) + ")"


def _as_unipoly(v) -> UniPoly:
    if isinstance(v, UniPoly):
        return v
    return UniPoly((v,))


def interpolate(xs: Sequence, ys: Sequence) -> UniPoly:
    """Newton interpolation through the points (xs[i], ys[i])."""
    xs = [as_fraction(x) for x in xs]
    coef = [as_fraction(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = UniPoly((coef[-1],)) if coef else UniPoly()
    for i in range(n - 2, -1, -1):
        p = p * UniPoly((-xs[i], 1)) + UniPoly((coef[i],))
    return p


def interpolate_ints(xs: Sequence[int], ys: Sequence[int]) -> list:
    """Interpolate integer data at integer nodes; returns rational coefficients."""
    return list(interpolate(xs, ys).coeffs)


# ---------------------------------------------------------------------------
# gcd and squarefree decomposition


def gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd of two polynomials."""
    if p.is_zero() and q.is_zero():
        raise ZeroPolynomialError("gcd of two zero polynomials")
    g = K.poly_gcd(p.to_ints() if not p.is_zero() else [],
                   q.to_ints() if not q.is_zero() else [])
    return UniPoly.from_ints(g).monic()


def _yun_frac(p: list) -> list:
    """Yun's algorithm over Q; returns primitive integer factors."""
    a = UniPoly.from_ints(p)
    b = a.derivative()
    c = gcd(a, b)
    w = a // c
    y = b // c
    z = y - w.derivative()
    i = 1
    out = []
    while w.degree >= 1:
        g = gcd(w, z) if not z.is_zero() else w.monic()
        if g.degree >= 1:
            out.append((g.to_ints(), i))
        w = w // g
        y = z // g
        z = y - w.derivative()
        i += 1
    return out


def squarefree_decomposition_ints(p: list) -> list:
    """Squarefree factors (primitive int lists, positive lc) with multiplicities."""
    p = K.primitive(K.strip(list(p)))
    if not p:
        raise ZeroPolynomialError("squarefree decomposition of zero")
    out = _yun_frac(p)
    return [([-v for v in g] if g[-1] < 0 else g, m) for g, m in out]


def squarefree_decomposition(p: UniPoly) -> list:
    """Return [(q_i, m_i)] with p = c * prod q_i^m_i, q_i monic squarefree coprime."""
    if p.is_zero():
        raise ZeroPolynomialError("squarefree decomposition of zero")
    out = [(UniPoly.from_ints(g).monic(), m) for g, m in squarefree_decomposition_ints(p.to_ints())]
    return sorted(out, key=lambda t: t[1])


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.is_zero():
        raise ZeroPolynomialError("squarefree part of zero")
    return UniPoly.from_ints(K.squarefree_part(p.to_ints())).monic()


# ---------------------------------------------------------------------------
# Sturm counting and isolation


def _sign(v) -> int:
    return (v > 0) - (v < 0)


class SturmData:
    """Sturm chain of a squarefree integer polynomial, with counting helpers."""

    __slots__ = ("poly", "chain")

    def __init__(self, squarefree_ints: list):
        self.poly = squarefree_ints
        self.chain = K.sturm_chain(squarefree_ints) if len(squarefree_ints) > 1 else [squarefree_ints]

    def variations(self, x: Optional[Fraction], at_plus_inf: bool = True) -> int:
        if x is None:
            return K.sign_variations_inf(self.chain, at_plus_inf)
        return K.sign_variations(self.chain, x.numerator, x.denominator)

    def value_sign(self, x: Fraction) -> int:
        return _sign(K.eval_hom(self.poly, x.numerator, x.denominator))

    def count_half_open(self, a: Optional[Fraction], b: Optional[Fraction]) -> int:
        """Distinct roots in (a, b]; None means -inf / +inf."""
        va = self.variations(a, at_plus_inf=False) if a is not None else K.sign_variations_inf(self.chain, False)
        vb = self.variations(b) if b is not None else K.sign_variations_inf(self.chain, True)
        return va - vb

    def count_open(self, a: Optional[Fraction], b: Optional[Fraction]) -> int:
        n = self.count_half_open(a, b)
        if b is not None and self.value_sign(b) == 0:
            n -= 1
        return n


def sturm_count(p: UniPoly, interval: Optional[tuple] = None) -> int:
    """Number of distinct real roots of ``p`` in the open interval (a, b).

    ``interval`` defaults to the whole line; either endpoint may be None
    for an infinite end.
    """
    if p.is_zero():
        raise ZeroPolynomialError("sturm_count of the zero polynomial")
    if p.degree == 0:
        return 0
    sd = SturmData(K.squarefree_part(p.to_ints()))
    if interval is None:
        return sd.count_half_open(None, None)
    a, b = interval
    a = None if a is None else as_fraction(a)
    b = None if b is None else as_fraction(b)
    if a is not None and b is not None and a >= b:
        return 0
    return sd.count_open(a, b)


def count_distinct_real_roots_ints(p: list) -> int:
    return K.count_real_roots(p)


def cauchy_bound(p: list) -> int:
    """Integer B with every real root of p strictly inside (-B, B)."""
    lc = abs(p[-1])
    m = max(abs(c) for c in p[:-1]) if len(p) > 1 else 0
    return m // lc + 2


@dataclass(frozen=True)
class RealRoot:
    """A real root given by an isolating open interval (or exactly when lo == hi)."""

    lo: Fraction
    hi: Fraction
    multiplicity: int
    factor: tuple  # squarefree primitive integer polynomial with this root

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.midpoint())

    def refine(self, width) -> "RealRoot":
        width = as_fraction(width)
        if self.is_exact or self.hi - self.lo <= width:
            return self
        f = list(self.factor)
        lo, hi = self.lo, self.hi
        slo = _sign(K.eval_hom(f, lo.numerator, lo.denominator))
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = _sign(K.eval_hom(f, mid.numerator, mid.denominator))
            if v == 0:
                lo = hi = mid
                break
            if v == slo:
                lo = mid
            else:
                hi = mid
        return RealRoot(lo, hi, self.multiplicity, self.factor)

    def bisect_once(self) -> "RealRoot":
        return self.refine((self.hi - self.lo) / 2)


def _isolate_squarefree(q: list) -> list:
    """Isolating intervals (lo, hi) for a squarefree primitive int polynomial."""
    if len(q) <= 1:
        return []
    if len(q) == 2:
        r = Fraction(-q[0], q[1])
        return [(r, r)]
    sd = SturmData(q)
    total = sd.count_half_open(None, None)
    if total == 0:
        return []
    B = Fraction(cauchy_bound(q))
    out = []
    work = [(-B, B, total)]
    while work:
        lo, hi, n = work.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if sd.value_sign(mid) == 0:
            out.append((mid, mid))
            e = (hi - lo) / 4
            while True:
                a, b = mid - e, mid + e
                if sd.value_sign(a) != 0 and sd.value_sign(b) != 0 and sd.count_half_open(a, b) == 1:
                    break
                e /= 2
            n_left = sd.count_half_open(lo, a)
            work.append((lo, a, n_left))
            work.append((b, hi, n - 1 - n_left))
        else:
            n_left = sd.count_half_open(lo, mid)
            work.append((lo, mid, n_left))
            work.append((mid, hi, n - n_left))
    out.sort()
    return out


def _separate(roots: list) -> list:
    """Refine roots from different factors until all intervals are disjoint."""
    roots = sorted(roots, key=lambda r: (r.lo, r.hi))
    changed = True
    while changed:
        changed = False
        roots.sort(key=lambda r: (r.midpoint(), r.lo))
        for i in range(len(roots) - 1):
            a, b = roots[i], roots[i + 1]
            if a.hi > b.lo and not (a.is_exact and b.is_exact and a.lo == b.lo):
                if not a.is_exact:
                    roots[i] = a.bisect_once()
                if not b.is_exact:
                    roots[i + 1] = b.bisect_once()
                changed = True
    return roots


@dataclass(frozen=True)
class RootIsolation:
    """Real roots of a polynomial or binary form with multiplicities.

    ``roots`` are the affine roots (of f(t, 1) for a form); the projective
    root (1:0) is accounted for by ``infinity_multiplicity``.
    """

    roots: tuple
    infinity_multiplicity: int = 0
    degree: int = 0

    @property
    def real_count_with_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots) + self.infinity_multiplicity

    @property
    def distinct_count(self) -> int:
        return len(self.roots) + (1 if self.infinity_multiplicity else 0)

    @property
    def all_real(self) -> bool:
        return self.real_count_with_multiplicity == self.degree

    @property
    def all_simple(self) -> bool:
        return all(r.multiplicity == 1 for r in self.roots) and self.infinity_multiplicity <= 1

    def refine(self, width) -> "RootIsolation":
        return RootIsolation(tuple(_separate([r.refine(width) for r in self.roots])),
                             self.infinity_multiplicity, self.degree)


def snap_rational(r: RealRoot, max_bits: int = 64) -> RealRoot:
    """Return the root as an exact point when it is rational.

    A rational root p/q of an integer polynomial has q dividing the leading
    coefficient, and two such rationals are at least 1/lc^2 apart, so one
    candidate per small interval suffices.
    """
    if r.is_exact:
        return r
    lc = abs(r.factor[-1])
    if lc.bit_length() > max_bits:
        return r
    r = r.refine(Fraction(1, 2 * lc * lc))
    if r.is_exact:
        return r
    cand = r.midpoint().limit_denominator(lc)
    if r.lo < cand < r.hi and K.eval_hom(list(r.factor), cand.numerator, cand.denominator) == 0:
        return RealRoot(cand, cand, r.multiplicity, r.factor)
    return r


def isolate_ints(p: list, degree: Optional[int] = None, exact_rationals: bool = True) -> RootIsolation:
    p = K.strip(list(p))
    if not p:
        raise ZeroPolynomialError("root isolation of zero")
    roots = []
    if len(p) > 1:
        for g, m in squarefree_decomposition_ints(p):
            for lo, hi in _isolate_squarefree(g):
                root = RealRoot(lo, hi, m, tuple(g))
                roots.append(snap_rational(root) if exact_rationals else root)
    roots = _separate([r.refine(Fraction(1, 2)) for r in roots])
    d = len(p) - 1 if degree is None else degree
    return RootIsolation(tuple(roots), d - (len(p) - 1), d)


def isolate_real_roots(p) -> RootIsolation:
    """Isolate the real roots of a UniPoly or BinaryForm.

    For a BinaryForm the affine roots are those of f(t, 1), i.e. the
    points (t:1); the multiplicity of (1:0) is d - deg f(t, 1).
    """
    if isinstance(p, BinaryForm):
        if p.is_zero():
            raise ZeroPolynomialError("root isolation of the zero form")
        return isolate_ints(p.dehomogenize().to_ints(), p.degree)
    if p.is_zero():
        raise ZeroPolynomialError("root isolation of zero")
    return isolate_ints(p.to_ints())


# ---------------------------------------------------------------------------
# resultants and discriminants


def sylvester_matrix(a: Sequence, b: Sequence) -> list:
    """Sylvester matrix of two coefficient lists given in DESCENDING order."""
    m = len(a) - 1
    n = len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(a) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(b) + [0] * (size - n - 1 - i))
    return rows


def det_fraction(m: list) -> Fraction:
    """Exact determinant of a rational matrix via integer Bareiss."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for row in m:
        row = [as_fraction(v) for v in row]
        den = 1
        for v in row:
            den = lcm(den, v.denominator)
        rows.append([int(v * den) for v in row])
        scale /= den
    return K.bareiss_det(rows) * scale


def resultant(p: UniPoly, q: UniPoly) -> Fraction:
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    if p.degree == 0 and q.degree == 0:
        return Fraction(1)
    return det_fraction(sylvester_matrix(list(reversed(p.coeffs)), list(reversed(q.coeffs))))


def binary_resultant(a: "BinaryForm", b: "BinaryForm") -> Fraction:
    """Resultant of two binary forms with their formal degrees.

    Vanishes exactly when the forms share a projective root.
    """
    if a.degree == 0 and b.degree == 0:
        return Fraction(1)
    return det_fraction(sylvester_matrix(list(a.coeffs), list(b.coeffs)))


def discriminant(p, var: Optional[int] = None):
    """Discriminant (-1)^(n(n-1)/2) Res(p, p') / lc(p).

    Accepts a UniPoly, or an MPoly together with the index of the
    distinguished variable (the result is then an MPoly).
    """
    from .multivariate import MPoly, mpoly_discriminant

    if isinstance(p, MPoly):
        if var is None:
            raise ValueError("a distinguished variable index is required")
        return mpoly_discriminant(p, var)
    if isinstance(p, BinaryForm):
        return form_discriminant(p)
    if p.is_zero() or p.degree < 1:
        raise DegreeError("discriminant needs degree >= 1")
    n = p.degree
    if n == 1:
        return Fraction(1)
    res = resultant(p, p.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / p.lc


def form_discriminant(f: "BinaryForm") -> Fraction:
    """Res(f_x, f_y): a nonzero multiple of the discriminant of a binary form.

    Zero exactly when f has a repeated projective root (degree >= 2).
    """
    if f.degree < 2:
        raise DegreeError("form discriminant needs degree >= 2")
    return binary_resultant(f.derivative("x"), f.derivative("y"))


# ---------------------------------------------------------------------------
# binary forms


@dataclass(frozen=True)
class BinaryForm:
    """f = sum coeffs[i] x^(d-i) y^i in the plain monomial basis."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(as_fraction(c) for c in self.coeffs)
        if not cs:
            raise ValueError("a binary form needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, d: int) -> "BinaryForm":
        return cls((0,) * (d + 1))

    @classmethod
    def monomial(cls, d: int, i: int, c=1) -> "BinaryForm":
        cs = [0] * (d + 1)
        cs[i] = c
        return cls(tuple(cs))

    @classmethod
    def linear(cls, a, b) -> "BinaryForm":
        return cls((a, b))

    @classmethod
    def from_linear_factors(cls, factors: Iterable, lead=1) -> "BinaryForm":
        f = cls((lead,))
        for a, b in factors:
            f = f * cls((a, b))
        return f

    @classmethod
    def from_dehomogenized(cls, p: UniPoly, d: int) -> "BinaryForm":
        if p.degree > d:
            raise DegreeError("polynomial degree exceeds the form degree")
        cs = [Fraction(0)] * (d + 1)
        for k, c in enumerate(p.coeffs):
            cs[d - k] = c
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, x, y):
        d = self.degree
        return sum((c * as_fraction(x) ** (d - i) * as_fraction(y) ** i
                    for i, c in enumerate(self.coeffs)), Fraction(0))

    def dehomogenize(self) -> UniPoly:
        """f(t, 1) as a polynomial in t."""
        d = self.degree
        return UniPoly(tuple(self.coeffs[d - k] for k in range(d + 1)))

    def _check_same(self, other: "BinaryForm"):
        if other.degree != self.degree:
            raise DegreeError("forms of different degree")

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        self._check_same(other)
        return BinaryForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        self._check_same(other)
        return BinaryForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BinaryForm(tuple(c * other for c in self.coeffs))
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BinaryForm":
        r = BinaryForm((1,))
        for _ in range(n):
            r = r * self
        return r

    def derivative(self, var: str) -> "BinaryForm":
        return derivative(self, var)

    def to_ints(self) -> list:
        return integerize(self.coeffs)

    def primitive(self) -> "BinaryForm":
        """Integer primitive representative (positive rescaling)."""
        if self.is_zero():
            return self
        return BinaryForm(tuple(self.to_ints()))

    def is_proportional(self, other: "BinaryForm") -> bool:
        if self.degree != other.degree:
            return False
        d = self.degree
        for i in range(d + 1):
            for j in range(i + 1, d + 1):
                if self.coeffs[i] * other.coeffs[j] != self.coeffs[j] * other.coeffs[i]:
                    return False
        return True

    def __str__(self):
        d = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "*".join(m for m in (
                "x" if d - i == 1 else (f"x^{d - i}" if d - i > 1 else ""),
                "y" if i == 1 else (f"y^{i}" if i > 1 else ""),
            ) if m)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts) if parts else "0"


def derivative(f: BinaryForm, var: str) -> BinaryForm:
    """Partial derivative with respect to ``'x'`` or ``'y'``."""
    d = f.degree
    if d == 0:
        return BinaryForm((0,))
    if var == "x":
        return BinaryForm(tuple((d - i) * f.coeffs[i] for i in range(d)))
    if var == "y":
        return BinaryForm(tuple(i * f.coeffs[i] for i in range(1, d + 1)))
    raise ValueError(f"unknown variable {var!r}")


def directional_derivative(f: BinaryForm, v: Sequence) -> BinaryForm:
    """v1 * df/dx + v2 * df/dy."""
    v1, v2 = as_fraction(v[0]), as_fraction(v[1])
    if v1 == 0 and v2 == 0:
        raise InvalidDirectionError("direction vector is zero")
    if f.degree == 0:
        return BinaryForm((0,))
    return derivative(f, "x") * v1 + derivative(f, "y") * v2


def form_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Gcd of two nonzero binary forms, including powers of y."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomialError("form gcd needs nonzero forms")
    fi = isolate_inf_mult(f)
    gi = isolate_inf_mult(g)
    m = min(fi, gi)
    pf, pg = f.dehomogenize(), g.dehomogenize()
    h = gcd(pf, pg)
    return BinaryForm.from_dehomogenized(h, h.degree + m)


def isolate_inf_mult(f: BinaryForm) -> int:
    """Multiplicity of (1:0) as a root of f."""
    return f.degree - f.dehomogenize().degree


def form_divide(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Exact quotient of binary forms."""
    q, r = divmod(f.dehomogenize(), g.dehomogenize())
    if not r.is_zero():
        raise ValueError("inexact form division")
    return BinaryForm.from_dehomogenized(q, f.degree - g.degree)


def form_is_squarefree(f: BinaryForm) -> bool:
    """True iff f has no repeated projective root (over C)."""
    if f.is_zero():
        return False
    p = f.dehomogenize()
    inf = f.degree - p.degree
    if inf >= 2:
        return False
    if p.degree <= 1:
        return True
    ints = p.to_ints()
    return len(K.poly_gcd(ints, K.derivative(ints))) == 1


def form_distinct_real_root_count(f: BinaryForm) -> int:
    p = f.dehomogenize()
    inf = 1 if f.degree > p.degree else 0
    if p.degree <= 0:
        return inf
    return K.count_real_roots(p.to_ints()) + inf


def form_real_squarefree(f: BinaryForm) -> bool:
    """True iff all d roots of f are real and pairwise distinct."""
    if f.is_zero():
        return False
    p = f.dehomogenize()
    d = f.degree
    inf = d - p.degree
    if inf >= 2:
        return False
    if p.degree <= 0:
        return True
    ints = p.to_ints()
    sq = K.squarefree_part(ints)
    if len(sq) != len(ints):
        return False
    return K.count_real_roots(ints) == p.degree


def binomial_row(d: int) -> list:
    return [comb(d, i) for i in range(d + 1)]


def simplest_between(lo: Fraction, hi: Optional[Fraction]) -> Fraction:
    """The rational with the smallest denominator in the open interval (lo, hi).

    ``hi`` may be None for +infinity.
    """
    if hi is not None and lo >= hi:
        raise ValueError("empty interval")
    n = math.floor(lo)
    if hi is None or n + 1 < hi:
        if lo < 0 and (hi is None or hi > 0):
            return Fraction(0)
        if lo < 0:
            return Fraction(math.ceil(hi) - 1)
        return Fraction(n + 1)
    inner_hi = None if lo == n else 1 / (lo - n)
    return n + 1 / simplest_between(1 / (hi - n), inner_hi)


def _point_between(a: RealRoot, b: RealRoot) -> Fraction:
    """A simple rational strictly between the roots of a and b (a's root < b's root)."""
    while True:
        if a.hi < b.lo:
            return simplest_between(a.hi, b.lo)
        # shared endpoint: move the open interval away from it
        if not b.is_exact and (a.is_exact or b.width >= a.width):
            b = b.bisect_once()
        elif not a.is_exact:
            a = a.bisect_once()
        else:
            return simplest_between(a.lo, b.lo)


def gap_samples(roots: Sequence[RealRoot]) -> list:
    """One rational point in each open gap of R minus the given roots.

    Includes one point below the smallest root and one above the largest.
    With no roots, returns [0].
    """
    if not roots:
        return [Fraction(0)]
    rs = sorted(roots, key=lambda r: r.midpoint())
    out = [Fraction(math.floor(rs[0].lo) - 1)]
    for a, b in zip(rs, rs[1:]):
        out.append(_point_between(a, b))
    out.append(Fraction(math.ceil(rs[-1].hi) + 1))
    return out


def real_roots_of_ints(p: list) -> list:
    """Distinct real roots (as RealRoot) of a nonzero integer polynomial."""
    p = K.strip(list(p))
    if len(p) <= 1:
        return []
    sq = K.squarefree_part(p)
    return [RealRoot(lo, hi, 1, tuple(sq)) for lo, hi in _isolate_squarefree(sq)]
