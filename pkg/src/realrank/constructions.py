"""Veronese powers, projections of the rational normal curve, joins and the P^3 example."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from . import kernels as K
from .apolarity import apolar_ideal, catalecticant_from_weighted, complex_rank, to_weighted
from .errors import DegenerateInputError, InvalidDirectionError, ZeroPolynomialError
from .interval import Interval
from .linalg import rank as mat_rank
from .multivariate import MPoly, mpoly_discriminant, parse_polynomial
from .poly_core import (
    BinaryForm,
    RealRoot,
    UniPoly,
    as_fraction,
    det_fraction,
    form_discriminant,
    gap_samples,
    gcd,
    interpolate,
    isolate_real_roots,
    real_roots_of_ints,
    snap_rational,
    sturm_count,
)
from .real_rank import real_rank


def veronese_power(ell: Sequence, d: int) -> BinaryForm:
    """(s x + t y)^d."""
    s, t = as_fraction(ell[0]), as_fraction(ell[1])
    if s == 0 and t == 0:
        raise InvalidDirectionError("zero linear form")
    return BinaryForm((s, t)) ** d


def join_rank(rx: int, ry: int) -> int:
    if rx < 0 or ry < 0:
        raise ValueError("ranks are nonnegative")
    if rx == 0 and ry == 0:
        raise ValueError("both components are zero")
    return max(rx, ry)


def is_generic_projection_center(p: BinaryForm) -> Optional[bool]:
    """Middle catalecticant nonsingular (even d); None for odd d (not decided)."""
    d = p.degree
    if d % 2:
        return None
    cat = catalecticant_from_weighted(to_weighted(p).a, d // 2)
    return det_fraction(cat.entries) != 0


# ---------------------------------------------------------------------------
# projections from a point of P^d


@dataclass(frozen=True)
class PencilPoint:
    """The point q + R p of P(R[x,y]_d / <p>)."""

    p: BinaryForm
    q: BinaryForm

    def __post_init__(self):
        if self.p.is_zero():
            raise ZeroPolynomialError("projection center is zero")
        if self.p.degree != self.q.degree:
            raise DegenerateInputError("center and representative differ in degree")
        if self.q.is_zero() or self.q.is_proportional(self.p):
            raise DegenerateInputError("representative is proportional to the center")

    @property
    def degree(self) -> int:
        return self.p.degree

    def fiber(self, t) -> BinaryForm:
        return self.q + self.p * as_fraction(t)


def _cat_poly_entries(pt: PencilPoint, k: int):
    ap = to_weighted(pt.p).a
    aq = to_weighted(pt.q).a
    d = pt.degree
    return [[(aq[i + j], ap[i + j]) for j in range(k + 1)] for i in range(d - k + 1)]


def _cat_at(entries, t: Fraction):
    return [[c0 + c1 * t for c0, c1 in row] for row in entries]


def _minor_polys(entries, size: int):
    """Yield size x size minors of a matrix with entries linear in t, as UniPolys."""
    rows, cols = len(entries), len(entries[0])
    nodes = [Fraction(i) for i in range(size + 1)]
    mats = [_cat_at(entries, x) for x in nodes]
    for rs in combinations(range(rows), size):
        for cs in combinations(range(cols), size):
            vals = [det_fraction([[m[r][c] for c in cs] for r in rs]) for m in mats]
            yield interpolate(nodes, vals)


def _generic_rank(entries, rng: random.Random) -> int:
    best = 0
    for _ in range(2):
        t = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 6))
        best = max(best, mat_rank(_cat_at(entries, t)))
    return best


@dataclass(frozen=True)
class DropLocus:
    k: int
    generic_rank: int
    polynomial: UniPoly  # gcd of the generic-size minors; roots = rank drops


def _drop_loci(pt: PencilPoint, rng: random.Random) -> List[DropLocus]:
    d = pt.degree
    out = []
    for k in range(1, d):
        ent = _cat_poly_entries(pt, k)
        rho = _generic_rank(ent, rng)
        if rho == 0:
            continue
        g = None
        for m in _minor_polys(ent, rho):
            if m.is_zero():
                continue
            g = m if g is None else gcd(g, m)
            if g.degree == 0:
                break
        if g is not None and g.degree >= 1:
            out.append(DropLocus(k, rho, g.monic()))
    return out


def _kernel_vector_polys(pt: PencilPoint, s: int, rng: random.Random) -> Optional[List[UniPoly]]:
    """Cramer kernel vector of Cat_s(q + t p) as polynomials in t (generic kernel dimension 1)."""
    ent = _cat_poly_entries(pt, s)
    rows = len(ent)
    t0 = Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6))
    m0 = _cat_at(ent, t0)
    chosen = []
    for r in range(rows):
        if mat_rank([m0[i] for i in chosen + [r]]) == len(chosen) + 1:
            chosen.append(r)
        if len(chosen) == s:
            break
    if len(chosen) < s:
        return None
    sub = [ent[r] for r in chosen]
    nodes = [Fraction(i) for i in range(s + 1)]
    out = []
    for j in range(s + 1):
        vals = []
        for x in nodes:
            m = _cat_at(sub, x)
            minor = [[row[c] for c in range(s + 1) if c != j] for row in m]
            vals.append(det_fraction(minor) * (-1) ** j)
        out.append(interpolate(nodes, vals))
    return out


def _form_from_polys(w: List[UniPoly], t: Fraction) -> BinaryForm:
    return BinaryForm(tuple(c(t) for c in w))


def _kernel_discriminant(w: List[UniPoly]) -> UniPoly:
    s = len(w) - 1
    if s < 2:
        return UniPoly((1,))
    bound = 2 * (s - 1) * s
    nodes = list(range(bound + 1))
    vals = []
    for x in nodes:
        g = _form_from_polys(w, Fraction(x))
        vals.append(form_discriminant(g) if not g.is_zero() else Fraction(0))
    return interpolate(nodes, vals)


def _classical_disc_interval(cs: List[Interval]) -> Optional[Interval]:
    """Discriminant of a binary quadratic or cubic with interval coefficients."""
    if len(cs) == 3:
        a, b, c = cs
        return b * b - a * c * 4
    if len(cs) == 4:
        a, b, c, d = cs
        return (b * b * c * c - a * c ** 3 * 4 - b ** 3 * d * 4 - a * a * d * d * 27
                + a * b * c * d * 18)
    return None


@dataclass(frozen=True)
class ProjectedRank:
    value: int
    samples: tuple  # ((t as str, rank or None), ...) in evaluation order
    critical_points: tuple  # approximate floats of all candidate boundaries
    unresolved: tuple  # approximate irrational rank-drop points not decided
    complete: bool
    note: str = ""


def projected_real_rank(pt: PencilPoint, t_candidates_extra: Sequence = (), seed: int = 0,
                        trials: int = 48) -> ProjectedRank:
    """Minimum of real_rank(q + t p) over real t."""
    d = pt.degree
    rng = random.Random(f"proj|{seed}|{pt.p.coeffs}|{pt.q.coeffs}")
    drops = _drop_loci(pt, rng)
    crit_polys: List[UniPoly] = [dl.polynomial for dl in drops]
    # generic first kernel degree of the fiber
    t_gen = Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6))
    ideal_gen = apolar_ideal(pt.fiber(t_gen))
    s_gen, t2_gen = ideal_gen.degrees
    w = None
    if s_gen < t2_gen and s_gen >= 2:
        w = _kernel_vector_polys(pt, s_gen, rng)
        if w is not None:
            kd = _kernel_discriminant(w)
            if not kd.is_zero():
                crit_polys.append(kd)
    # discriminant of the fiber itself (hyperbolicity changes)
    nodes = list(range(2 * d - 1))
    fd = interpolate(nodes, [form_discriminant(pt.fiber(x)) for x in nodes])
    if not fd.is_zero():
        crit_polys.append(fd)
    # one squarefree polynomial carrying every candidate boundary
    prod = UniPoly((1,))
    for cp in crit_polys:
        if cp.degree >= 1:
            prod = prod * cp
    roots = [snap_rational(r, max_bits=4096) for r in real_roots_of_ints(prod.to_ints())]
    samples = [as_fraction(t) for t in t_candidates_extra]
    samples += [r.lo for r in roots if r.is_exact]
    samples += gap_samples(roots)
    seen = set()
    ordered = []
    for t in samples:
        if t not in seen:
            seen.add(t)
            ordered.append(t)
    best = d + 1
    evaluated = []
    for t in ordered:
        f_t = pt.fiber(t)
        if f_t.is_zero():
            continue
        cert = real_rank(f_t, max_rank=best - 1, seed=seed, trials=trials)
        evaluated.append((str(t), None if cert is None else cert.rank))
        if cert is not None and cert.rank < best:
            best = cert.rank
            if best == 1:
                break
    unresolved = []
    # irrational rank-drop points: decide small kernels with interval arithmetic
    for dl in drops:
        for r in real_roots_of_ints(dl.polynomial.to_ints()):
            r = snap_rational(r, max_bits=4096)
            if r.is_exact:
                continue
            k_drop = dl.k
            if k_drop >= best:
                continue
            verdict = _interval_drop_rank(pt, dl, r)
            if verdict is None:
                unresolved.append(float(r.midpoint()))
            elif verdict < best:
                best = verdict
    complete = d <= 5 and not unresolved
    note = ("candidates: rank-drop loci of catalecticants, discriminant of the first kernel "
            "generator, discriminant of the fiber")
    return ProjectedRank(best, tuple(evaluated), tuple(sorted(float(r.midpoint()) for r in roots)),
                         tuple(unresolved), complete, note)


def _interval_drop_rank(pt: PencilPoint, dl: DropLocus, root: RealRoot) -> Optional[int]:
    """Real rank candidate at an irrational drop point when the new kernel has degree <= 3.

    Returns the kernel degree when the kernel generator there has distinct
    real roots, a large sentinel when it certifiably does not, or None.
    """
    k = dl.k
    if k > 3 or k < 2:
        return None
    ent = _cat_poly_entries(pt, k)
    for width_exp in (40, 80, 160):
        rr = root.refine(Fraction(1, 10 ** width_exp))
        tint = Interval(rr.lo, rr.hi)
        mat = [[Interval.point(c0) + tint * c1 for c0, c1 in row] for row in ent]
        # kernel vector from Cramer on the first k rows that stay independent
        for rs in combinations(range(len(mat)), k):
            comps = []
            for j in range(k + 1):
                minor = [[mat[r][c] for c in range(k + 1) if c != j] for r in rs]
                comps.append(_interval_det(minor) * (-1) ** j)
            if any(c.sign() != 0 for c in comps):
                disc = _classical_disc_interval(comps)
                if disc is None:
                    return None
                sg = disc.sign()
                if sg > 0:
                    return k
                if sg < 0:
                    return 10 ** 9
                break
    return None


def _interval_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Interval.point(0)
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _interval_det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


@dataclass(frozen=True)
class ProjectedComplexRank:
    value: int
    exact: bool
    generic_value: int
    drop_points: tuple  # ((t as str or float, complex rank or None), ...)


def projected_complex_rank(pt: PencilPoint, seed: int = 0) -> ProjectedComplexRank:
    """Minimum over complex t of complex_rank(q + t p)."""
    rng = random.Random(f"projc|{seed}|{pt.p.coeffs}|{pt.q.coeffs}")
    t_gen = Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6))
    generic = complex_rank(pt.fiber(t_gen)).rank
    best = generic
    exact = True
    points = []
    for dl in _drop_loci(pt, rng):
        if dl.k >= generic:
            continue
        p = dl.polynomial
        # rational roots are evaluated exactly; others leave the value an upper bound
        snapped = [snap_rational(r, max_bits=4096) for r in real_roots_of_ints(p.to_ints())]
        lin_roots = [r.lo for r in snapped if r.is_exact]
        for t in lin_roots:
            if pt.fiber(t).is_zero():
                continue
            cr = complex_rank(pt.fiber(t)).rank
            points.append((str(t), cr))
            best = min(best, cr)
        if p.degree > len(lin_roots):
            exact = False
            points.append(("irrational", None))
    return ProjectedComplexRank(best, exact, generic, tuple(points))


# ---------------------------------------------------------------------------
# the P^3 example


_X = MPoly.gens(4)


@dataclass(frozen=True)
class SpaceCurveP3:
    quadric: MPoly = field(default_factory=lambda: _X[1] * _X[3] - _X[2] ** 2)
    cubic: MPoly = field(default_factory=lambda: _X[2] ** 2 * _X[0] - (_X[1] ** 2 + _X[0] ** 2) * (_X[1] - _X[0]))
    point: tuple = (1, 0, 0, 0)

    def __post_init__(self):
        if self.quadric.evaluate(self.point) != 0:
            raise DegenerateInputError("the distinguished point must lie on the quadric")
        if self.cubic.evaluate(self.point) == 0:
            raise DegenerateInputError("the distinguished point must not lie on the curve")

    def fiber_cubic(self, x1, x2, x3) -> UniPoly:
        """The cubic restricted to the line through P and (0 : x1 : x2 : x3), in x0."""
        g = self.cubic.partial_evaluate(1, x1).partial_evaluate(2, x2).partial_evaluate(3, x3)
        return g.to_unipoly(0)


PRINTED_DISCRIMINANT = "-16*x1^6 + 8*x1^4*x2^2 - 11*x1^2*x2^4 - 4*x2^6"
PRINTED_SOS = "-((2*x2^3)^2 + 11*(x2^2*x1 - 4/11*x1^3)^2 + 160/11*x1^6)"


@dataclass(frozen=True)
class SOSReport:
    ok: bool
    identity_difference: str  # printed polynomial minus the sum of squares
    matching_sign: Optional[str]  # "-" (curve as defined), "+" (as in the computation), "both" or None
    discriminant_minus: str
    discriminant_plus: str


def verify_sos_discriminant(printed: Optional[str] = None, sos: Optional[str] = None) -> SOSReport:
    names = ("x0", "x1", "x2", "x3")
    lhs = parse_polynomial(printed or PRINTED_DISCRIMINANT, names)
    rhs = parse_polynomial(sos or PRINTED_SOS, names)
    diff = lhs - rhs
    x0, x1, x2, _ = _X
    minus = x2 ** 2 * x0 - (x1 ** 2 + x0 ** 2) * (x1 - x0)
    plus = x2 ** 2 * x0 + (x1 ** 2 + x0 ** 2) * (x1 - x0)
    dm = mpoly_discriminant(minus, 0)
    dp = mpoly_discriminant(plus, 0)
    matches = [s for s, dd in (("-", dm), ("+", dp)) if dd == lhs]
    sign = None if not matches else ("both" if len(matches) == 2 else matches[0])
    ok = diff.is_zero() and sign is not None
    return SOSReport(ok, diff.to_string(names), sign, dm.to_string(names), dp.to_string(names))


def _count_real_with_multiplicity(p: UniPoly) -> Tuple[int, int]:
    iso = isolate_real_roots(p)
    return iso.real_count_with_multiplicity, len(iso.roots)


@dataclass(frozen=True)
class FiberCount:
    with_multiplicity: int
    distinct: int


def _fiber_count_at_rational(curve: SpaceCurveP3, s: Fraction, t: Fraction) -> FiberCount:
    cub = curve.fiber_cubic(s * s, s * t, t * t)
    if cub.is_zero():
        raise DegenerateInputError("the line through P lies on the cubic surface")
    m, n = _count_real_with_multiplicity(cub)
    return FiberCount(m, n)


def _fiber_disc_poly(curve: SpaceCurveP3) -> UniPoly:
    """Discriminant in x0 of the fiber cubic over the cone point (sigma^2 : sigma : 1)."""
    disc = mpoly_discriminant(curve.cubic, 0)
    x = MPoly.gens(4)
    sigma = x[0]
    sub = disc.substitute([x[0], sigma ** 2, sigma, MPoly.constant(4, 1)])
    return sub.to_unipoly(0)


def _fiber_count_at_root(curve: SpaceCurveP3, root: RealRoot, disc_poly: UniPoly) -> FiberCount:
    if root.is_exact:
        return _fiber_count_at_rational(curve, root.lo, Fraction(1))
    # disc of the fiber cubic vanishes at sigma* iff gcd(factor, disc) has a root there
    g = gcd(UniPoly.from_ints(list(root.factor)), disc_poly) if not disc_poly.is_zero() else None
    if g is not None and g.degree >= 1:
        if sturm_count(g, (root.lo, root.hi)) == 1:
            return FiberCount(3, 2)
    for w in (30, 60, 120, 240):
        r = root.refine(Fraction(1, 10 ** w))
        val = _interval_poly(disc_poly, Interval(r.lo, r.hi))
        if val.sign() < 0:
            return FiberCount(1, 1)
        if val.sign() > 0:
            return FiberCount(3, 3)
    raise RuntimeError("could not separate the discriminant from zero")


def _interval_poly(p: UniPoly, x: Interval) -> Interval:
    from .interval import horner
    return horner(list(p.coeffs), x)


@dataclass(frozen=True)
class PlaneIntersection:
    plane: tuple
    with_multiplicity: int
    distinct: int


def plane_real_intersections(curve: SpaceCurveP3, plane: Sequence, disc_poly: Optional[UniPoly] = None
                             ) -> PlaneIntersection:
    """Real points of X on the plane b1 x1 + b2 x2 + b3 x3 = 0 (through P)."""
    b1, b2, b3 = (as_fraction(v) for v in plane)
    quad = BinaryForm((b1, b2, b3))  # b1 s^2 + b2 s t + b3 t^2
    if quad.is_zero():
        raise DegenerateInputError("not a plane")
    disc_poly = disc_poly if disc_poly is not None else _fiber_disc_poly(curve)
    iso = isolate_real_roots(quad)
    total = distinct = 0
    for r in iso.roots:
        fc = _fiber_count_at_root(curve, r, disc_poly)
        total += r.multiplicity * fc.with_multiplicity
        distinct += fc.distinct
    if iso.infinity_multiplicity:
        fc = _fiber_count_at_rational(curve, Fraction(1), Fraction(0))
        total += iso.infinity_multiplicity * fc.with_multiplicity
        distinct += fc.distinct
    return PlaneIntersection((b1, b2, b3), total, distinct)


@dataclass(frozen=True)
class MaxRankEvidence:
    point: tuple
    trials: int
    max_with_multiplicity: int
    max_distinct: int
    counting: str
    seed: int
    resampled: int
    histogram: tuple  # ((count with multiplicity, number of planes), ...)


def sample_max_rank_evidence(curve: SpaceCurveP3, trials: int, seed: int,
                             lattice: int = 2 ** 31) -> MaxRankEvidence:
    """Random rational planes through P; maximum number of real intersection points."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    disc_poly = _fiber_disc_poly(curve)
    hist = {}
    best_m = best_d = 0
    resampled = 0
    for i in range(trials):
        rng = random.Random(f"p3|{seed}|{i}")
        while True:
            plane = tuple(rng.randint(-lattice, lattice) for _ in range(3))
            if any(plane):
                try:
                    res = plane_real_intersections(curve, plane, disc_poly)
                    break
                except DegenerateInputError:
                    pass
            resampled += 1
        hist[res.with_multiplicity] = hist.get(res.with_multiplicity, 0) + 1
        best_m = max(best_m, res.with_multiplicity)
        best_d = max(best_d, res.distinct)
    return MaxRankEvidence(curve.point, trials, best_m, best_d, "with multiplicity", seed, resampled,
                           tuple(sorted(hist.items())))


@dataclass(frozen=True)
class BijectivityReport:
    ok: bool
    samples: int
    counts: tuple  # histogram ((distinct real x0 count, occurrences), ...)
    degenerate_ray: int  # distinct real roots over (x1, x2) = (0, 0)


def real_fiber_bijectivity_check(curve: SpaceCurveP3, samples: int, seed: int = 0,
                                 height: int = 10 ** 6) -> BijectivityReport:
    """For random (x1, x2) on the cone's shadow, count real x0 on the cubic."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(f"bij|{seed}")
    hist = {}
    for _ in range(samples):
        while True:
            x1 = Fraction(rng.randint(-height, height), rng.randint(1, height))
            x2 = Fraction(rng.randint(-height, height), rng.randint(1, height))
            if x1 != 0:
                break
        cub = curve.fiber_cubic(x1, x2, x2 * x2 / x1)
        n = K.count_real_roots(cub.to_ints())
        hist[n] = hist.get(n, 0) + 1
    degenerate = K.count_real_roots(curve.fiber_cubic(0, 0, 1).to_ints())
    ok = set(hist) == {1}
    return BijectivityReport(ok, samples, tuple(sorted(hist.items())), degenerate)
