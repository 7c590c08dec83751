"""Hyperbolicity, interlacing and the real Waring rank engine.

The rank search walks up the graded pieces of the apolar ideal.  A real
decomposition of length k exists iff (f^perp)_k contains a form whose k
roots are real and distinct.  Existence is shown by an explicit witness;
non-existence in a degree is certified exactly:

* below deg r2 every element is a multiple of r1;
* a 2-dimensional piece is a pencil, scanned arc by arc between the real
  roots of its discriminant;
* a 3-dimensional piece r1*(a u + b v) + r2 is decided by a cylindrical
  decomposition of the (a, b) plane along its discriminant curve.

Larger pieces are only searched; failing there raises InconclusiveError.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import kernels as K
from .apolarity import (
    ApolarIdeal,
    Decomposition,
    IntervalDecomposition,
    apolar_generators,
    apolar_ideal,
    catalecticant_from_weighted,
    complex_rank,
    recover_decomposition,
    to_weighted,
)
from .errors import DegreeError, InconclusiveError, ZeroPolynomialError
from .linalg import nullspace
from .poly_core import (
    BinaryForm,
    RootIsolation,
    UniPoly,
    det_fraction,
    directional_derivative,
    form_discriminant,
    form_divide,
    form_gcd,
    form_is_squarefree,
    form_real_squarefree,
    gap_samples,
    integerize,
    interpolate,
    isolate_real_roots,
    real_roots_of_ints,
)


# ---------------------------------------------------------------------------
# hyperbolicity


@dataclass(frozen=True)
class HyperbolicityResult:
    hyperbolic: bool
    isolation: RootIsolation

    def __bool__(self):
        return self.hyperbolic


def is_hyperbolic(f: BinaryForm) -> HyperbolicityResult:
    """All d projective roots real (with multiplicity, (1:0) included)."""
    if f.is_zero():
        raise ZeroPolynomialError("hyperbolicity of the zero form")
    iso = isolate_real_roots(f)
    return HyperbolicityResult(iso.real_count_with_multiplicity == f.degree, iso)


def _is_hyperbolic_fast(f: BinaryForm) -> bool:
    p = f.dehomogenize()
    if p.degree <= 0:
        return True
    ints = p.to_ints()
    total = 0
    from .poly_core import squarefree_decomposition_ints
    for g, m in squarefree_decomposition_ints(ints):
        n = K.count_real_roots(g)
        if n != len(g) - 1:
            return False
        total += m * n
    return total == p.degree


# ---------------------------------------------------------------------------
# interlacing


@dataclass(frozen=True)
class InterlacingReport:
    interlaces: bool
    common_factor: BinaryForm
    reduced: Tuple[BinaryForm, BinaryForm]
    circular_order: tuple  # labels 'f' / 'g' in circular order, (1:0) last
    reason: str = ""


def _circular_labels(fr: BinaryForm, gr: BinaryForm):
    fi = isolate_real_roots(fr)
    gi = isolate_real_roots(gr)
    items = [(r, "f") for r in fi.roots] + [(r, "g") for r in gi.roots]
    # refine until every pair of intervals is disjoint
    while True:
        items.sort(key=lambda it: it[0].midpoint())
        clash = False
        for i in range(len(items) - 1):
            a, b = items[i][0], items[i + 1][0]
            if a.hi > b.lo or (a.is_exact and b.is_exact and a.lo == b.lo):
                clash = True
                items[i] = (a.bisect_once(), items[i][1])
                items[i + 1] = (b.bisect_once(), items[i + 1][1])
        if not clash:
            break
    labels = [lab for _, lab in items]
    if fi.infinity_multiplicity:
        labels.append("f")
    if gi.infinity_multiplicity:
        labels.append("g")
    return labels, fi, gi


def interlaces(f: BinaryForm, g: BinaryForm) -> InterlacingReport:
    """Strict circular alternation of the roots after removing the common factor."""
    if f.degree != g.degree:
        raise DegreeError("interlacing needs forms of the same degree")
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomialError("interlacing of a zero form")
    h = form_gcd(f, g)
    fr, gr = form_divide(f, h), form_divide(g, h)
    if fr.degree == 0:
        return InterlacingReport(True, h, (fr, gr), (), "reduced parts are constant")
    if not (form_real_squarefree(fr) and form_real_squarefree(gr)):
        return InterlacingReport(False, h, (fr, gr), (), "a reduced part has a non-real or repeated root")
    labels, _, _ = _circular_labels(fr, gr)
    n = len(labels)
    ok = all(labels[i] != labels[(i + 1) % n] for i in range(n))
    return InterlacingReport(ok, h, (fr, gr), tuple(labels), "" if ok else "roots do not alternate")


def pencil_hyperbolic(f: BinaryForm, g: BinaryForm) -> bool:
    return interlaces(f, g).interlaces


def _pencil_discriminant(g1: BinaryForm, g2: BinaryForm) -> UniPoly:
    """form_discriminant(lam*g1 + g2) as a polynomial in lam."""
    k = g1.degree
    n = 2 * (k - 1)
    xs = list(range(n + 1))
    ys = [form_discriminant(g1 * Fraction(x) + g2) for x in xs]
    return interpolate(xs, ys)


def pencil_members_by_arc(g1: BinaryForm, g2: BinaryForm) -> List[BinaryForm]:
    """One member of every open arc of the pencil minus its discriminant locus.

    Any open condition on members (all roots real, or some root non-real)
    that holds somewhere on the pencil holds at one of these samples.
    """
    D = _pencil_discriminant(g1, g2)
    if D.is_zero():
        return []
    members = [g1]
    for lam in gap_samples(real_roots_of_ints(D.to_ints())):
        members.append(g1 * lam + g2)
    return members


def pencil_non_hyperbolic_member(f: BinaryForm, g: BinaryForm) -> Optional[Tuple[Fraction, Fraction]]:
    """(alpha, beta) with alpha f + beta g not hyperbolic, or None if none exists."""
    for cand in [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]:
        if not _is_hyperbolic_fast(f * cand[0] + g * cand[1]):
            return cand
    h = form_gcd(f, g)
    fr, gr = form_divide(f, h), form_divide(g, h)
    if fr.degree == 0:
        return None
    D = _pencil_discriminant(fr, gr)
    for lam in gap_samples(real_roots_of_ints(D.to_ints())) if not D.is_zero() else []:
        if not _is_hyperbolic_fast(fr * lam + gr):
            return (lam, Fraction(1))
    return None


def pencil_hyperbolic_sampled(f: BinaryForm, g: BinaryForm, samples: int = 100, seed: int = 0):
    """Randomized check: returns (all sampled members hyperbolic, first failing (alpha, beta))."""
    rng = random.Random(seed)
    for _ in range(samples):
        a = Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000))
        b = Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000))
        if a == 0 and b == 0:
            continue
        if not _is_hyperbolic_fast(f * a + g * b):
            return False, (a, b)
    return True, None


def all_directional_derivatives_hyperbolic(f: BinaryForm) -> bool:
    """Every directional derivative of f is hyperbolic (via one interlacing check)."""
    if f.degree < 3:
        raise DegreeError("needs degree >= 3")
    fx = directional_derivative(f, (1, 0))
    fy = directional_derivative(f, (0, 1))
    if fx.is_zero():
        return _is_hyperbolic_fast(fy)
    if fy.is_zero():
        return _is_hyperbolic_fast(fx)
    if not (_is_hyperbolic_fast(fx) and _is_hyperbolic_fast(fy)):
        return False
    return interlaces(fx, fy).interlaces


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class HyperbolicityWitness:
    isolation: RootIsolation


@dataclass(frozen=True)
class DegreeEvidence:
    k: int
    dimension: int
    method: str
    detail: str = ""


@dataclass(frozen=True)
class ExhaustionWitness:
    degrees: tuple


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    witness: Union[Decomposition, IntervalDecomposition, HyperbolicityWitness]
    lower_bound: Optional[ExhaustionWitness] = None
    apolar_element: Optional[BinaryForm] = None

    @property
    def kind(self) -> str:
        if isinstance(self.witness, HyperbolicityWitness):
            return "hyperbolicity"
        if isinstance(self.witness, IntervalDecomposition):
            return "interval-decomposition"
        return "decomposition"


# ---------------------------------------------------------------------------
# witness search


def _random_root(rng: random.Random) -> Fraction:
    # uniform angle on the circle, mapped to an affine root with small height
    import math
    theta = rng.uniform(-math.pi / 2, math.pi / 2)
    return Fraction(math.tan(theta)).limit_denominator(rng.choice((4, 16, 64, 256)))


def _constraint_rows(a: Sequence[Fraction], k: int) -> list:
    return [list(r) for r in catalecticant_from_weighted(a, k).entries]


def _solve_cofactor(rows: list, G: BinaryForm, c: int) -> Optional[BinaryForm]:
    """h of degree c with G*h in the kernel of the constraint rows (unique up to scale)."""
    cols = []
    for j in range(c + 1):
        prod = G * BinaryForm.monomial(c, j)
        cols.append(prod.coeffs)
    m = [[sum(r[i] * col[i] for i in range(len(col))) for col in cols] for r in rows]
    ker = nullspace(m, c + 1)
    if len(ker) != 1:
        return None
    return BinaryForm(tuple(ker[0]))


def _search_witness(f: BinaryForm, k: int, basis: Sequence[BinaryForm], rng: random.Random,
                    trials: int) -> Optional[BinaryForm]:
    d = f.degree
    m = len(basis)
    for g in basis:
        if form_real_squarefree(g):
            return g
    if m == 1:
        return None
    a = to_weighted(f).a
    rows = _constraint_rows(a, k)
    c = k + 1 - m
    j = k - c
    for _ in range(trials):
        # strategy A: fix j real roots, solve for the cofactor
        if j >= 1:
            roots = set()
            while len(roots) < j:
                roots.add(_random_root(rng))
            G = BinaryForm.from_linear_factors([(1, -r) for r in roots])
            h = _solve_cofactor(rows, G, c)
            if h is not None and not h.is_zero():
                g = G * h
                if form_real_squarefree(g):
                    return g
        # strategy B: random combination of the basis
        g = basis[0] * Fraction(rng.randint(-50, 50))
        for b in basis[1:]:
            g = g + b * Fraction(rng.randint(-50, 50))
        if not g.is_zero() and form_real_squarefree(g):
            return g
    # strategy C: exact scans of random pencils inside the component
    for _ in range(max(2, trials // 8)):
        g1 = basis[0] * Fraction(rng.randint(-20, 20))
        g2 = basis[0] * Fraction(rng.randint(-20, 20))
        for b in basis[1:]:
            g1 = g1 + b * Fraction(rng.randint(-20, 20))
            g2 = g2 + b * Fraction(rng.randint(-20, 20))
        if g1.is_zero() or g2.is_zero() or g1.is_proportional(g2):
            continue
        for mem in pencil_members_by_arc(g1, g2):
            if form_real_squarefree(mem):
                return mem
    # strategy D: thin witness sets; climb the cofactor discriminant in floats
    if c == 2 and j >= 1:
        return _climb_quadratic_cofactor(rows, j, rng, restarts=max(4, trials // 4))
    return None


CLIMB_MOVES = 200


def _float_cofactor(rows: list, angles: Sequence[float]) -> Optional[Tuple[List[float], float]]:
    """Quadratic h with G*h in the kernel, G having roots tan(angles); returns (G coeffs, disc score)."""
    import math
    G = [1.0]
    for th in angles:
        # multiply by cos(th) x - sin(th) y, root tan(th)
        cth, sth = math.cos(th), math.sin(th)
        nxt = [0.0] * (len(G) + 1)
        for i, g in enumerate(G):
            nxt[i] += g * cth
            nxt[i + 1] -= g * sth
        G = nxt
    n = len(G) + 2
    cols = []
    for jj in range(3):
        col = [0.0] * n
        for i, g in enumerate(G):
            col[i + jj] = g
        cols.append(col)
    m = [[sum(float(r[i]) * col[i] for i in range(n)) for col in cols] for r in rows]
    best, h = 0.0, None
    for a in range(len(m)):
        for b in range(a + 1, len(m)):
            u, v = m[a], m[b]
            cr = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
            nrm = sum(x * x for x in cr)
            if nrm > best:
                best, h = nrm, cr
    if h is None:
        return None
    nrm = sum(x * x for x in h)
    return G, (h[1] * h[1] - 4 * h[0] * h[2]) / nrm


def _climb_quadratic_cofactor(rows: list, j: int, rng: random.Random, restarts: int) -> Optional[BinaryForm]:
    import math
    for _ in range(restarts):
        th = [rng.uniform(-math.pi / 2, math.pi / 2) for _ in range(j)]
        cur = _float_cofactor(rows, th)
        if cur is None:
            continue
        score, step = cur[1], 0.4
        moves = 0
        # when no witness exists the score creeps towards 0 along a ridge; the cap ends the climb
        while step > 1e-9 and moves < CLIMB_MOVES:
            moves += 1
            improved = False
            for i in range(j):
                for sgn in (1, -1):
                    trial = list(th)
                    trial[i] += sgn * step
                    res = _float_cofactor(rows, trial)
                    if res is not None and res[1] > score:
                        th, score, improved = trial, res[1], True
            if score > 0:
                g = _exact_from_angles(rows, th)
                if g is not None:
                    return g
            if not improved:
                step /= 2
    return None


def _exact_from_angles(rows: list, th: Sequence[float]) -> Optional[BinaryForm]:
    import math
    for den in (2 ** 8, 2 ** 16, 2 ** 32, 2 ** 52):
        roots = {Fraction(math.tan(t)).limit_denominator(den) for t in th}
        if len(roots) < len(th):
            continue
        G = BinaryForm.from_linear_factors([(1, -r) for r in roots])
        h = _solve_cofactor(rows, G, 2)
        if h is not None and not h.is_zero():
            g = G * h
            if form_real_squarefree(g):
                return g
    return None


def _top_degree_witness(f: BinaryForm, rng: random.Random) -> BinaryForm:
    """At k = d the apolar piece is a hyperplane; fix d-1 roots and solve for the last."""
    d = f.degree
    a = to_weighted(f).a
    rows = _constraint_rows(a, d)
    for _ in range(1000):
        roots = set()
        while len(roots) < d - 1:
            roots.add(_random_root(rng))
        G = BinaryForm.from_linear_factors([(1, -r) for r in roots])
        h = _solve_cofactor(rows, G, 1)
        if h is None or h.is_zero():
            continue
        g = G * h
        if form_real_squarefree(g):
            return g
    raise InconclusiveError("no top-degree witness found")


# ---------------------------------------------------------------------------
# exact non-existence certificates


def _pencil_has_witness(g1: BinaryForm, g2: BinaryForm) -> Optional[BinaryForm]:
    for mem in pencil_members_by_arc(g1, g2):
        if form_real_squarefree(mem):
            return mem
    return None


def _psc(P: list, Q: list, j: int) -> Fraction:
    """j-th principal subresultant coefficient of P, Q (descending coefficient lists)."""
    m, n = len(P) - 1, len(Q) - 1
    size = m + n - 2 * j
    rows = []
    for i in range(n - j):
        rows.append([0] * i + list(P) + [0] * (n - j - 1 - i))
    for i in range(m - j):
        rows.append([0] * i + list(Q) + [0] * (m - j - 1 - i))
    return det_fraction([row[:size] for row in rows])


def _bivariate_interpolate(fun, deg_a: int, deg_b: int) -> List[UniPoly]:
    """Interpolate fun(alpha, beta) -> Fraction; returns coefficients in beta as UniPolys in alpha."""
    a_nodes = list(range(deg_a + 1))
    b_nodes = list(range(deg_b + 1))
    per_alpha = []
    for av in a_nodes:
        per_alpha.append(interpolate(b_nodes, [fun(Fraction(av), Fraction(bv)) for bv in b_nodes]))
    out = []
    for j in range(deg_b + 1):
        ys = [p.coeffs[j] if j < len(p.coeffs) else Fraction(0) for p in per_alpha]
        out.append(interpolate(a_nodes, ys))
    while out and out[-1].is_zero():
        out.pop()
    return out


def _eval_in_alpha(coeffs: List[UniPoly], alpha: Fraction) -> UniPoly:
    return UniPoly(tuple(c(alpha) for c in coeffs))


def _projection_polynomial(delta: List[UniPoly]) -> Optional[UniPoly]:
    """lc_beta(Delta) times the first non-vanishing principal subresultant coefficient."""
    n = len(delta) - 1
    lc = delta[-1]
    if n <= 0:
        return lc
    deg_alpha = max(c.degree for c in delta)
    d_delta = [c * i for i, c in enumerate(delta)][1:]
    for j in range(0, n):
        # psc_j is a polynomial in alpha of degree at most (2n - 1 - 2j) * deg_alpha
        bound = (2 * n - 1 - 2 * j) * max(deg_alpha, 0)
        xs = list(range(bound + 1))
        ys = []
        for x in xs:
            P = [c(Fraction(x)) for c in reversed(delta)]
            Q = [c(Fraction(x)) for c in reversed(d_delta)]
            ys.append(_psc(P, Q, j))
        psc = interpolate(xs, ys)
        if not psc.is_zero():
            return lc * psc
    return lc


def _cad_witness(r1: BinaryForm, r2: BinaryForm) -> Tuple[Optional[BinaryForm], int]:
    """Decide whether r1*(a u + b v) + r2 has distinct real roots for some (a, b).

    Returns (witness or None, number of sampled cells).
    """
    k = r2.degree
    lu = BinaryForm((1, 0))
    lv = BinaryForm((0, 1))
    pu, pv = r1 * lu, r1 * lv

    def member(a: Fraction, b: Fraction) -> BinaryForm:
        return pu * a + pv * b + r2

    D = 2 * (k - 1)
    delta = _bivariate_interpolate(lambda a, b: form_discriminant(member(a, b)), D, D)
    if not delta:
        return None, 0
    proj = _projection_polynomial(delta)
    alphas = gap_samples(real_roots_of_ints(proj.to_ints())) if proj.degree >= 1 else [Fraction(0)]
    cells = 0
    for a0 in alphas:
        line = _eval_in_alpha(delta, a0)
        betas = gap_samples(real_roots_of_ints(line.to_ints())) if line.degree >= 1 else [Fraction(0)]
        for b0 in betas:
            cells += 1
            g = member(a0, b0)
            if form_real_squarefree(g):
                return g, cells
    return None, cells


# ---------------------------------------------------------------------------
# the rank engine


def _certificate_for(f: BinaryForm, g: BinaryForm, evidence: list) -> RankCertificate:
    dec = recover_decomposition(f, g)
    return RankCertificate(g.degree, dec, ExhaustionWitness(tuple(evidence)), g)


def _rng_for(f: BinaryForm, seed: int, k: int) -> random.Random:
    return random.Random(f"{seed}|{k}|" + ",".join(str(c) for c in f.coeffs))


def real_rank(f: BinaryForm, *, use_hyperbolic_shortcut: bool = True, max_rank: Optional[int] = None,
              seed: int = 0, trials: int = 48, ideal: Optional[ApolarIdeal] = None
              ) -> Optional[RankCertificate]:
    """Real Waring rank of f with a certificate.

    With ``max_rank`` the search stops once ranks above the cap are
    certified impossible to attain below it, returning None.
    """
    if f.is_zero():
        raise ZeroPolynomialError("real rank of the zero form")
    d = f.degree
    if d == 0:
        return RankCertificate(1, Decomposition(((f.coeffs[0], (Fraction(1), Fraction(0))),), 0))
    ideal = ideal or apolar_ideal(f)
    s, t = ideal.degrees
    r1, r2 = ideal.r1, ideal.r2
    evidence: list = []
    if s == 1:
        return _certificate_for(f, r1, evidence)
    if use_hyperbolic_shortcut and _is_hyperbolic_fast(f):
        if max_rank is not None and d > max_rank:
            return None
        return RankCertificate(d, HyperbolicityWitness(isolate_real_roots(f)), None, None)
    cap = d if max_rank is None else min(d, max_rank)
    # degrees below t: only multiples of r1
    if s <= cap and form_real_squarefree(r1):
        return _certificate_for(f, r1, evidence)
    for k in range(s, min(t, cap + 1)):
        evidence.append(DegreeEvidence(k, k - s + 1, "multiples-of-r1",
                                       "r1 has a non-real or repeated root"))
    for k in range(t, cap + 1):
        basis = list(ideal.component(k))
        dim = len(basis)
        rng = _rng_for(f, seed, k)
        if k == d:
            g = _search_witness(f, k, basis, rng, max(4, trials // 4)) or _top_degree_witness(f, rng)
            return _certificate_for(f, g, evidence)
        g = _search_witness(f, k, basis, rng, trials)
        if g is not None:
            return _certificate_for(f, g, evidence)
        if dim == 2:
            g = _pencil_has_witness(basis[0], basis[1])
            if g is not None:
                return _certificate_for(f, g, evidence)
            evidence.append(DegreeEvidence(k, dim, "pencil-arcs", "no arc of the pencil is real-rooted"))
        elif dim == 3 and k == s + 1 and t == k:
            g, cells = _cad_witness(r1, r2)
            if g is not None:
                return _certificate_for(f, g, evidence)
            evidence.append(DegreeEvidence(k, dim, "cylindrical-decomposition",
                                           f"{cells} sample cells, none real-rooted"))
        else:
            g = _search_witness(f, k, basis, rng, trials * 8)
            if g is not None:
                return _certificate_for(f, g, evidence)
            raise InconclusiveError(
                f"no witness found in degree {k} (dimension {dim}) and no exact certificate available")
    return None


# ---------------------------------------------------------------------------
# lemma shape test


@dataclass(frozen=True)
class LemmaShape:
    kind: str  # "monomial", "binomial" or "none"
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    ell: Optional[Tuple[Fraction, Fraction]] = None


def check_lemma_apolar_shape(h: BinaryForm) -> LemmaShape:
    """Is h a multiple of y^n, or of the form a y^n + b l^n (n = deg h)?"""
    n = h.degree
    if n < 2:
        raise DegreeError("needs degree >= 2")
    r1, _ = apolar_generators(h)
    y_dual = (Fraction(0), Fraction(1))
    if r1.degree == 1:
        # h is a power of the linear form dual to the root of r1
        u, v = r1.coeffs
        ell = (-v, u)  # root (alpha:beta) of u*U + v*V is (-v : u)
        if ell[0] == 0:
            return LemmaShape("monomial", h.coeffs[-1], Fraction(0), y_dual)
        dec = recover_decomposition(h, r1)
        (c, lin), = dec.terms
        return LemmaShape("binomial", Fraction(0), c, lin)
    if r1.degree != 2 or not form_real_squarefree(r1):
        return LemmaShape("none")
    # one root of r1 must be (0:1), i.e. r1 divisible by the dual variable u
    if r1.coeffs[2] != 0:
        return LemmaShape("none")
    dec = recover_decomposition(h, r1)
    a = b = Fraction(0)
    ell = None
    for c, lin in dec.terms:
        if lin[0] == 0:
            a = c * lin[1] ** n
        else:
            b, ell = c, lin
    if ell is None:
        return LemmaShape("monomial", a, Fraction(0), y_dual)
    return LemmaShape("binomial", a, b, ell)
