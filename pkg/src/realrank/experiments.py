"""Seeded experiment suites for the rank theorems.

Each runner returns a plain dataclass report whose ``violations`` list is
empty when every sampled instance behaves as the theorem predicts.  All
randomness flows from an explicit seed through ``random.Random``.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .apolarity import apolar_ideal, complex_rank
from .constructions import (
    PencilPoint,
    SpaceCurveP3,
    projected_complex_rank,
    projected_real_rank,
    real_fiber_bijectivity_check,
    sample_max_rank_evidence,
    verify_sos_discriminant,
)
from .errors import InconclusiveError
from .poly_core import BinaryForm
from .real_rank import is_hyperbolic, real_rank


# ---------------------------------------------------------------------------
# generators


def random_rational(rng: random.Random, height: int = 9) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def is_power_of_linear(f: BinaryForm) -> bool:
    return apolar_ideal(f).degrees[0] == 1


def random_coefficient_form(rng: random.Random, d: int, height: int = 9) -> BinaryForm:
    while True:
        f = BinaryForm(tuple(rng.randint(-height, height) for _ in range(d + 1)))
        if not f.is_zero() and not is_power_of_linear(f):
            return f


def random_linear(rng: random.Random, height: int = 6) -> Tuple[int, int]:
    while True:
        a, b = rng.randint(-height, height), rng.randint(-height, height)
        if a or b:
            return a, b


def random_hyperbolic(rng: random.Random, d: int, repeated: bool = True) -> BinaryForm:
    """A product of d real linear forms; roots may repeat when ``repeated``."""
    while True:
        factors: List[Tuple[int, int]] = []
        while len(factors) < d:
            lin = random_linear(rng)
            mult = rng.choice((1, 1, 1, 2, 3)) if repeated else 1
            factors.extend([lin] * min(mult, d - len(factors)))
        f = BinaryForm.from_linear_factors(factors, rng.choice((-3, -1, 1, 2)))
        if not is_power_of_linear(f):
            if repeated or is_hyperbolic(f).isolation.distinct_count == d:
                return f


def random_non_hyperbolic(rng: random.Random, d: int) -> BinaryForm:
    """Real linear factors times at least one positive definite quadratic."""
    while True:
        nq = rng.randint(1, d // 2)
        f = BinaryForm((rng.choice((-2, -1, 1, 3)),))
        for _ in range(nq):
            a, b = random_linear(rng), random_linear(rng)
            # (a1 x + a2 y)^2 + (b1 x + b2 y)^2 with independent rows is definite
            if a[0] * b[1] - a[1] * b[0] == 0:
                continue
            q = BinaryForm.linear(*a) ** 2 + BinaryForm.linear(*b) ** 2
            f = f * q
        while f.degree < d:
            f = f * BinaryForm.linear(*random_linear(rng))
        if f.degree == d and not is_power_of_linear(f):
            return f


def mixed_form(rng: random.Random, d: int) -> BinaryForm:
    kind = rng.random()
    if kind < 0.4:
        return random_coefficient_form(rng, d)
    if kind < 0.7:
        return random_hyperbolic(rng, d)
    return random_non_hyperbolic(rng, d)


def distinct_rational_hyperbolic(rng: random.Random, d: int, height: int = 12
                                 ) -> Tuple[BinaryForm, List[Fraction]]:
    """A form with d distinct integer roots, returned with its roots."""
    roots = sorted(Fraction(r) for r in rng.sample(range(-height, height + 1), d))
    return BinaryForm.from_linear_factors([(1, -r) for r in roots]), roots


def random_interlacer(rng: random.Random, p_roots: Sequence[Fraction]) -> BinaryForm:
    """A form with one root in every arc of P^1(R) cut out by the roots of p."""
    r = sorted(Fraction(x) for x in p_roots)
    roots: List[Optional[Fraction]] = []
    for lo, hi in zip(r, r[1:]):
        roots.append(lo + (hi - lo) * Fraction(rng.randint(1, 99), 100))
    side = rng.randint(0, 2)
    if side == 0:
        roots.append(r[-1] + Fraction(rng.randint(1, 500), 100))
    elif side == 1:
        roots.append(r[0] - Fraction(rng.randint(1, 500), 100))
    else:
        roots.append(None)  # the root (1:0)
    factors = [(1, -x) if x is not None else (0, 1) for x in roots]
    return BinaryForm.from_linear_factors(factors, rng.choice((-2, -1, 1, 3)))


def lemma_family_form(rng: random.Random, d: int) -> BinaryForm:
    """y^(d-1) (a x + b y) + c l^d with small random rational parameters."""
    a, b, c = (random_rational(rng, 5) for _ in range(3))
    ell = BinaryForm.linear(*random_linear(rng, 4))
    f = BinaryForm.monomial(d - 1, d - 1) * BinaryForm.linear(a, b) + ell ** d * c
    if f.is_zero():
        return lemma_family_form(rng, d)
    return f


# ---------------------------------------------------------------------------
# reports


@dataclass
class SuiteReport:
    kind: str
    seed: int
    params: dict
    samples: int = 0
    violations: List[str] = field(default_factory=list)
    inconclusive: List[str] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    ranks: List[Tuple[int, int, int]] = field(default_factory=list)  # (degree, real, complex)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.inconclusive

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "params": self.params,
            "samples": self.samples,
            "violations": self.violations,
            "inconclusive": self.inconclusive,
            "summary": self.summary,
        }


def _fmt(f: BinaryForm) -> str:
    return ",".join(str(c) for c in f.coeffs)


def _check_bounds(rep: SuiteReport, d: int, r_real: int, r_cx: int, label: str):
    rep.ranks.append((d, r_real, r_cx))
    if r_real > d:
        rep.violations.append(f"{label}: real rank {r_real} exceeds degree {d}")
    if r_real < r_cx:
        rep.violations.append(f"{label}: real rank {r_real} below complex rank {r_cx}")


# ---------------------------------------------------------------------------
# suites


def hyperbolic_equivalence(degrees: Sequence[int], n: int, seed: int,
                           independent_up_to: int = 5) -> SuiteReport:
    """real_rank(f) == d exactly when f is hyperbolic.

    Up to degree ``independent_up_to`` every rank is recomputed without the
    hyperbolic fast path, so hyperbolic forms are certified by exhaustion.
    """
    rep = SuiteReport("hyperbolic-equivalence", seed, {"degrees": list(degrees), "n": n})
    t0 = time.perf_counter()
    tally: Dict[str, int] = {}
    independent = 0
    for d in degrees:
        rng = random.Random(f"hypeq|{seed}|{d}")
        for i in range(n):
            f = mixed_form(rng, d)
            hyp = bool(is_hyperbolic(f))
            rep.samples += 1
            try:
                cert = real_rank(f, seed=seed)
            except InconclusiveError as e:
                rep.inconclusive.append(f"d={d} [{_fmt(f)}]: {e}")
                continue
            r = cert.rank
            if d <= independent_up_to:
                # the same rank without the hyperbolic fast path, by exhaustion
                try:
                    slow = real_rank(f, use_hyperbolic_shortcut=False, seed=seed)
                except InconclusiveError as e:
                    rep.inconclusive.append(f"d={d} [{_fmt(f)}]: {e}")
                else:
                    independent += 1
                    if slow.rank != r:
                        rep.violations.append(f"d={d} [{_fmt(f)}]: fast path {r}, exhaustion {slow.rank}")
            _check_bounds(rep, d, r, complex_rank(f).rank, f"d={d} [{_fmt(f)}]")
            if (r == d) != hyp:
                rep.violations.append(f"d={d} [{_fmt(f)}]: rank {r}, hyperbolic={hyp}")
            key = f"d={d},{'hyp' if hyp else 'non'}"
            tally[key] = tally.get(key, 0) + 1
    rep.summary = {"by_class": tally, "independent_checks": independent}
    rep.seconds = time.perf_counter() - t0
    return rep


def reznick_direction(degrees: Sequence[int], n: int, seed: int) -> SuiteReport:
    """Hyperbolic forms (repeated roots allowed) have real rank d."""
    rep = SuiteReport("reznick", seed, {"degrees": list(degrees), "n": n})
    t0 = time.perf_counter()
    for d in degrees:
        rng = random.Random(f"reznick|{seed}|{d}")
        for i in range(n):
            f = random_hyperbolic(rng, d)
            cert = real_rank(f, seed=seed)
            rep.samples += 1
            _check_bounds(rep, d, cert.rank, complex_rank(f).rank, f"d={d} [{_fmt(f)}]")
            if cert.rank != d:
                rep.violations.append(f"d={d} [{_fmt(f)}]: rank {cert.rank}")
    rep.seconds = time.perf_counter() - t0
    return rep


def generic_complex_rank(degrees: Sequence[int], n: int, seed: int) -> SuiteReport:
    """Fraction of random forms whose complex rank is the generic value."""
    rep = SuiteReport("complex-generic", seed, {"degrees": list(degrees), "n": n})
    t0 = time.perf_counter()
    fractions = {}
    for d in degrees:
        rng = random.Random(f"cgen|{seed}|{d}")
        expect = math.ceil((d + 1) / 2)
        hits = 0
        for _ in range(n):
            f = BinaryForm(tuple(rng.randint(-100, 100) for _ in range(d + 1)))
            if f.is_zero():
                continue
            rep.samples += 1
            if complex_rank(f).rank == expect:
                hits += 1
        fractions[d] = hits / n
        if hits < 0.99 * n:
            rep.violations.append(f"d={d}: only {hits}/{n} forms have complex rank {expect}")
    rep.summary = {"generic_fraction": fractions}
    rep.seconds = time.perf_counter() - t0
    return rep


def typical_rank(d: int, n_interlacers: int, n_random: int, seed: int) -> SuiteReport:
    """Projections from a hyperbolic center: interlacers give d, random cosets give ceil(d/2)."""
    rep = SuiteReport("typical-rank", seed, {"d": d, "interlacers": n_interlacers, "random": n_random})
    t0 = time.perf_counter()
    rng = random.Random(f"typical|{seed}|{d}")
    p, roots = distinct_rational_hyperbolic(rng, d)
    rep.params["center"] = _fmt(p)
    minimal = math.ceil(d / 2)
    inter_values = []
    for i in range(n_interlacers):
        q = random_interlacer(rng, roots)
        pr = projected_real_rank(PencilPoint(p, q), seed=seed)
        rep.samples += 1
        inter_values.append(pr.value)
        _check_bounds(rep, d, pr.value, 1, f"interlacer {i}")
        if pr.value != d:
            rep.violations.append(f"interlacer [{_fmt(q)}]: projected real rank {pr.value}")
    rand_values = []
    incomplete = 0
    for i in range(n_random):
        q = random_coefficient_form(rng, d)
        if q.is_proportional(p):
            continue
        pr = projected_real_rank(PencilPoint(p, q), seed=seed)
        rep.samples += 1
        rand_values.append(pr.value)
        incomplete += not pr.complete
        if pr.value < minimal:
            rep.violations.append(f"coset [{_fmt(q)}]: rank {pr.value} below {minimal}")
    hist = {v: rand_values.count(v) for v in sorted(set(rand_values))}
    frac = hist.get(minimal, 0) / max(1, len(rand_values))
    if any(v > minimal for v in rand_values) and frac < 0.9:
        rep.violations.append(f"random cosets: {frac:.0%} at rank {minimal}, histogram {hist}")
    all_values = inter_values + rand_values
    if all_values and max(all_values) > 2 * minimal:
        rep.violations.append(f"maximal rank {max(all_values)} exceeds twice the minimal typical rank")
    rep.summary = {
        "interlacer_ranks": {v: inter_values.count(v) for v in sorted(set(inter_values))},
        "random_ranks": hist,
        "fraction_minimal": frac,
        "incomplete_searches": incomplete,
    }
    rep.seconds = time.perf_counter() - t0
    return rep


def gap_experiment(d: int, n: int, seed: int) -> SuiteReport:
    """Interlacers of a hyperbolic center: real rank d, complex rank at most ceil((d+1)/2)."""
    rep = SuiteReport("gap", seed, {"d": d, "n": n})
    t0 = time.perf_counter()
    rng = random.Random(f"gap|{seed}|{d}")
    p, roots = distinct_rational_hyperbolic(rng, d)
    rep.params["center"] = _fmt(p)
    bound = math.ceil((d + 1) / 2)
    gaps = []
    for i in range(n):
        q = random_interlacer(rng, roots)
        pt = PencilPoint(p, q)
        pr = projected_real_rank(pt, seed=seed)
        pc = projected_complex_rank(pt, seed=seed)
        rep.samples += 1
        _check_bounds(rep, d, pr.value, pc.value, f"interlacer {i}")
        if pr.value != d:
            rep.violations.append(f"interlacer [{_fmt(q)}]: real rank {pr.value}")
        if pc.value > bound:
            rep.violations.append(f"interlacer [{_fmt(q)}]: complex rank {pc.value} > {bound}")
        gaps.append(pr.value - pc.value)
    rep.summary = {"complex_bound": bound, "min_gap": min(gaps) if gaps else None,
                   "gaps": {g: gaps.count(g) for g in sorted(set(gaps))}}
    rep.seconds = time.perf_counter() - t0
    return rep


def lemma_family(degrees: Sequence[int], n: int, seed: int) -> SuiteReport:
    """y^(d-1)(ax+by) + c l^d has real rank <= d-1 or is hyperbolic."""
    rep = SuiteReport("lemma-family", seed, {"degrees": list(degrees), "n": n})
    t0 = time.perf_counter()
    for d in degrees:
        rng = random.Random(f"lemma|{seed}|{d}")
        for _ in range(n):
            f = lemma_family_form(rng, d)
            hyp = bool(is_hyperbolic(f))
            cert = real_rank(f, seed=seed, use_hyperbolic_shortcut=False) if not hyp else real_rank(f, seed=seed)
            rep.samples += 1
            _check_bounds(rep, d, cert.rank, complex_rank(f).rank, f"d={d} [{_fmt(f)}]")
            if not (cert.rank <= d - 1 or hyp):
                rep.violations.append(f"d={d} [{_fmt(f)}]: rank {cert.rank}, not hyperbolic")
    rep.seconds = time.perf_counter() - t0
    return rep


def p3_evidence(trials: int, bijectivity_samples: int, seed: int) -> SuiteReport:
    rep = SuiteReport("p3-evidence", seed, {"trials": trials, "bijectivity_samples": bijectivity_samples})
    t0 = time.perf_counter()
    curve = SpaceCurveP3()
    sos = verify_sos_discriminant()
    if not sos.ok:
        rep.violations.append(f"sum-of-squares identity fails: difference {sos.identity_difference}")
    bij = real_fiber_bijectivity_check(curve, bijectivity_samples, seed)
    if not bij.ok:
        rep.violations.append(f"fiber counts {bij.counts}")
    ev = sample_max_rank_evidence(curve, trials, seed)
    if ev.max_with_multiplicity > 2:
        rep.violations.append(f"a plane meets the curve in {ev.max_with_multiplicity} real points")
    rep.samples = trials + bijectivity_samples
    rep.summary = {
        "sos_identity": sos.ok,
        "sign_convention": sos.matching_sign,
        "bijectivity_counts": dict(bij.counts),
        "max_real_intersections": ev.max_with_multiplicity,
        "max_distinct": ev.max_distinct,
        "histogram": dict(ev.histogram),
    }
    rep.seconds = time.perf_counter() - t0
    return rep


def bounds_check(reports: Sequence[SuiteReport]) -> List[str]:
    """Re-check r <= d and r_real >= r_complex over every rank recorded by the suites."""
    out = []
    for rep in reports:
        for d, r, c in rep.ranks:
            if r > d or r < c:
                out.append(f"{rep.kind}: degree {d}, real {r}, complex {c}")
    return out


KINDS = {
    "hyperbolic-equivalence": "real rank d exactly for hyperbolic forms",
    "reznick": "hyperbolic forms have real rank d",
    "complex-generic": "generic complex rank ceil((d+1)/2)",
    "typical-rank": "projection from a hyperbolic center",
    "gap": "real/complex gap for interlacers",
    "lemma-family": "y^(d-1)(ax+by) + c l^d",
    "p3-evidence": "space curve in P^3 of real rank 4",
}
