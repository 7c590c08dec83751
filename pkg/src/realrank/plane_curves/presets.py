"""Curves and chart defaults for the two reference figures and the parity check."""

from __future__ import annotations

import random
from fractions import Fraction

from .curve import PlaneCurve
from .region import Chart

FIGURE1_CUBIC = "x2^2*x0 - (x1^2 + x0^2)*(x1 - x0)"
FIGURE2_QUINTIC = "x1^5 - x1^3*x2^2 - x0*(x0^4 - 19/20*x0^2*x2^2 + x2^4)"

FIGURE1_CHART = Chart.standard(0, (-3, 3, -3, 3))
FIGURE2_CHART = Chart.standard(0, (-3, 3, -3, 3))

PRESETS = {
    "figure1": (FIGURE1_CUBIC, FIGURE1_CHART),
    "figure2": (FIGURE2_QUINTIC, FIGURE2_CHART),
}


def figure1_curve() -> PlaneCurve:
    return PlaneCurve.parse(FIGURE1_CUBIC)


def figure2_curve() -> PlaneCurve:
    return PlaneCurve.parse(FIGURE2_QUINTIC)


def oval_quartic(seed: int) -> PlaneCurve:
    """A small seeded perturbation of x1^4 + x2^4 - x0^4; one smooth oval around (1:0:0)."""
    rng = random.Random(f"oval|{seed}")
    e1 = Fraction(rng.randint(-8, 8), 100)
    e2 = Fraction(rng.randint(-8, 8), 100)
    e3 = Fraction(rng.randint(1, 8), 100)
    text = (f"x1^4 + x2^4 - x0^4 + ({e1})*x0^2*x1^2 + ({e2})*x0*x1*x2^2 + ({e3})*x1^2*x2^2")
    return PlaneCurve.parse(text)


OVAL_CHART = Chart.standard(0, (Fraction(-3, 2), Fraction(3, 2), Fraction(-3, 2), Fraction(3, 2)))
