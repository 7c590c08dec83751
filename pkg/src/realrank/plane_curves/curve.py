"""Ternary forms, Hessians and tangency orders along rational lines."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .. import kernels as K
from ..errors import DegenerateInputError, DegreeError, ZeroPolynomialError
from ..multivariate import MPoly, det_mpoly, parse_polynomial
from ..poly_core import as_fraction, integerize

NAMES = ("x0", "x1", "x2")


@dataclass(frozen=True, eq=False)
class PlaneCurve:
    """The curve V(f) in P^2 for a squarefree ternary form f."""

    f: MPoly

    def __post_init__(self):
        if self.f.nvars != 3:
            raise ValueError("a plane curve needs a form in three variables")
        if self.f.is_zero():
            raise ZeroPolynomialError("the zero form defines no curve")
        if not self.f.is_homogeneous():
            raise ValueError("the defining polynomial must be homogeneous")
        if self.f.total_degree() < 1:
            raise DegreeError("a plane curve has degree >= 1")
        if not _is_squarefree(self.f):
            raise DegenerateInputError("the defining form is not squarefree")

    @classmethod
    def parse(cls, text: str) -> "PlaneCurve":
        return cls(parse_polynomial(text, NAMES))

    @property
    def degree(self) -> int:
        return self.f.total_degree()

    def __call__(self, point: Sequence) -> Fraction:
        return self.f.evaluate([as_fraction(v) for v in point])

    def gradient(self):
        return tuple(self.f.derivative(i) for i in range(3))

    def integer_form(self) -> MPoly:
        """A positive rational multiple of f with coprime integer coefficients."""
        keys = sorted(self.f.terms)
        ints = integerize([self.f.terms[k] for k in keys])
        return MPoly(3, dict(zip(keys, ints)))

    def __str__(self):
        return self.f.to_string(NAMES)


def _is_squarefree(f: MPoly) -> bool:
    """Squarefree test on a generic line restriction family.

    A repeated factor of f shows up as a repeated factor of f restricted
    to every line; a squarefree f has a squarefree restriction to a line
    in general position.  Several fixed lines are tried.
    """
    d = f.total_degree()
    if d <= 1:
        return True
    for a, b, c in ((3, 7, 5), (5, -2, -3), (-11, 4, 7), (13, 17, -2), (2, -19, 11)):
        # line through (1, a, b) and (0, 1, c): x = (1, a + t, b + c t)
        g = f.substitute([
            MPoly.constant(1, 1),
            MPoly.constant(1, a) + MPoly.var(1, 0),
            MPoly.constant(1, b) + MPoly.var(1, 0) * c,
        ])
        coeffs = [Fraction(0)] * (d + 1)
        for e, coef in g.terms.items():
            coeffs[e[0]] = coef
        ints = K.strip(integerize(coeffs))
        # a drop of one degree is a simple root at (0 : 1 : c)
        if len(ints) - 1 < d - 1:
            continue
        if len(K.squarefree_part(ints)) == len(ints):
            return True
    return False


def hessian(curve: Union[PlaneCurve, MPoly]) -> MPoly:
    """Determinant of the matrix of second partials (degree 3(d - 2))."""
    f = curve.f if isinstance(curve, PlaneCurve) else curve
    if f.total_degree() < 3:
        raise DegreeError("the Hessian is only used for degree >= 3")
    grad = [f.derivative(i) for i in range(3)]
    m = [[grad[i].derivative(j) for j in range(3)] for i in range(3)]
    return det_mpoly(m)


def cross(u: Sequence, v: Sequence) -> tuple:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def restrict_to_line(f: MPoly, p: Sequence, w: Sequence) -> list:
    """Coefficients (ascending in t) of f(p + t w)."""
    t = MPoly.var(1, 0)
    images = [MPoly.constant(1, as_fraction(p[i])) + t * as_fraction(w[i]) for i in range(3)]
    g = f.substitute(images)
    out = [Fraction(0)] * (f.total_degree() + 1)
    for e, c in g.terms.items():
        out[e[0]] = c
    return out


def tangency_order(curve: PlaneCurve, point: Sequence, line: Sequence) -> int:
    """Intersection multiplicity of a rational line with the curve at a rational point."""
    if hasattr(point, "tangency_order") and line is None:
        return point.tangency_order
    p = tuple(as_fraction(v) for v in point)
    ln = tuple(as_fraction(v) for v in line)
    if not any(p) or not any(ln):
        raise ValueError("point and line must be nonzero")
    if sum(a * b for a, b in zip(p, ln)) != 0:
        raise DegenerateInputError("the point does not lie on the line")
    w = cross(ln, p)
    if not any(w):
        raise DegenerateInputError("degenerate line parametrization")
    g = restrict_to_line(curve.f, p, w)
    if all(c == 0 for c in g):
        raise DegenerateInputError("the line is a component of the curve")
    if g[0] != 0:
        raise DegenerateInputError("the point is not on the curve")
    return next(i for i, c in enumerate(g) if c != 0)
