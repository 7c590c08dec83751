"""Sparse multivariate polynomials over Q.

Used for ternary forms (plane curves), the P^3 example and symbolic
discriminants.  A polynomial is a dict mapping exponent tuples to nonzero
Fractions.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .poly_core import UniPoly, as_fraction

Exponent = Tuple[int, ...]


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Exponent, Fraction]] = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                c = as_fraction(c)
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def gens(cls, nvars: int) -> tuple:
        return tuple(cls.var(nvars, i) for i in range(nvars))

    # -- basic queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.nvars, other)
        return isinstance(other, MPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / as_fraction(other))
        return divide_exact(self, other)

    def __pow__(self, n: int):
        r = MPoly.constant(self.nvars, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    # -- calculus and evaluation ------------------------------------------
    def derivative(self, i: int) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MPoly(self.nvars, out)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Fraction:
        pt = [as_fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def evaluate_int(self, point: Sequence[int]) -> Fraction:
        return self.evaluate(point)

    def partial_evaluate(self, i: int, value) -> "MPoly":
        """Substitute x_i = value; the variable count is unchanged."""
        value = as_fraction(value)
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c * value ** k
        return MPoly(self.nvars, out)

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Compose with images[i] in place of x_i (images share an nvars)."""
        nv = images[0].nvars
        cache: Dict[Tuple[int, int], MPoly] = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k if k > 1 else (images[i] if k == 1 else MPoly.constant(nv, 1))
            return cache[key]

        out = MPoly(nv)
        for e, c in self.terms.items():
            term = MPoly.constant(nv, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def coeffs_in(self, i: int) -> list:
        """Coefficients as polynomials (same nvars, x_i absent), ascending in x_i."""
        n = self.degree_in(i)
        buckets = [dict() for _ in range(max(n + 1, 0))]
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            buckets[k][tuple(ne)] = c
        return [MPoly(self.nvars, b) for b in buckets]

    def to_unipoly(self, i: int) -> UniPoly:
        """Convert a polynomial involving only x_i to a UniPoly."""
        cs = [Fraction(0)] * (self.degree_in(i) + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            cs[e[i]] += c
        return UniPoly(tuple(cs))

    @classmethod
    def from_unipoly(cls, p: UniPoly, nvars: int, i: int) -> "MPoly":
        out = {}
        for k, c in enumerate(p.coeffs):
            e = [0] * nvars
            e[i] = k
            out[tuple(e)] = c
        return cls(nvars, out)

    def leading_term(self) -> Tuple[Exponent, Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def integer_terms(self) -> list:
        """Terms scaled to integers by a positive common factor: [(coef, exps)]."""
        from math import lcm
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        return [(int(c * den), e) for e, c in sorted(self.terms.items())]

    def __repr__(self):
        return f"MPoly({self.to_string()})"

    def to_string(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def divide_exact(a: MPoly, b: MPoly) -> MPoly:
    """Exact multivariate division a / b (lex order); raises if inexact."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lb_e, lb_c = b.leading_term()
    r = MPoly(a.nvars, dict(a.terms))
    q: Dict[Exponent, Fraction] = {}
    while not r.is_zero():
        e, c = r.leading_term()
        de = tuple(x - y for x, y in zip(e, lb_e))
        if any(k < 0 for k in de):
            raise ValueError("inexact multivariate division")
        qc = c / lb_c
        q[de] = q.get(de, 0) + qc
        r = r - MPoly(a.nvars, {de: qc}) * b
    return MPoly(a.nvars, q)


def det_mpoly(m: Sequence[Sequence[MPoly]]) -> MPoly:
    """Division-free determinant by memoized Laplace expansion along rows."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    nv = m[0][0].nvars
    memo: Dict[int, MPoly] = {}

    def minor(row: int, cols: int) -> MPoly:
        # determinant of rows row..n-1 restricted to the column bitmask cols
        if row == n:
            return MPoly.constant(nv, 1)
        if cols in memo:
            return memo[cols]
        total = MPoly(nv)
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                entry = m[row][j]
                if not entry.is_zero():
                    sub = minor(row + 1, cols & ~(1 << j))
                    if not sub.is_zero():
                        term = entry * sub
                        total = total + (term if sign > 0 else -term)
                sign = -sign
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)


def mpoly_resultant(p: MPoly, q: MPoly, var: int) -> MPoly:
    a = list(reversed(p.coeffs_in(var)))
    b = list(reversed(q.coeffs_in(var)))
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = MPoly(p.nvars)
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return det_mpoly(rows)


def mpoly_discriminant(p: MPoly, var: int) -> MPoly:
    """(-1)^(n(n-1)/2) Res_var(p, dp/dvar) / lc_var(p)."""
    n = p.degree_in(var)
    if n < 1:
        from .errors import DegreeError
        raise DegreeError("discriminant needs degree >= 1 in the variable")
    if n == 1:
        return MPoly.constant(p.nvars, 1)
    res = mpoly_resultant(p, p.derivative(var), var)
    lc = p.coeffs_in(var)[-1]
    q = divide_exact(res, lc)
    return -q if (n * (n - 1) // 2) % 2 else q


# ---------------------------------------------------------------------------
# parsing


_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.BitXor)


def parse_polynomial(text: str, names: Sequence[str] = ("x0", "x1", "x2")) -> MPoly:
    """Parse an arithmetic expression in the given variable names.

    Supports + - * / with rational constants, parentheses, and powers
    written with ** or ^.
    """
    nv = len(names)
    index = {n: i for i, n in enumerate(names)}
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MPoly.constant(nv, node.value)
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise ValueError(f"unknown variable {node.id!r}")
            return MPoly.var(nv, index[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            left = walk(node.left)
            if isinstance(node.op, ast.Pow):
                exp = walk(node.right)
                if exp.total_degree() > 0:
                    raise ValueError("exponent must be a constant")
                k = exp.constant_value()
                if k.denominator != 1 or k < 0:
                    raise ValueError("exponent must be a nonnegative integer")
                return left ** int(k)
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.total_degree() > 0:
                    raise ValueError("division by a non-constant")
                return left * (1 / right.constant_value())
        raise ValueError(f"unsupported expression element: {ast.dump(node)}")

    return walk(tree)


@lru_cache(maxsize=None)
def generic_discriminant(d: int) -> tuple:
    """Discriminant of c_0 + c_1 t + ... + c_d t^d as integer terms.

    Returns a tuple of (integer coefficient, exponent tuple over c_0..c_d).
    """
    cs = MPoly.gens(d + 1)
    t_coeffs = list(cs)
    # build p as polynomial in an extra variable through coefficient lists
    a = list(reversed(t_coeffs))
    b = list(reversed([c * i for i, c in enumerate(t_coeffs)][1:]))
    m, n = d, d - 1
    size = m + n
    zero = MPoly(d + 1)
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    res = det_mpoly(rows)
    disc = divide_exact(res, cs[d])
    if (d * (d - 1) // 2) % 2:
        disc = -disc
    return tuple((int(c), e) for e, c in sorted(disc.terms.items()))
