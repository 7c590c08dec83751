"""Rasterized rank maps of P^2(R) over an affine chart, with JSON and SVG output."""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import RealRankError
from ..poly_core import as_fraction
from .classify import INCONCLUSIVE, RANK1, RANK2, RANK3, chart_form, classify_in_chart
from .curve import PlaneCurve
from .flexes import FlexRecord, odd_tangent_set

CODES = {RANK1: "1", RANK2: "2", RANK3: "3", INCONCLUSIVE: "?"}
NEAR_H = "H"
SCHEMA = "realrank.regionmap/1"


class RegionInvariantError(RealRankError):
    """Rank-3 cells do not form whole components of the complement of the H buffer."""


@dataclass(frozen=True)
class Chart:
    """Points origin + a*a_dir + b*b_dir for (a, b) in the box [a0, a1] x [b0, b1]."""

    origin: Tuple[Fraction, Fraction, Fraction]
    a_dir: Tuple[Fraction, Fraction, Fraction]
    b_dir: Tuple[Fraction, Fraction, Fraction]
    box: Tuple[Fraction, Fraction, Fraction, Fraction]
    name: str = "custom"

    def __post_init__(self):
        for name in ("origin", "a_dir", "b_dir", "box"):
            object.__setattr__(self, name, tuple(as_fraction(v) for v in getattr(self, name)))
        a0, a1, b0, b1 = self.box
        if not (a0 < a1 and b0 < b1):
            raise ValueError("empty chart box")
        o, a, b = self.origin, self.a_dir, self.b_dir
        det = (o[0] * (a[1] * b[2] - a[2] * b[1]) - o[1] * (a[0] * b[2] - a[2] * b[0])
               + o[2] * (a[0] * b[1] - a[1] * b[0]))
        if det == 0:
            raise ValueError("chart vectors are linearly dependent")

    @classmethod
    def standard(cls, index: int, box: Sequence) -> "Chart":
        """The affine chart x_index = 1 with the remaining coordinates in order."""
        e = [[1 if i == j else 0 for i in range(3)] for j in range(3)]
        others = [i for i in range(3) if i != index]
        return cls(e[index], e[others[0]], e[others[1]], box, f"x{index}=1")

    def point(self, a, b) -> Tuple[Fraction, Fraction, Fraction]:
        return tuple(self.origin[i] + a * self.a_dir[i] + b * self.b_dir[i] for i in range(3))

    def line_in_chart(self, line: Sequence) -> Tuple[float, float, float]:
        """(gamma, alpha, beta) with line = gamma + alpha*a + beta*b on the chart."""
        g = sum(float(line[i]) * float(self.origin[i]) for i in range(3))
        al = sum(float(line[i]) * float(self.a_dir[i]) for i in range(3))
        be = sum(float(line[i]) * float(self.b_dir[i]) for i in range(3))
        return g, al, be


@dataclass
class RegionMap:
    curve: str
    degree: int
    chart: Chart
    width: int
    height: int
    rows: List[str]  # rows[j][i]; j = 0 is the bottom row (smallest b)
    lines: List[Tuple[Fraction, Fraction, Fraction]]
    theta_budget: int
    seed: int
    method: str = "exact"
    rank3_components: int = 0
    lines_adjacent_to_rank3: Tuple[int, ...] = ()

    def cell(self, i: int, j: int) -> str:
        return self.rows[j][i]

    def center(self, i: int, j: int) -> Tuple[Fraction, Fraction]:
        a0, a1, b0, b1 = self.chart.box
        return (a0 + (a1 - a0) * (2 * i + 1) / (2 * self.width),
                b0 + (b1 - b0) * (2 * j + 1) / (2 * self.height))

    def counts(self) -> Dict[str, int]:
        out = {c: 0 for c in "123H?"}
        for r in self.rows:
            for ch in r:
                out[ch] += 1
        return out

    def to_json(self) -> dict:
        c = self.chart
        return {
            "schema": SCHEMA,
            "curve": self.curve,
            "degree": self.degree,
            "chart": {
                "name": c.name,
                "origin": [str(v) for v in c.origin],
                "a_dir": [str(v) for v in c.a_dir],
                "b_dir": [str(v) for v in c.b_dir],
                "box": [str(v) for v in c.box],
            },
            "resolution": [self.width, self.height],
            "theta_budget": self.theta_budget,
            "method": self.method,
            "seed": self.seed,
            "legend": {"1": RANK1, "2": RANK2, "3": RANK3, "H": "near_H", "?": INCONCLUSIVE},
            "rows_bottom_up": list(self.rows),
            "odd_tangents": [[str(v) for v in ln] for ln in self.lines],
            "rank3_components": self.rank3_components,
            "lines_adjacent_to_rank3": list(self.lines_adjacent_to_rank3),
            "counts": self.counts(),
        }


# ---------------------------------------------------------------------------
# construction


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("REALRANK_THREADS", "1")))
    except ValueError:
        return 1


def _classify_rows(args):
    fc, degree, chart, width, height, j_range, theta_budget, method, corner_rows, line_geom, half_diag = args
    a0, a1, b0, b1 = chart.box
    out = []
    for j in j_range:
        row = []
        bc = b0 + (b1 - b0) * (2 * j + 1) / (2 * height)
        for i in range(width):
            ac = a0 + (a1 - a0) * (2 * i + 1) / (2 * width)
            # the buffer wins over the curve trace: cells near H are never classified
            x, y = float(ac), float(bc)
            if any(abs(g + al * x + be * y) <= half_diag * nrm for g, al, be, nrm in line_geom):
                row.append(NEAR_H)
                continue
            signs = {corner_rows[j][i], corner_rows[j][i + 1], corner_rows[j + 1][i], corner_rows[j + 1][i + 1]}
            if 0 in signs or (1 in signs and -1 in signs):
                row.append("1")
                continue
            pc = classify_in_chart(fc, degree, ac, bc, theta_budget, method)
            row.append(CODES[pc.kind])
        out.append("".join(row))
    return out


def _corner_signs(fc: Dict[tuple, int], chart: Chart, width: int, height: int) -> List[List[int]]:
    """Sign of the chart form at every grid corner (exact integer evaluation)."""
    a0, a1, b0, b1 = chart.box
    # corners a = (a0*W + i*(a1-a0)) / W; put everything over one denominator
    den = 1
    for v in (a0, a1, b0, b1):
        den = den * v.denominator // math.gcd(den, v.denominator)
    A0, A1, B0, B1 = (int(v * den) for v in (a0, a1, b0, b1))
    W, H = width, height
    rows = []
    for j in range(H + 1):
        bn = B0 * H + j * (B1 - B0)  # b = bn / (den*H)
        row = []
        for i in range(W + 1):
            an = A0 * W + i * (A1 - A0)  # a = an / (den*W)
            # f(1, a, b) scaled by (den*W*H)^d with z0 = den*W*H, z1 = an*H, z2 = bn*W
            z0, z1, z2 = den * W * H, an * H, bn * W
            s = 0
            for (p, q, r), c in fc.items():
                s += c * z0 ** p * z1 ** q * z2 ** r
            row.append((s > 0) - (s < 0))
        rows.append(row)
    return rows


def region_map(curve: PlaneCurve, chart: Chart, resolution: Tuple[int, int] = (400, 400),
               theta_budget: int = 16, seed: int = 0, tangents: Optional[Sequence[FlexRecord]] = None,
               check: bool = True, method: str = "exact") -> RegionMap:
    """Classify every cell center; cells near an odd-order tangent are marked H."""
    width, height = resolution
    if width < 1 or height < 1:
        raise ValueError("resolution must be at least 1x1")
    if theta_budget < 1:
        raise ValueError("theta budget must be >= 1")
    degree = curve.degree
    if tangents is None:
        tangents = odd_tangent_set(curve, seed=seed) if degree >= 3 else []
    lines = [t.tangent_approx() for t in tangents]
    fc = chart_form(curve.f, chart.origin, chart.a_dir, chart.b_dir)
    a0, a1, b0, b1 = chart.box
    ca, cb = float(a1 - a0) / width, float(b1 - b0) / height
    half_diag = 0.5 * math.hypot(ca, cb)
    line_geom = []
    for ln in lines:
        g, al, be = chart.line_in_chart(ln)
        nrm = math.hypot(al, be)
        if nrm > 0:
            line_geom.append((g, al, be, nrm))
    corners = _corner_signs(fc, chart, width, height)
    jobs = _worker_count()
    chunks = [range(k, height, jobs) for k in range(jobs)] if jobs > 1 else [range(height)]
    args = [(fc, degree, chart, width, height, ch, theta_budget, method, corners, line_geom, half_diag)
            for ch in chunks]
    rows: List[Optional[str]] = [None] * height
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_classify_rows, args))
    else:
        results = [_classify_rows(a) for a in args]
    for ch, res in zip(chunks, results):
        for j, r in zip(ch, res):
            rows[j] = r
    rmap = RegionMap(str(curve), degree, chart, width, height, rows, lines, theta_budget, seed, method)
    rmap.rank3_components = check_region_structure(rmap) if check else count_rank3_components(rmap)
    rmap.lines_adjacent_to_rank3 = tuple(adjacent_lines(rmap))
    return rmap


# ---------------------------------------------------------------------------
# structure checks


def _components(rmap: RegionMap, allowed) -> List[List[Tuple[int, int]]]:
    W, H = rmap.width, rmap.height
    seen = [[False] * W for _ in range(H)]
    comps = []
    for j in range(H):
        for i in range(W):
            if seen[j][i] or rmap.rows[j][i] not in allowed:
                continue
            comp = []
            dq = deque([(i, j)])
            seen[j][i] = True
            while dq:
                x, y = dq.popleft()
                comp.append((x, y))
                for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    if 0 <= nx < W and 0 <= ny < H and not seen[ny][nx] and rmap.rows[ny][nx] in allowed:
                        seen[ny][nx] = True
                        dq.append((nx, ny))
            comps.append(comp)
    return comps


def count_rank3_components(rmap: RegionMap) -> int:
    return len(_components(rmap, {"3"}))


def check_region_structure(rmap: RegionMap) -> int:
    """Every component of the cells outside the H buffer is all rank 3 or has no rank 3.

    Returns the number of rank-3 components; raises RegionInvariantError otherwise.
    Inconclusive cells are neutral.
    """
    n3 = 0
    for comp in _components(rmap, {"1", "2", "3", "?"}):
        kinds = {rmap.rows[y][x] for x, y in comp} - {"?"}
        if "3" in kinds:
            if kinds != {"3"}:
                x, y = next((x, y) for x, y in comp if rmap.rows[y][x] != "3")
                raise RegionInvariantError(
                    f"component mixes rank 3 with {sorted(kinds - {'3'})} (cell {x},{y})")
            n3 += 1
    if rmap.degree % 2 == 0 and n3:
        raise RegionInvariantError("rank-3 cells for an even-degree curve")
    return n3


def _line_distances(rmap: RegionMap, i: int, j: int) -> List[float]:
    a, b = (float(v) for v in rmap.center(i, j))
    out = []
    for ln in rmap.lines:
        g, al, be = rmap.chart.line_in_chart(ln)
        nrm = math.hypot(al, be)
        out.append(abs(g + al * a + be * b) / nrm if nrm > 0 else math.inf)
    return out


def cell_diagonal(rmap: RegionMap) -> float:
    a0, a1, b0, b1 = rmap.chart.box
    return math.hypot(float(a1 - a0) / rmap.width, float(b1 - b0) / rmap.height)


def rank3_boundary_cells(rmap: RegionMap) -> List[Tuple[int, int]]:
    """Rank-3 cells with a 4-neighbour that is not rank 3."""
    W, H = rmap.width, rmap.height
    out = []
    for j in range(H):
        for i in range(W):
            if rmap.rows[j][i] != "3":
                continue
            for nx, ny in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                if 0 <= nx < W and 0 <= ny < H and rmap.rows[ny][nx] != "3":
                    out.append((i, j))
                    break
    return out


def adjacent_lines(rmap: RegionMap, cells: float = 2.0) -> List[int]:
    """Indices of H lines within ``cells`` cell diagonals of some rank-3 boundary cell."""
    diag = cell_diagonal(rmap)
    hit = set()
    for i, j in rank3_boundary_cells(rmap):
        for k, dist in enumerate(_line_distances(rmap, i, j)):
            if dist <= cells * diag:
                hit.add(k)
    return sorted(hit)


def boundary_cells_off_lines(rmap: RegionMap, cells: float = 2.0) -> List[Tuple[int, int]]:
    """Rank-3 boundary cells farther than ``cells`` diagonals from every H line."""
    diag = cell_diagonal(rmap)
    return [(i, j) for i, j in rank3_boundary_cells(rmap)
            if all(d > cells * diag for d in _line_distances(rmap, i, j))]


# ---------------------------------------------------------------------------
# SVG


PALETTE = {"1": "#1a1a1a", "2": "#9ecae1", "3": "#fb6a4a", "H": "#d9d9d9", "?": "#ffd92f"}
LEGEND = (("3", "real rank 3"), ("2", "real rank 2"), ("1", "curve (rank 1)"),
          ("H", "near an odd-order tangent"), ("?", "inconclusive"))


def _clip(g: float, al: float, be: float, box) -> Optional[Tuple[Tuple[float, float], Tuple[float, float]]]:
    a0, a1, b0, b1 = (float(v) for v in box)
    pts = []
    if abs(be) > 1e-300:
        for a in (a0, a1):
            b = -(g + al * a) / be
            if b0 <= b <= b1:
                pts.append((a, b))
    if abs(al) > 1e-300:
        for b in (b0, b1):
            a = -(g + be * b) / al
            if a0 <= a <= a1:
                pts.append((a, b))
    pts = sorted(set((round(x, 9), round(y, 9)) for x, y in pts))
    if len(pts) < 2:
        return None
    return pts[0], pts[-1]


def render_svg(rmap: RegionMap, cell_px: Optional[int] = None) -> str:
    """Deterministic SVG 1.1 document for a region map."""
    W, H = rmap.width, rmap.height
    px = cell_px or max(1, 800 // max(W, H))
    pw, ph = W * px, H * px
    legend_h = 22 * len(LEGEND) + 10
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{pw}" height="{ph + legend_h}" '
        f'viewBox="0 0 {pw} {ph + legend_h}">',
        f'<title>Real rank regions: {_esc(rmap.curve)}</title>',
        f'<rect x="0" y="0" width="{pw}" height="{ph + legend_h}" fill="#ffffff"/>',
        '<g shape-rendering="crispEdges">',
    ]
    for code in ("2", "3", "H", "?", "1"):
        color = PALETTE[code]
        for j in range(H):
            row = rmap.rows[j]
            y = (H - 1 - j) * px
            i = 0
            while i < W:
                if row[i] != code:
                    i += 1
                    continue
                k = i
                while k < W and row[k] == code:
                    k += 1
                out.append(f'<rect x="{i * px}" y="{y}" width="{(k - i) * px}" height="{px}" fill="{color}"/>')
                i = k
    out.append("</g>")
    a0, a1, b0, b1 = (float(v) for v in rmap.chart.box)
    sx, sy = pw / (a1 - a0), ph / (b1 - b0)
    out.append('<g stroke="#08519c" stroke-width="1.5" fill="none">')
    for ln in rmap.lines:
        seg = _clip(*rmap.chart.line_in_chart(ln), rmap.chart.box)
        if seg is None:
            continue
        (xa, ya), (xb, yb) = seg
        out.append(f'<line x1="{(xa - a0) * sx:.3f}" y1="{(b1 - ya) * sy:.3f}" '
                   f'x2="{(xb - a0) * sx:.3f}" y2="{(b1 - yb) * sy:.3f}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="13">')
    for k, (code, label) in enumerate(LEGEND):
        y = ph + 8 + 22 * k
        out.append(f'<rect x="8" y="{y}" width="14" height="14" fill="{PALETTE[code]}" stroke="#000000"/>')
        out.append(f'<text x="30" y="{y + 12}">{label}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
