import math
import random
from fractions import Fraction

import pytest

from realrank.errors import DegenerateInputError, DegreeError, SingularCurveError
from realrank.plane_curves import (
    Chart,
    PlaneCurve,
    RegionInvariantError,
    classify_point,
    hessian,
    line_real_intersections,
    odd_tangent_set,
    real_flexes,
    region_map,
    render_svg,
    tangency_order,
)
from realrank.plane_curves.curve import NAMES
from realrank.plane_curves.presets import (
    FIGURE1_CHART,
    OVAL_CHART,
    figure1_curve,
    figure2_curve,
    oval_quartic,
)
from realrank.plane_curves.region import (
    RegionMap,
    adjacent_lines,
    boundary_cells_off_lines,
    check_region_structure,
)

F = Fraction

FERMAT = "x0^3 + x1^3 + x2^3"


@pytest.fixture(scope="module")
def cubic():
    return figure1_curve()


@pytest.fixture(scope="module")
def cubic_map(cubic):
    return region_map(cubic, FIGURE1_CHART, resolution=(24, 24))


# curves and Hessians


def test_curve_validation():
    with pytest.raises(DegenerateInputError):
        PlaneCurve.parse("x0^2*x1")
    with pytest.raises(ValueError):
        PlaneCurve.parse("x0^2 + x1")
    assert PlaneCurve.parse("x0*x1*x2").degree == 3


def test_hessian_of_triangle():
    assert hessian(PlaneCurve.parse("x0*x1*x2")).to_string(NAMES) == "2*x0*x1*x2"


def test_hessian_of_fermat_cubic():
    assert hessian(PlaneCurve.parse(FERMAT)).to_string(NAMES) == "216*x0*x1*x2"


def test_hessian_rejects_conic():
    with pytest.raises(DegreeError):
        hessian(PlaneCurve.parse("x0^2 + x1^2 - x2^2"))


# flexes


def test_flexes_of_figure_cubic(cubic):
    flexes = real_flexes(cubic)
    assert len(flexes) == 3
    assert all(r.tangency_order == 3 and r.parity == "odd" for r in flexes)


def test_flexes_of_figure_quintic():
    flexes = real_flexes(figure2_curve())
    assert len(flexes) == 5
    assert all(r.tangency_order >= 3 for r in flexes)
    assert len(odd_tangent_set(figure2_curve())) == 5


def test_flexes_of_fermat_cubic():
    curve = PlaneCurve.parse(FERMAT)
    flexes = real_flexes(curve)
    assert len(flexes) == 3
    # the real flexes sit on x0 + x1 + x2 = 0
    for r in flexes:
        x = r.point_approx()
        assert abs(sum(x)) < 1e-9
    assert len(odd_tangent_set(curve)) == 3


def test_odd_tangent_set_of_figure_cubic(cubic):
    lines = odd_tangent_set(cubic)
    assert len(lines) == 3
    approx = [tuple(float(v) for v in r.tangent_approx()) for r in lines]
    # one flex line is x0 = 0 (the line at infinity of the chart)
    assert any(abs(a[1]) < 1e-9 and abs(a[2]) < 1e-9 for a in approx)


# tangency orders


def test_tangency_order_transversal(cubic):
    assert tangency_order(cubic, (1, 1, 0), (0, 0, 1)) == 1


def test_tangency_order_ordinary_tangent(cubic):
    # gradient at (1, 1, 0) is (2, -2, 0)
    assert tangency_order(cubic, (1, 1, 0), (1, -1, 0)) == 2


def test_tangency_order_at_flex(cubic):
    assert tangency_order(cubic, (0, 0, 1), (1, 0, 0)) == 3


def test_tangents_at_rational_non_flex_points_have_order_two(cubic):
    # integer points (1, t, s) with s^2 = (t^2 + 1)(t - 1)
    pts = [(1, 1, 0)]
    for t in range(2, 40):
        val = (t * t + 1) * (t - 1)
        s = math.isqrt(val)
        if s * s == val:
            pts.append((1, t, s))
    for p in pts:
        g = [d.evaluate([F(v) for v in p]) for d in cubic.gradient()]
        assert tangency_order(cubic, p, g) <= 2


# line intersections


def test_line_through_two_curve_points(cubic):
    assert line_real_intersections(cubic, (1, 1, 0), (0, 0, 1)) >= 2


def test_line_intersections_degree_bound(cubic):
    rng = random.Random(0)
    for _ in range(100):
        p = tuple(F(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(2))
        q = tuple(F(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(3))
        try:
            n = line_real_intersections(cubic, (1,) + p, q)
        except ValueError:
            continue
        assert n <= 3


def test_lines_through_interior_point_meet_once(cubic):
    p = (1, F(-1), F(0))
    for k in range(64):
        # rational directions around the circle
        u, v = [(1, F(k, 8) - 2), (F(k, 8) - 2, 1)][k % 2]
        assert line_real_intersections(cubic, p, (u, v)) <= 1


# point classification


def test_classify_point_on_curve(cubic):
    assert classify_point(cubic, (1, 1, 0)).kind == "rank1"


def test_classify_point_outside_triangle(cubic):
    res = classify_point(cubic, (1, 2, 0))
    assert res.kind == "rank2"
    assert res.witness_line is not None and res.witness_count >= 2
    a, b, c = res.witness_line
    assert a * 1 + b * 2 + c * 0 == 0


def test_classify_point_inside_triangle(cubic):
    # the triangle is the wedge x1 < 0.8157 - 0.5368 |x2| in the chart x0 = 1
    for p in [(1, -1, 0), (1, -2, F(1, 2)), (1, 0, 0)]:
        assert classify_point(cubic, p).kind == "rank3"
        assert classify_point(cubic, p, method="sweep").kind == "rank3"


def test_classify_point_sweep_on_flex_line_is_not_rank3(cubic):
    assert classify_point(cubic, (0, 1, 0), method="sweep").kind == "inconclusive"


def test_classify_even_degree_never_rank3():
    curve = oval_quartic(0)
    rng = random.Random(2)
    for _ in range(40):
        p = (1, F(rng.randint(-30, 30), 10), F(rng.randint(-30, 30), 10))
        assert classify_point(curve, p).kind != "rank3"


def test_classify_stable_under_jitter(cubic_map, cubic):
    rng = random.Random(3)
    checked = 0
    for _ in range(100):
        i, j = rng.randrange(cubic_map.width), rng.randrange(cubic_map.height)
        code = cubic_map.cell(i, j)
        if code not in "23":
            continue
        a, b = cubic_map.center(i, j)
        da, db = F(rng.randint(-1000, 1000), 10 ** 6), F(rng.randint(-1000, 1000), 10 ** 6)
        got = classify_point(cubic, cubic_map.chart.point(a + da, b + db)).kind
        assert got == {"2": "rank2", "3": "rank3"}[code]
        checked += 1
    assert checked > 50


def test_singular_curve_rejected():
    nodal = PlaneCurve.parse("x2^2*x0 - x1^2*(x1 + x0)")
    with pytest.raises(SingularCurveError):
        region_map(nodal, FIGURE1_CHART, resolution=(4, 4))


# region maps


def test_region_map_figure1_small(cubic_map):
    assert cubic_map.rank3_components == 1
    assert len(cubic_map.lines) == 3
    assert cubic_map.counts()["3"] > 0
    assert boundary_cells_off_lines(cubic_map) == []
    # two flex lines cross the box; the third is the line at infinity
    assert cubic_map.lines_adjacent_to_rank3 == (0, 2)


def test_region_map_curve_cells_never_touch_rank3(cubic_map):
    m = cubic_map
    for j in range(m.height):
        for i in range(m.width):
            if m.cell(i, j) != "1":
                continue
            for x, y in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                if 0 <= x < m.width and 0 <= y < m.height:
                    assert m.cell(x, y) != "3"


def test_region_map_deterministic(cubic):
    a = region_map(cubic, FIGURE1_CHART, resolution=(12, 10))
    b = region_map(cubic, FIGURE1_CHART, resolution=(12, 10))
    assert a.to_json() == b.to_json()
    assert render_svg(a) == render_svg(b)


def test_region_map_parity_guard():
    rmap = region_map(oval_quartic(0), OVAL_CHART, resolution=(16, 16))
    assert rmap.counts().get("3", 0) == 0
    assert rmap.counts().get("1", 0) > 0


def test_region_map_sweep_matches_exact(cubic):
    exact = region_map(cubic, FIGURE1_CHART, resolution=(10, 10))
    sweep = region_map(cubic, FIGURE1_CHART, resolution=(10, 10), method="sweep")
    assert exact.rows == sweep.rows


def test_region_structure_violation_detected(cubic_map):
    rows = list(cubic_map.rows)
    j = next(j for j, r in enumerate(rows) if "3" in r)
    i = rows[j].index("3")
    # a rank-2 cell inside a rank-3 component breaks the structure
    k = i + 1 if rows[j][i + 1:i + 2] == "3" else i
    rows[j] = rows[j][:k] + "2" + rows[j][k + 1:]
    bad = RegionMap(cubic_map.curve, 3, cubic_map.chart, cubic_map.width, cubic_map.height,
                    rows, cubic_map.lines, 16, 0)
    with pytest.raises(RegionInvariantError):
        check_region_structure(bad)


def test_region_even_degree_rank3_rejected():
    rows = ["333", "333"]
    bad = RegionMap("x", 4, OVAL_CHART, 3, 2, rows, [], 16, 0)
    with pytest.raises(RegionInvariantError):
        check_region_structure(bad)


def test_chart_validation():
    with pytest.raises(ValueError):
        Chart((1, 0, 0), (0, 1, 0), (0, 2, 0), (-1, 1, -1, 1), "bad")
    with pytest.raises(ValueError):
        Chart.standard(0, (1, -1, -1, 1))


def test_region_map_resolution_validation(cubic):
    with pytest.raises(ValueError):
        region_map(cubic, FIGURE1_CHART, resolution=(0, 5))


# SVG


def test_svg_single_cell(cubic):
    rmap = region_map(cubic, FIGURE1_CHART, resolution=(1, 1))
    svg = render_svg(rmap)
    body = svg.split('<g shape-rendering="crispEdges">')[1].split("</g>")[0]
    assert body.count("<rect") == 1


def test_svg_without_rank3_has_no_rank3_fill():
    from realrank.plane_curves.region import PALETTE
    rmap = region_map(oval_quartic(0), OVAL_CHART, resolution=(8, 8))
    svg = render_svg(rmap)
    body = svg.split('<g shape-rendering="crispEdges">')[1].split("</g>")[0]
    assert PALETTE["3"] not in body
    assert svg.startswith("<?xml") and svg.endswith("</svg>\n")


def test_adjacent_lines_empty_without_rank3():
    rmap = region_map(oval_quartic(0), OVAL_CHART, resolution=(8, 8))
    assert adjacent_lines(rmap) == []
