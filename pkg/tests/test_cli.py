import json

import pytest

from realrank.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_rank_of_cube(capsys):
    code, rep = run(capsys, "rank", "--coeffs", "1/1,0,0,0", "--seed", "0")
    assert code == 0
    assert rep["schema"] == "realrank.run/1"
    assert rep["results"]["rank"] == 1


def test_rank_of_hyperbolic_quartic(capsys):
    # x (x - y)(x - 2y)(x + 3y)
    code, rep = run(capsys, "rank", "--coeffs", "1,0,-7,6,0", "--seed", "0")
    assert code == 0
    assert rep["results"]["rank"] == 4
    assert rep["results"]["hyperbolic"] is True
    assert rep["results"]["kind"] == "hyperbolicity"


def test_complex_rank_of_fermat_cubic(capsys):
    code, rep = run(capsys, "rank", "--coeffs", "1,0,0,1", "--field", "complex")
    assert code == 0 and rep["results"]["rank"] == 2


def test_rank_from_json_file(capsys, tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"degree": 3, "coeffs": ["1", "0", "0", "1"]}))
    code, rep = run(capsys, "rank", "--json", str(path), "--seed", "1")
    assert code == 0 and rep["results"]["rank"] == 2


def test_rank_requires_seed(capsys):
    code, _ = run(capsys, "rank", "--coeffs", "1,0,1")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ("rank", "--coeffs", "1,a,3", "--seed", "0"),
    ("rank", "--coeffs", "0,0,0", "--seed", "0"),
    ("rank", "--coeffs", "1,2,3", "--degree", "3", "--seed", "0"),
    ("rank",),
    ("no-such-command",),
    ("region", "--preset", "figure1", "--resolution", "ax3", "--seed", "0"),
])
def test_usage_errors(capsys, argv):
    assert main(list(argv)) == 2


def test_hyperbolic_and_interlace(capsys):
    code, rep = run(capsys, "hyperbolic", "--coeffs", "1,0,-1")
    assert code == 0 and rep["results"]["hyperbolic"] is True
    code, rep = run(capsys, "interlace", "--coeffs", "1,0,-1", "--with-coeffs", "0,1,0")
    assert code == 0 and rep["results"]["interlaces"] is True


def test_project_interlacer(capsys):
    # p = x (x - y)(x - 2y); q = (x - y/2)(x - 3y/2)(x + y) has one root in each arc
    code, rep = run(capsys, "project", "--coeffs", "1,-1,-5/4,3/4", "--center", "1,-3,2,0", "--seed", "0")
    assert code == 0
    assert rep["results"]["rank"] == 3
    code, rep = run(capsys, "project", "--coeffs", "1,-1,-5/4,3/4", "--center", "1,-3,2,0",
                    "--field", "complex", "--seed", "0")
    assert code == 0 and rep["results"]["rank"] == 2


def test_experiment_small(capsys):
    code, rep = run(capsys, "experiment", "--kind", "hyperbolic-equivalence", "--degree", "3",
                    "--samples", "10", "--seed", "7")
    assert code == 0
    assert rep["results"]["violations"] == []


def test_experiment_requires_seed(capsys):
    assert main(["experiment", "--kind", "gap"]) == 2


def test_verify_p3(capsys):
    code, rep = run(capsys, "verify-p3", "--samples", "20", "--trials", "20", "--seed", "0")
    assert code == 0
    assert rep["results"]["sos_identity"] is True


def test_region_outputs_are_deterministic(capsys, tmp_path):
    outs = []
    for k in range(2):
        svg, js = tmp_path / f"m{k}.svg", tmp_path / f"m{k}.json"
        code, rep = run(capsys, "region", "--preset", "figure1", "--resolution", "12x12", "--seed", "0",
                        "--out-svg", str(svg), "--out-json", str(js))
        assert code == 0
        outs.append((svg.read_bytes(), js.read_bytes(), rep["results"]))
    assert outs[0] == outs[1]
    data = json.loads(outs[0][1])
    assert data["schema"] == "realrank.regionmap/1"
    assert data["rank3_components"] == 1


def test_region_even_degree_curve(capsys, tmp_path):
    svg = tmp_path / "q.svg"
    code, rep = run(capsys, "region", "--curve", "x1^4 + x2^4 - x0^4", "--box=-3/2,3/2,-3/2,3/2",
                    "--resolution", "10x10", "--seed", "0", "--out-svg", str(svg))
    assert code == 0
    assert rep["results"]["counts"].get("3", 0) == 0


def test_region_singular_curve_exit_code(capsys):
    code, rep = run(capsys, "region", "--curve", "x2^2*x0 - x1^2*(x1 + x0)", "--resolution", "4x4",
                    "--seed", "0")
    assert code == 3
    assert rep["results"]["error"]


def test_region_requires_seed(capsys):
    assert main(["region", "--preset", "figure1", "--resolution", "4x4"]) == 2
