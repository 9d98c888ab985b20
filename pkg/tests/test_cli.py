import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from tacnodal.cli import VERIFY_IDS, main
from tacnodal.render import point_marks, render_svg
from tacnodal.tropical import TropicalPolynomial, curve_from_subdivision, dual_subdivision

LINE = {"support": [{"i": 0, "j": 0, "val": "0"}, {"i": 1, "j": 0, "val": "1/2"},
                    {"i": 0, "j": 1, "val": "-1"}]}
DELTA_I = {"support": [{"i": 0, "j": 7, "val": "0"}, {"i": 1, "j": 0, "val": "0"},
                       {"i": 2, "j": 0, "val": "0"}]}


@pytest.fixture
def write(tmp_path):
    def _w(obj, name="in.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return _w


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_line(capsys, write):
    code, out, _ = run(capsys, "analyze", "--input", write(LINE))
    rep = json.loads(out)
    assert code == 0
    assert rep["rank"] == 2 and rep["rkexp"] == 2 and rep["d"] == 0
    assert rep["verdict"] == "NotTacnodal(no feature)"
    assert rep["duality"]["passed"]


def test_analyze_delta_i(capsys, write):
    code, out, _ = run(capsys, "analyze", "--input", write(DELTA_I))
    rep = json.loads(out)
    assert rep["verdict"] == "TropicalOneTacnodal(I)" and rep["case"] == "A"
    assert rep["gate"]["in_range"]


def test_analyze_text_and_output_file(capsys, write, tmp_path):
    dest = tmp_path / "out.txt"
    code, out, _ = run(capsys, "analyze", "--input", write(DELTA_I), "--format", "text",
                       "--output", str(dest))
    assert code == 0 and out == ""
    assert "TropicalOneTacnodal(I)" in dest.read_text()


@pytest.mark.parametrize("payload,field", [
    ({"support": [{"i": 0, "j": 0, "val": "1/0"}]}, "support[0].val"),
    ({"support": [{"i": 0, "j": 0}]}, "support[0].val"),
    ("{not json", "line 1"),
])
def test_bad_input_exits_2(capsys, write, payload, field):
    code, out, err = run(capsys, "analyze", "--input", write(payload))
    assert code == 2 and out == ""
    assert err.startswith("tacnodal analyze: error:") and field in err


def test_missing_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", "--input", str(tmp_path / "nope.json"))
    assert code == 2 and "error" in err


def test_seeded_random_input_is_deterministic(capsys):
    a = run(capsys, "analyze", "--seed", "5")[1]
    b = run(capsys, "analyze", "--seed", "5")[1]
    assert a == b and json.loads(a)["duality"]["passed"]


def test_verify_single_case(capsys):
    code, out, _ = run(capsys, "verify", "--case", "VII")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["verdict"] == "Tacnode"


def test_verify_edge_entry(capsys):
    code, out, _ = run(capsys, "verify", "--case", "EDGE_2")
    assert code == 0 and json.loads(out)["verdict"] == "NotTacnodalEdge"


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--case", "all")
    assert code == 0
    assert out.strip().splitlines()[-1] == f"{len(VERIFY_IDS)}/{len(VERIFY_IDS)} passed"


def test_verify_usage_errors(capsys):
    assert run(capsys, "verify")[0] == 2
    code, _, err = run(capsys, "verify", "--case", "XII")
    assert code == 2 and "unknown id" in err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--interior", "3", "--lengths", "1,1,1")
    rep = json.loads(out)
    assert code == 0 and len(rep["classes"]) == 2
    assert sorted(c["catalog"][0] for c in rep["classes"]) == ["I", "II"]
    code, out, _ = run(capsys, "enumerate", "--interior", "0", "--lengths", "1,1,1,1",
                       "--parallel", "no", "--format", "text")
    assert out.startswith("0 class(es)")


def test_enumerate_range_error(capsys):
    code, _, err = run(capsys, "enumerate", "--interior", "9", "--lengths", "1,1,1")
    assert code == 2 and "out of range" in err
    assert run(capsys, "enumerate", "--interior", "1", "--lengths", "a,b")[0] == 2


def test_render_is_deterministic(capsys, write):
    path = write(DELTA_I)
    a = run(capsys, "render", "--input", path)[1]
    b = run(capsys, "render", "--input", path)[1]
    assert a == b
    root = ET.fromstring(a)
    assert root.tag.endswith("svg")
    assert a.count('class="interior"') == 3


def test_render_line_rays():
    F = TropicalPolynomial.from_json(LINE)
    S = dual_subdivision(F)
    svg = render_svg(curve_from_subdivision(S), S)
    assert svg.count('class="ray"') == 3
    assert svg.count('class="interior"') == 0
    assert svg.count('class="boundary"') == 0


def test_point_marks():
    F = TropicalPolynomial.from_mapping({(0, 0): 0, (2, 0): 0, (0, 2): 0, (1, 1): -1, (1, 0): -1})
    marks = point_marks(dual_subdivision(F))
    assert marks[(0, 0)] == "vertex"
    assert marks[(1, 0)] == "boundary"
    assert marks[(1, 1)] == "boundary"  # on the hypotenuse, below the lift


def test_console_script(tmp_path):
    p = tmp_path / "line.json"
    p.write_text(json.dumps(LINE))
    r = subprocess.run([sys.executable, "-m", "tacnodal.cli", "analyze", "--input", str(p),
                        "--format", "text"], capture_output=True, text=True)
    assert r.returncode == 0 and "NotTacnodal" in r.stdout
