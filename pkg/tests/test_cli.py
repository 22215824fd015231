import io
import json
import subprocess
import sys

import pytest

from okounkov.cli import parse_divisor_expr, run
from okounkov.modelfile import model_from_dict, model_to_dict
from okounkov.models import builtin_names

BL = ["--model", "blowup-p3-2pts", "--param", "d=1"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_body_tetrahedron():
    code, out, _ = call("body", *BL, "--divisor", "1,0,0")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "vertices 4"
    assert lines[1:5] == ["0,0,0", "1,0,0", "1,0,1", "1,1,0"]
    assert "volume 1/6" in lines


def test_limiting_body_point():
    code, out, _ = call("limiting-body", *BL, "--divisor", "0,0,1")
    assert code == 0 and out.splitlines()[:2] == ["vertices 1", "0,0,0"]


def test_empty_slice_exit_2():
    code, _, err = call("slice", *BL, "--divisor", "1,1,0", "--t", "1/2")
    assert code == 2 and "empty slice" in err


def test_admissibility_exit_3():
    code, _, err = call("body", *BL, "--divisor", "3,-1,-1")
    assert code == 3 and "flip" in err
    code, out, _ = call("admissibility", *BL, "--divisor", "3,-1,-1")
    assert code == 3 and out.startswith("fail") and "failing flip" in out
    code, out, _ = call("admissibility", *BL, "--divisor", "2,1,1")
    assert code == 0 and out.startswith("pass")


@pytest.mark.parametrize("argv", [
    ["body", "--model", "blowup-p3-2pts"],
    ["frobnicate"],
    ["body", *BL, "--divisor", "1,0"],
    ["body", *BL, "--divisor", "x,0,0"],
    ["slice", *BL, "--divisor", "1,0,0"],
    ["oracle", *BL, "--divisor", "1,0,0"],
    ["body", *BL, "--divisor", "1,0,0", "--threads", "0"],
])
def test_usage_errors_exit_4(argv):
    assert call(*argv)[0] == 4


def test_domain_errors_exit_2():
    assert call("body", *BL, "--divisor=-1,0,0")[0] == 2
    assert call("body", "--model", "nope", "--divisor", "1")[0] == 2
    assert call("body", "--model", "blowup-p3-2pts", "--param", "d=0", "--divisor", "1,0,0")[0] == 2


def test_determinism():
    argv = ("body", *BL, "--divisor", "2,-1,1", "--format", "off")
    assert call(*argv) == call(*argv)


def test_off_format():
    code, out, _ = call("body", *BL, "--divisor", "1,0,0", "--format", "off")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "OFF" and lines[1] == "4 4 0"
    faces = [l for l in lines[6:] if l]
    assert len(faces) == 4 and all(f.startswith("3 ") for f in faces)


def test_csv_formats():
    code, out, _ = call("slice", *BL, "--divisor", "2,-1,0", "--t", "1", "--format", "csv")
    assert code == 0 and out == "t,vertices\n1,0:0;2:0;0:2\n"
    code, out, _ = call("body", *BL, "--divisor", "1,0,0", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "t,vertices"


def test_divisor_expr():
    labels = {"phiH": (1, 0, 0), "E1": (0, 1, 0), "E2": (0, 0, 1)}
    assert parse_divisor_expr("1*phiH+2*E2", labels) == (1, 0, 2)
    assert parse_divisor_expr("phiH - E2 + 1/2*E1", labels) == (1, 0.5, -1)
    a = call("body", *BL, "--divisor-expr", "2*phiH-E1")
    b = call("body", *BL, "--divisor", "2,-1,0")
    assert a == b and a[0] == 0
    assert call("body", *BL, "--divisor-expr", "2*phiH-Q")[0] == 4


def test_small_commands():
    assert call("partition", *BL, "--divisor", "1,1,0")[1] == "c1 1 1\nc2 1 2\n"
    assert call("mu", *BL, "--divisor", "2,3,1")[1] == "5\n"
    assert call("ord", *BL, "--divisor", "2,3,1")[1] == "3\n"
    assert call("chambers", *BL, "--divisor", "1,0,0")[1] == "primary c1\nall c1,c2,c2m,nef\n"
    assert call("zariski", "--model", "blowup-p2", "--divisor", "1,2")[1] == \
        "positive 1,0\nnegative E=2\nsupport E\n"
    code, out, _ = call("polyhedrality", *BL, "--divisor", "1,1,0")
    assert code == 0 and out.startswith("verdict rational polyhedral")
    code, out, _ = call("oracle", "--divisor", "1,0,0", "--mmax", "3")
    assert code == 0 and out == call("body", *BL, "--divisor", "1,0,0")[1]


def test_surface_polygon():
    code, out, _ = call("body", "--model", "p2", "--divisor", "2")
    assert code == 0 and out.splitlines()[:4] == ["vertices 3", "0,0", "0,2", "2,0"]


@pytest.mark.parametrize("name", builtin_names())
def test_export_validate_round_trip(name, tmp_path):
    code, text, _ = call("export", "--model", name)
    assert code == 0
    path = tmp_path / "m.json"
    path.write_text(text)
    code, out, _ = call("validate", "--model-file", str(path))
    assert code == 0 and out == f"valid {name}\n"
    d = json.loads(text)
    assert model_to_dict(*_as_args(model_from_dict(d))) == d


def _as_args(loaded):
    return loaded if isinstance(loaded, tuple) else (loaded,)


def test_round_trip_preserves_bodies(tmp_path):
    path = tmp_path / "r.json"
    path.write_text(call("export", *BL[:2], "--param", "flip=resolved")[1])
    a = call("body", "--model-file", str(path), "--divisor", "3,-1,-1")
    b = call("body", *BL[:2], "--param", "flip=resolved", "--divisor", "3,-1,-1")
    assert a == b and a[0] == 0


def test_bad_model_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "threefold", "basis": ["A"]}))
    code, _, err = call("validate", "--model-file", str(path))
    assert code == 2 and "missing key" in err
    path.write_text("{")
    assert call("validate", "--model-file", str(path))[0] == 2


def test_threads_env(monkeypatch):
    argv = ("body", *BL, "--divisor", "3,-1,1")
    base = call(*argv)
    monkeypatch.setenv("OKOUNKOV_THREADS", "4")
    assert call(*argv) == base
    assert call(*argv, "--threads", "2") == base


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "okounkov", "mu", *BL, "--divisor", "1,0,0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "1\n"
