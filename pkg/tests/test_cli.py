import json

import pytest

from pwcontract.cli import main


@pytest.fixture
def remark_json(tmp_path):
    path = tmp_path / "remark.json"
    path.write_text(json.dumps({"a": ["0", "1/2"], "b": ["1/4", "-1/4"], "lambda": "1/2"}))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_remark(capsys, remark_json):
    code, out, _ = run(capsys, "classify", "--spec", remark_json)
    js = json.loads(out)
    assert code == 0
    assert js["verdict"] == "SINGULAR_CONNECTION" and js["cycles"] == []
    assert js["bounds"]["ell"] == 1


def test_tongues(capsys):
    code, out, _ = run(capsys, "tongues", "--qmax", "3", "--lambda", "1/2")
    assert code == 0
    assert out.splitlines() == [
        "lambda,p,q,b_lo,b_hi",
        "1/2,1,3,4/7,9/14",
        "1/2,1,2,2/3,5/6",
        "1/2,2,3,6/7,13/14",
    ]


def test_rho(capsys):
    assert run(capsys, "rho", "--lambda", "1/2", "--b", "3/4") == (0, "1/2 EXACT\n", "")


def test_invalid_input_exit_2(capsys):
    code, out, err = run(capsys, "rho", "--lambda", "1/2", "--b", "1/4")
    assert code == 2 and out == "" and len(err.strip().splitlines()) == 1
    code, _, _ = run(capsys, "classify", "--b", "3/4", "--lambda", "1/2", "--mode", "float")
    assert code == 2


def test_strict_undecided_exit_3(capsys):
    args = ["classify", "--b", "3/4", "--lambda", "99/100", "--budget", "20", "--pmax", "4"]
    assert run(capsys, *args)[0] == 0
    assert run(capsys, *args, "--strict")[0] == 3


def test_orbit_csv(capsys):
    code, out, _ = run(capsys, "orbit", "--b", "3/4", "--lambda", "1/2", "--budget", "4")
    assert out.splitlines() == [
        "t,x,branch,wrap",
        "0,0/1,1,0",
        "1,3/4,2,-1",
        "2,1/8,1,0",
        "3,13/16,2,-1",
        "4,5/32,,",
    ]


def test_orbit_decimal(capsys):
    _, out, _ = run(capsys, "orbit", "--b", "3/4", "--lambda", "1/2", "--budget", "1", "--decimal")
    assert out.splitlines()[2] == "1,0.75,,"


def test_connections(capsys, remark_json):
    _, out, _ = run(capsys, "connections", "--spec", remark_json)
    assert json.loads(out) == {"order": 1, "omega": [1], "x": "1/2", "y": "1/2", "side": "left"}
    _, out, _ = run(capsys, "connections", "--omega", "1", "--x", "1/2", "--y", "1/2", "--deltas", "1/4")
    assert out == "lo,hi,exact\n1/2,1/2,1/2\n"


def test_entropy_csv(capsys, remark_json):
    _, out, _ = run(capsys, "entropy", "--spec", remark_json, "--nmax", "3")
    lines = out.splitlines()
    assert lines[0] == "n,alpha_n,entropy_n"
    assert [l.split(",")[1] for l in lines[1:]] == ["2", "2", "2"]


def test_boxdim_csv(capsys):
    _, out, _ = run(capsys, "boxdim", "--b", "3/4", "--lambda", "1/2", "--eps", "1,1/2,1/64", "--transient", "60")
    assert out.splitlines() == ["epsilon,N", "1,1", "0.5,2", "0.015625,2"]


def test_sweep_and_out_file(capsys, tmp_path):
    path = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "sweep", "--b", "3/4", "--grid", "4", "--lambda-min", "1/4", "--out", str(path))
    assert code == 0 and out == ""
    lines = path.read_text().splitlines()
    assert lines[0] == "lambda,verdict,n_cycles,max_period,undecided_reason"
    assert [l.split(",")[0] for l in lines[1:]] == ["1/2", "3/4"]


def test_map_dump(capsys):
    _, out, _ = run(capsys, "map", "--b", "3/4", "--lambda", "1/2")
    js = json.loads(out)
    assert len(js["branches"]) == 2
