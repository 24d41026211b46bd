import json

import numpy as np
import pytest

from holoscope.cli import main

Z2 = "num = [0, 0, 1]\n"
Z4 = "num = [0, 0, 0, 0, 1]\n"
CHEB = "num = [-2, 0, 1]\n"


@pytest.fixture
def z2map(tmp_path):
    p = tmp_path / "z2.map"
    p.write_text(Z2)
    return str(p)


def test_green_prints_six_decimals(z2map, capsys):
    assert main(["green", "--map", z2map, "--z", "2,0"]) == 0
    assert capsys.readouterr().out.strip() == "0.693147"


def test_green_interior_is_zero(z2map, capsys):
    assert main(["green", "--map", z2map, "--z", "0.5,0"]) == 0
    assert capsys.readouterr().out.strip() == "0.000000"


def test_config_error_exit_codes(tmp_path, z2map, capsys):
    bad = tmp_path / "bad.map"
    bad.write_text("denom = [1]\n")
    assert main(["green", "--map", str(bad), "--z", "2,0"]) == 2
    assert "denom" in capsys.readouterr().err
    assert main(["green", "--map", str(tmp_path / "gone.map"), "--z", "2,0"]) == 2
    assert main(["green", "--map", z2map, "--z", "junk"]) == 2


def test_precondition_exit_code(z2map, tmp_path):
    out = str(tmp_path / "lin.json")
    # 0 is superattracting for z^2: no Koenigs series there
    assert main(["linearize", "--map", z2map, "--point", "0,0", "--out", out]) == 3


def test_threads_cap_validation(z2map, monkeypatch, capsys):
    monkeypatch.setenv("HOLOSCOPE_THREADS", "not-a-number")
    assert main(["green", "--map", z2map, "--z", "2,0"]) == 2
    monkeypatch.setenv("HOLOSCOPE_THREADS", "0")
    assert main(["green", "--map", z2map, "--z", "2,0"]) == 2
    monkeypatch.setenv("HOLOSCOPE_THREADS", "8")
    capsys.readouterr()
    assert main(["green", "--map", z2map, "--z", "2,0"]) == 0


def test_unknown_subcommand_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_linearize_artifact_schema(tmp_path, capsys):
    cheb = tmp_path / "c.map"
    cheb.write_text(CHEB)
    out = tmp_path / "lin.json"
    assert main(["linearize", "--map", str(cheb), "--point", "2,0", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["base"] == [2.0, 0.0]
    assert doc["lambda"] == [4.0, 0.0]
    assert doc["coeffs"][0] == [2.0, 0.0]
    assert doc["residual"] < 1e-8
    man = json.loads((tmp_path / "lin.json.manifest.json").read_text())
    assert man["workflow"] == "linearize"


def test_periodic_artifact_lists_cycles(z2map, tmp_path):
    out = tmp_path / "per.json"
    assert main(["periodic", "--map", z2map, "--period", "1", "--out", str(out)]) == 0
    cycles = json.loads(out.read_text())
    assert len(cycles) == 3
    # infinity is encoded as null
    assert any(c["points"] == [None] for c in cycles)
    reps = {tuple(c["points"][0]): c["kind"] for c in cycles if c["points"][0]}
    assert reps[(1.0, 0.0)] == "repelling"


def test_mmem_rerun_is_byte_identical(z2map, tmp_path):
    a, b = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    for out in (a, b):
        assert main(["mmem", "--map", z2map, "--n", "400", "--seed", "6", "--out", out]) == 0
    assert open(a, "rb").read() == open(b, "rb").read()
    assert open(a + ".json", "rb").read() == open(b + ".json", "rb").read()


def test_compare_workflow(z2map, tmp_path):
    a, b = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    main(["mmem", "--map", z2map, "--n", "4000", "--seed", "1", "--out", a])
    main(["mmem", "--map", z2map, "--n", "4000", "--seed", "2", "--out", b])
    out = str(tmp_path / "cmp.json")
    code = main(["compare", "--a", a, "--b", b, "--window=-1.2,1.2,-1.2,1.2",
                 "--bins", "24", "--out", out])
    assert code == 0
    doc = json.loads(open(out).read())
    assert 0.0 <= doc["tv"] < 0.2


def test_correspond_workflow(tmp_path):
    m1, m2 = tmp_path / "a.map", tmp_path / "b.map"
    m1.write_text(Z2)
    m2.write_text(Z4)
    out = str(tmp_path / "corr.json")
    code = main(["correspond", "--map1", str(m1), "--map2", str(m2),
                 "--p1", "1,0", "--p2", "1,0", "--beta", "2,0", "--out", out])
    assert code == 0
    doc = json.loads(open(out).read())
    prim = [r for r in doc["relations"] if r["primitive"]]
    assert [(r["a"], r["b"]) for r in prim] == [[2, 1]] or [(r["a"], r["b"]) for r in prim] == [(2, 1)]
    assert doc["degree_checks"][0]["holds"] is True
    assert doc["curve"]["bidegree"] == [2, 1]
    assert doc["curve"]["fit_residual"] < 1e-8


def test_blaschke_workflow(tmp_path, capsys):
    cfg = tmp_path / "zeros.cfg"
    cfg.write_text("zeros = [0.0, 0.0, 0.0]\n")
    out = str(tmp_path / "spectrum.csv")
    assert main(["blaschke", "--zeros", str(cfg), "--nmax", "2", "--out", out]) == 0
    lines = open(out).read().strip().splitlines()
    assert lines[0] == "period,angle,exponent"
    assert len(lines) == 1 + 2 + 3  # two fixed angles, three 2-cycles


def test_tce_workflow(z2map, tmp_path):
    out = str(tmp_path / "tce.json")
    assert main(["tce", "--map", z2map, "--point", "1,0", "--radius", "0.05",
                 "--nmax", "8", "--out", out]) == 0
    doc = json.loads(open(out).read())
    assert 1.7 < doc["fitted_rate"] < 2.3


def test_render_workflows(z2map, tmp_path):
    ppm = str(tmp_path / "x.ppm")
    assert main(["render", "--map", z2map, "--mode", "escape-time",
                 "--window=-2,2,-2,2", "--pixels", "32x24", "--out", ppm]) == 0
    assert open(ppm, "rb").read().startswith(b"P6\n32 24\n255\n")
    # density mode needs a measure
    assert main(["render", "--mode", "measure-density",
                 "--window=-2,2,-2,2", "--out", ppm]) == 2
    mcsv = str(tmp_path / "m.csv")
    main(["mmem", "--map", z2map, "--n", "500", "--seed", "1", "--out", mcsv])
    assert main(["render", "--measure", mcsv, "--mode", "measure-density",
                 "--window=-2,2,-2,2", "--pixels", "16x16", "--out", ppm]) == 0


def test_escape_time_render_requires_map(tmp_path):
    ppm = str(tmp_path / "x.ppm")
    assert main(["render", "--mode", "escape-time", "--window=-2,2,-2,2",
                 "--out", ppm]) == 2
