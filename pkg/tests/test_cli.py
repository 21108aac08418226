import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from cubefill.cli import main

DATA = Path(__file__).resolve().parents[1] / "data"
CORPUS = DATA / "corpus"


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def item(name):
    return CORPUS / name / "complex.json", CORPUS / name / "action.json"


def test_validate_square(tmp_path):
    out = tmp_path / "r.json"
    r = run("validate", DATA / "square.json", "--json", out)
    assert r.exit_code == 0, r.output
    rep = json.loads(out.read_text())
    assert rep["command"] == "validate"
    assert rep["result"]["cells"] == 9
    assert rep["result"]["euler"] == 1
    assert set(rep["digests"]) and all(len(d) == 64 for d in rep["digests"].values())


def test_validate_open_corner_fails_with_witness():
    r = run("validate", DATA / "open_corner.json")
    assert r.exit_code == 1
    assert "witness" in r.output


def test_malformed_json_exits_2():
    r = run("validate", DATA / "bad.json")
    assert r.exit_code == 2
    assert "line" in r.output


@pytest.mark.parametrize("cmd", ["orbits", "quotient", "cog", "cover", "stabgraphs"])
def test_action_commands_on_the_star(cmd):
    r = run(cmd, *item("s3-star"))
    assert r.exit_code == 0, r.output


def test_check_quotient_outcomes():
    c, a = item("grid-rotation")
    r = run("check-quotient", c, a, "--kernel", DATA / "grid_K_G.json")
    assert r.exit_code == 1
    assert "F2" in r.output
    c, a = item("s3-star")
    r = run("check-quotient", c, a, "--kernel", CORPUS / "s3-star" / "kernel1.json")
    assert r.exit_code == 0, r.output


def test_hypgeo_commands():
    assert run("hypgeo", "delta", DATA / "c4.json").exit_code == 0
    assert run("hypgeo", "qc", DATA / "star3.json", DATA / "star3_set.json").exit_code == 0
    assert run("hypgeo", "chain", DATA / "path6.json", DATA / "path6_chain.json").exit_code == 0
    assert run("hypgeo", "chain", DATA / "path6.json", DATA / "path6_bad_chain.json").exit_code == 2


def test_fill_on_the_star():
    r = run("fill", *item("s3-star"), "--peripherals", DATA / "s3_peripherals.json",
            "--kernels", DATA / "s3_kernels.json")
    assert r.exit_code == 0, r.output


def test_fill_rejects_bad_predicate():
    r = run("fill", *item("s3-star"), "--peripherals", DATA / "s3_peripherals.json",
            "--kernels", DATA / "s3_kernels.json", "--predicate", "huge")
    assert r.exit_code == 2


def test_sageev_writes_files(tmp_path):
    r = run("sageev", "--walls", DATA / "walls_square.json", "--out", tmp_path)
    assert r.exit_code == 0, r.output
    c, a = tmp_path / "complex.json", tmp_path / "action.json"
    assert c.exists() and a.exists()
    assert run("orbits", c, a).exit_code == 0


def test_corpus_export(tmp_path):
    r = run("corpus", "--out", tmp_path)
    assert r.exit_code == 0, r.output
    assert (tmp_path / "manifest.json").exists()
    assert (tmp_path / "s3-star" / "kernel0.json").exists()


def test_accept_subset():
    r = run("accept", "--only", 1, "--only", 9)
    assert r.exit_code == 0, r.output
    assert r.output.count("[PASS]") == 2


def test_missing_file_is_a_usage_error():
    assert run("validate", DATA / "nope.json").exit_code == 2
