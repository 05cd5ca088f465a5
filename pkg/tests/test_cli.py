# tests/test_cli.py
import json
import logging

import pytest

from core.cli import main
from core.formats import dump_morphism, dump_table, load_table
from core.semilattice import collapse_morphism


@pytest.fixture
def run(tmp_path, capsys):
    def _run(*argv):
        code = main(list(argv) + ["--log-dir", str(tmp_path / "logs")])
        return code, capsys.readouterr().out

    yield _run
    root = logging.getLogger()
    for handler in list(root.handlers):
        handler.close()
        root.removeHandler(handler)


def test_free_is_byte_stable(run):
    code, first = run("free", "2", "--format", "json")
    assert code == 0
    assert len(json.loads(first)["elements"]) == 4
    _, second = run("free", "2", "--format", "json")
    assert first == second


def test_chain_to_file(run, tmp_path):
    out = tmp_path / "three.json"
    code, _ = run("chain", "3", "--out", str(out))
    assert code == 0
    assert load_table(out).size == 3


def test_free_beyond_the_cap_is_refused(run):
    code, out = run("free", "7", "--cap-elements", "64")
    assert code == 2
    assert out == ""


def test_validate(run, tmp_path, chain2):
    good = dump_table(chain2, tmp_path / "two.json")
    code, out = run("validate", str(good), "--format", "json")
    assert code == 0
    assert json.loads(out)["status"] == "valid"

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"elements": ["a", "b"], "table": [[1, 1], [0, 0]]}), encoding="utf-8")
    code, out = run("validate", str(bad), "--format", "json")
    assert code == 1
    diagnostic = json.loads(out)
    assert diagnostic["error"] == "NonAssociative"
    assert diagnostic["witness"] == [0, 0, 0]

    code, _ = run("validate", str(tmp_path / "missing.json"))
    assert code == 2


def test_homology_reports(run, tmp_path, chain2, monoid):
    two = dump_table(chain2, tmp_path / "two.json")
    code, out = run("homology", "--table", str(two), "--nmax", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["vanishing"] is True

    nm = dump_table(monoid, tmp_path / "nm.json")
    code, out = run("cohomology", "--table", str(nm), "--nmax", "1", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["coefficients"] == "A'"
    assert report["degrees"][0]["dim_h"] >= 1


def test_homotopy_check(run):
    code, out = run("homotopy-check", "--k", "1", "2", "--n", "1", "2", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert len(report["records"]) == 4


def test_sigma_build_verify_and_naturality(run, tmp_path, chain2):
    tower_dir = tmp_path / "tower"
    code, _ = run("sigma-build", "--jmax", "1", "--out", str(tower_dir))
    assert code == 0
    assert (tower_dir / "manifest.json").is_file()

    two = dump_table(chain2, tmp_path / "two.json")
    code, out = run("sigma-verify", "--table", str(two), "--jmax", "1", "--tower", str(tower_dir), "--format", "json")
    assert code == 0
    assert json.loads(out)["splitting"]["passed"] is True

    morphism = dump_morphism(collapse_morphism(2), tmp_path / "collapse.json")
    code, out = run("naturality-check", "--morphism", str(morphism), "--jmax", "1", "--tower", str(tower_dir))
    assert code == 0
    assert "pass" in out


def test_degree_arguments_below_one_are_usage_errors(run, tmp_path, chain2):
    tower_dir = tmp_path / "tower"
    code, _ = run("sigma-build", "--jmax", "1", "--out", str(tower_dir))
    assert code == 0
    two = dump_table(chain2, tmp_path / "two.json")
    for argv in (
        ["sigma-verify", "--table", str(two), "--jmax", "0", "--tower", str(tower_dir)],
        ["naturality-check", "--morphism", "m.json", "--jmax", "0", "--tower", str(tower_dir)],
        ["homology", "--table", str(two), "--nmax", "-1"],
        ["cohomology", "--table", str(two), "--nmax", "0"],
        ["sigma-build", "--jmax", "0", "--out", str(tmp_path / "other")],
        ["suite", "--nmax", "0"],
    ):
        with pytest.raises(SystemExit) as err:
            run(*argv)
        assert err.value.code == 2


def test_sigma_verify_refuses_non_semilattice(run, tmp_path, monoid):
    nm = dump_table(monoid, tmp_path / "nm.json")
    code, _ = run("sigma-verify", "--table", str(nm), "--jmax", "1")
    assert code == 1


def test_empty_suite(run):
    code, out = run("suite", "--sizes", "", "--no-named", "--jmax", "1", "--nmax", "1", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["summary"]["instances"] == 0
    assert report["summary"]["status"] == "pass"


def test_suite_json_is_reproducible(run):
    argv = ["suite", "--seed", "3", "--sizes", "1,2", "--no-named", "--jmax", "1", "--nmax", "1", "--format", "json"]
    code, first = run(*argv)
    assert code == 0
    _, second = run(*argv)
    assert first == second


def test_bad_sizes_are_a_usage_error(run):
    with pytest.raises(SystemExit) as err:
        run("suite", "--sizes", "1,x")
    assert err.value.code == 2
