import io
import json
import shutil
import subprocess
from pathlib import Path

import pytest

from ricciflat.cli import EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main, parse_records

FIXTURES = Path(__file__).parent / "fixtures"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_table_all_rows_match():
    code, text = run("table", "--max-dim", "8", "--format", "records")
    assert code == EXIT_OK
    recs = parse_records(text)
    assert len(recs) == 14
    assert all(r["match"] is True for r in recs)


def test_table_text_output():
    code, text = run("table", "--max-dim", "4")
    assert code == EXIT_OK
    assert "7 rows, 0 mismatches" in text


def test_corrupted_expectation_exits_1():
    code, text = run("table", "--max-dim", "8", "--expectations",
                     str(FIXTURES / "corrupted_expectations.json"))
    assert code == EXIT_MISMATCH
    assert "mismatch: so(4)" in text


def test_cache_cold_and_warm_identical(tmp_path):
    cache = tmp_path / "cache"
    cold = run("table", "--max-dim", "8", "--cache", str(cache))
    assert any(cache.iterdir())
    warm = run("table", "--max-dim", "8", "--cache", str(cache))
    assert cold == warm
    cold_r = run("table", "--max-dim", "8", "--cache", str(cache), "--format", "records")
    shutil.rmtree(cache)
    warm_r = run("table", "--max-dim", "8", "--cache", str(cache), "--format", "records")
    assert cold_r == warm_r


def test_classify_and_dims():
    code, text = run("classify", "so(4)", "--format", "records")
    assert code == EXIT_OK
    (rec,) = parse_records(text)
    assert (rec["dim_K"], rec["dim_ricci_image"], rec["dim_ricci_kernel"]) == (20, 10, 10)
    assert rec["paper_expectation"] == rec["verdict"] == "Mixed"
    code, text = run("dims", "gl(3,R)@sym2")
    assert code == EXIT_OK and "dim g^(1)    6" in text


def test_classify_without_catalog_row():
    code, text = run("classify", "gl(5,R)@alt2", "--format", "records")
    assert code == EXIT_OK
    (rec,) = parse_records(text)
    assert "match" not in rec and rec["verdict"] == "RicciType"


@pytest.mark.parametrize("argv", [["classify", "foo(3)"], ["classify", "so(3"], [],
                                  ["table", "--max-dim", "-1"], ["classify", "so(3)", "--primes", "0"],
                                  ["verify", "nonsense"], ["table", "--expectations", "/nonexistent"],
                                  ["classify", "stab(/nonexistent.json)"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_budget_exit_and_probabilistic_fallback():
    assert run("classify", "g2", "--budget", "10")[0] == EXIT_BUDGET
    code, text = run("classify", "g2", "--budget", "10", "--probabilistic", "--format", "records")
    assert code == EXIT_OK
    (rec,) = parse_records(text)
    assert rec["provenance"] == "probabilistic" and rec["verdict"] == "TraceFree"


@pytest.mark.parametrize("family", ["split", "segre", "complex-split", "volume"])
def test_verify_passing_families(family):
    code, text = run("verify", family)
    assert code == EXIT_OK
    assert "[FAIL]" not in text


def test_verify_symplectic_reports_the_global_scale_failure():
    code, text = run("verify", "symplectic")
    assert code == EXIT_MISMATCH
    fails = [l for l in text.splitlines() if l.startswith("[FAIL]")]
    assert len(fails) == 2
    assert all("one global pairing scale" in l for l in fails)


def test_parse_records_validates():
    with pytest.raises(ValueError):
        parse_records(json.dumps({"algebra_name": "x", "dim_V": 3, "dim_g": 3, "dim_g1": 0,
                                  "dim_K": 6, "dim_ricci_image": 1, "dim_ricci_kernel": 1,
                                  "h12_dim": 0, "verdict": "Mixed"}))


def test_console_script():
    exe = shutil.which("ricciflat")
    if exe is None:
        pytest.skip("console script not installed")
    res = subprocess.run([exe, "classify", "so(3)"], capture_output=True, text=True)
    assert res.returncode == 0 and "RicciType" in res.stdout
