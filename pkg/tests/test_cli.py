import json

import pytest

from hyperlattice.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_chi_arrangement_d2(capsys, cache_dir):
    code, out, _ = run(capsys, "chi", "--d", "2", "--arrangement")
    assert code == 0
    assert out == "t^2 - n_2 t + 3 n_4 + 2 n_2 - n_1\n"


def test_chi_json_nests_polynomials(capsys, cache_dir):
    _, out, _ = run(capsys, "chi", "--d", "1", "--json")
    data = json.loads(out)
    assert data["powers"]["1"] == {"basis": "binomial", "coeffs": {"0": "1"}}
    assert data["powers"]["0"] == {"basis": "binomial", "coeffs": {"1": "-1"}}


def test_lambda_text_and_json(capsys, cache_dir):
    code, out, err = run(capsys, "lambda", "--d", "3", "--type", "1,1,1")
    assert code == 0 and out == "120 n_6 + 630 n_7 + 840 n_8 + 280 n_9\n"
    assert "points: 8" in err
    code, out, _ = run(capsys, "lambda", "--d", "3", "--type", "1,1,1", "--json")
    assert json.loads(out)["point_count"] == "8"
    assert (cache_dir / "lambda_3_1-1-1.json").exists()


def test_lambda_threads_and_checkpoint(capsys, tmp_path):
    ck = tmp_path / "ck.json"
    _, a, _ = run(capsys, "--no-cache", "lambda", "--d", "4", "--type", "1,1,1,1", "--threads", "2", "--checkpoint", str(ck))
    _, b, _ = run(capsys, "--no-cache", "lambda", "--d", "4", "--type", "1,1,1,1", "--threads", "1")
    assert a == b and ck.exists()


def test_mobius(capsys, cache_dir):
    assert run(capsys, "mobius", "--d", "2")[1] == "-1 + n_1 - n_2 - 3 n_4\n"
    assert run(capsys, "mobius", "--d", "3", "--type", "2,1")[1] == "3 - n_1\n"
    assert run(capsys, "mobius", "--d", "2", "--type", "3")[1] == "-1 + n_1 - n_2 - 3 n_4\n"
    assert run(capsys, "mobius", "--d", "0", "--type", "0")[1] == "1\n"


def test_oracle_verify(capsys, cache_dir):
    code, out, _ = run(capsys, "oracle-verify", "--n", "6", "--d", "3")
    assert code == 0 and out.strip().endswith("pass")


def test_oracle_dump(capsys):
    code, out, _ = run(capsys, "--no-cache", "oracle-dump", "--n", "3", "--d", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "{}\trank=0\ttype=(0)\tmu=1"
    assert lines[-1] == "{{}}\trank=2\ttype=(2)\tmu=2"
    _, out, _ = run(capsys, "--no-cache", "oracle-dump", "--n", "3", "--d", "1", "--json")
    assert json.loads(out)[1] == {"element": "{{1}}", "rank": 1, "type": [1], "mobius": -1}


def test_kappa_check(capsys, cache_dir):
    code, out, _ = run(capsys, "kappa-check", "--d", "2", "--n", "5", "--all-m", "--brute-force")
    assert code == 0
    assert out.count("PASS") == 8 and "FAIL" not in out
    assert run(capsys, "kappa-check", "--d", "2", "--n", "5")[0] == 2


def test_reproduce_d3(capsys, cache_dir):
    code, out, _ = run(capsys, "reproduce", "--d", "3")
    assert code == 0
    assert out.splitlines()[-1] == "all 6 type counts match the reference table"


def test_reproduce_json_is_stable_across_threads_and_cache(capsys, tmp_path):
    _, a, _ = run(capsys, "--cache-dir", str(tmp_path / "c"), "reproduce", "--d", "4", "--json", "--threads", "1")
    _, b, _ = run(capsys, "--cache-dir", str(tmp_path / "c"), "reproduce", "--d", "4", "--json", "--threads", "2")
    _, c, _ = run(capsys, "--no-cache", "reproduce", "--d", "4", "--json", "--threads", "2")
    assert a == b == c
    assert json.loads(a)["ok"] is True


@pytest.mark.parametrize("argv,code", [
    (["lambda", "--d", "3", "--type", "4,1"], 2),
    (["lambda", "--d", "3", "--type", "x"], 2),
    (["oracle-verify", "--n", "12", "--d", "5"], 3),
    (["oracle-verify", "--n", "3", "--d", "3"], 2),
    (["reproduce", "--d", "9"], 2),
])
def test_exit_codes(capsys, cache_dir, argv, code):
    try:
        got = main(argv)
    except SystemExit as exc:  # argparse usage errors
        got = exc.code
    assert got == code


def test_corrupt_cache_fails(capsys, cache_dir):
    run(capsys, "lambda", "--d", "3", "--type", "2,1")
    p = cache_dir / "lambda_3_2-1.json"
    p.write_text(p.read_text().replace('"10"', '"11"'))
    code, _, err = run(capsys, "lambda", "--d", "3", "--type", "2,1")
    assert code == 1 and "checksum" in err
