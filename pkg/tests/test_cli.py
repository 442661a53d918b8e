"""CLI behavior: outputs, exit codes, JSON round trips, byte determinism."""

import json
import subprocess
import sys

from ksphere import cli
from ksphere import verification
from ksphere.verification import CheckReport

S3_SPEC = '{"family":"S","n":3,"lambda":{"convention":"sign"}}'
C6_SPEC = '{"family":"C","n":6,"lambda":{"convention":"onto-pm1"}}'
D4_SPEC = '{"family":"D","n":4,"lambda":{"convention":"reflection-sign"}}'


def run_cli(args):
    return subprocess.run(
        [sys.executable, "-m", "ksphere.cli", *args],
        capture_output=True,
        text=True,
    )


def test_chartab_inline(capsys):
    assert cli.main(["chartab", '{"family":"S","n":3}']) == 0
    out = capsys.readouterr().out
    assert "group S3" in out and "chi2" in out


def test_chartab_from_file(tmp_path, capsys):
    path = tmp_path / "spec.json"
    path.write_text(S3_SPEC, encoding="utf-8")
    assert cli.main(["chartab", str(path)]) == 0
    assert "chi2" in capsys.readouterr().out


def test_kgroup_s1_lambda_s3(tmp_path, capsys):
    out_json = tmp_path / "out.json"
    assert cli.main(["kgroup", S3_SPEC, "--sphere", "s1-lambda", "--json", str(out_json)]) == 0
    out = capsys.readouterr().out
    assert "rank 1" in out
    doc = json.loads(out_json.read_text())
    pres = doc["presentation"]
    assert pres["rank"] == 1
    assert pres["basis"][0]["coeffs"] == [0, 1, -1]
    assert pres["action"]["matrices"][2] == [[-1]]
    assert pres["product_rule"] == "zero"


def test_kgroup_rank_zero_for_cyclic6(capsys):
    assert cli.main(["kgroup", C6_SPEC, "--sphere", "s1-lambda"]) == 0
    assert "rank 0" in capsys.readouterr().out


def test_kgroup_s_lambda(tmp_path, capsys):
    out_json = tmp_path / "out.json"
    assert cli.main(
        ["kgroup", '{"family":"C","n":2,"lambda":{"convention":"onto-pm1"}}',
         "--sphere", "s-lambda", "--json", str(out_json)]
    ) == 0
    doc = json.loads(out_json.read_text())
    assert doc["presentation"]["rank"] == 1
    assert doc["presentation"]["basis"] == [[1, -1]]


def test_verify_single_group(capsys):
    assert cli.main(["verify", D4_SPEC]) == 0
    out = capsys.readouterr().out
    assert "0 failures" in out


def test_verify_all_upto(capsys):
    assert cli.main(["verify", "--all-upto", "12"]) == 0
    out = capsys.readouterr().out
    assert "0 failures" in out


def test_verify_exit_code_on_failure(monkeypatch, capsys):
    def always_fails(group, lam):
        return [CheckReport("forced", group.name, lam.label, "fail", "synthetic")]

    monkeypatch.setattr(verification, "LAMBDA_CHECKS", (always_fails,))
    assert cli.main(["verify", D4_SPEC]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_input_error_exit_codes(capsys):
    assert cli.main(["chartab", '{"family":"X","n":3}']) == 2
    assert "unknown family" in capsys.readouterr().err
    assert cli.main(["kgroup", '{"family":"S","n":3}']) == 2
    assert "lambda" in capsys.readouterr().err
    assert cli.main(["chartab", "not-a-file.json"]) == 2
    capsys.readouterr()
    assert cli.main(["chartab", '{"family":"S","n":3,']) == 2
    assert "invalid JSON" in capsys.readouterr().err
    assert cli.main(["kgroup", '{"family":"C","n":5,"lambda":{"convention":"onto-pm1"}}']) == 2
    assert "even" in capsys.readouterr().err


def test_order_cap_env(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "ksphere.cli", "chartab", '{"family":"S","n":4}'],
        capture_output=True,
        text=True,
        env={"KSPHERE_MAX_ORDER": "10", "PATH": "/usr/bin:/bin"},
    )
    assert proc.returncode == 2
    assert "order cap 10" in proc.stderr


def test_json_outputs_are_byte_identical_across_runs(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        proc = run_cli(["kgroup", S3_SPEC, "--json", str(path)])
        assert proc.returncode == 0, proc.stderr
    assert paths[0].read_bytes() == paths[1].read_bytes()

    vpaths = [tmp_path / "va.json", tmp_path / "vb.json"]
    for path in vpaths:
        proc = run_cli(["verify", D4_SPEC, "--json", str(path)])
        assert proc.returncode == 0, proc.stderr
    assert vpaths[0].read_bytes() == vpaths[1].read_bytes()


def test_kgroup_json_round_trip_bit_for_bit(tmp_path):
    path = tmp_path / "pres.json"
    assert cli.main(["kgroup", D4_SPEC, "--json", str(path)]) == 0
    raw = path.read_text()
    doc = json.loads(raw)
    re_encoded = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"
    assert re_encoded == raw
    from ksphere.ktheory import k_group_s1_lambda
    from conftest import group_with_lambda
    from ksphere.groups import GroupSpec

    t, lam = group_with_lambda(GroupSpec.dihedral(4), "reflection-sign")
    pres = k_group_s1_lambda(t, lam)
    assert doc["presentation"]["rank"] == pres.rank
    assert doc["presentation"]["basis"] == [
        {"rep": b.rep, "partner": b.partner, "label": b.label, "coeffs": list(b.character.coeffs)}
        for b in pres.basis
    ]
    assert doc["presentation"]["action"]["matrices"] == [a.tolist() for a in pres.action]


def test_version_and_help():
    proc = run_cli(["--version"])
    assert proc.returncode == 0 and "ksphere" in proc.stdout
    proc = run_cli(["--help"])
    assert proc.returncode == 0 and "reflection-sign" in proc.stdout
