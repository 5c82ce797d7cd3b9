"""Exit codes, determinism, and report shape of the command-line tool."""

import json

import pytest

from pbundle import cli

from conftest import FIXTURES


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out


def test_verify_passing_fixtures(capsys):
    for name, degree in [("identity_f2.json", 1), ("char5.json", 5), ("torsion3.json", 3)]:
        code, out = run(capsys, ["verify", str(FIXTURES / name)])
        assert code == 0
        header, body = out.split("\n", 1)
        assert header == "# pbundle verify seed=0"
        report = json.loads(body)
        assert report["verified"] is True
        assert report["fibre_degree"] == degree


def test_verify_corrupted_fixture(capsys):
    code, _ = run(capsys, ["verify", str(FIXTURES / "char5_corrupted.json")])
    assert code == 1


def test_verify_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["verify", str(bad)]) == 2
    capsys.readouterr()
    missing = tmp_path / "missing.json"
    assert cli.main(["verify", str(missing)]) == 2
    capsys.readouterr()


def test_verify_seed_is_recorded(capsys, monkeypatch):
    monkeypatch.setenv("PBUNDLE_SEED", "7")
    code, out = run(capsys, ["verify", str(FIXTURES / "identity_f2.json")])
    assert code == 0
    assert out.startswith("# pbundle verify seed=7")
    assert json.loads(out.split("\n", 1)[1])["seed"] == 7
    monkeypatch.setenv("PBUNDLE_SEED", "zebra")
    assert cli.main(["verify", str(FIXTURES / "identity_f2.json")]) == 2
    capsys.readouterr()


def test_prove_rejects_degree_one(capsys):
    assert cli.main(["prove", "--rank", "2", "--degree", "1"]) == 2
    capsys.readouterr()


def test_prove_emits_replayable_proof(tmp_path, capsys):
    out_file = tmp_path / "proof.jsonl"
    code = cli.main(["prove", "--rank", "2", "--degree", "3", "--out", str(out_file)])
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "# pbundle prove seed=0"
    head = json.loads(lines[1])
    assert head["kind"] == "common-zero-proof"
    assert head["concluded"] is True
    code, out = run(capsys, ["verify-certificate", str(out_file)])
    assert code == 0
    assert json.loads(out.split("\n", 1)[1])["valid"] is True


def test_prove_with_descriptor(tmp_path, capsys):
    desc = tmp_path / "f2.json"
    desc.write_text('{"summands": [{"rank": 2, "twist": "trivial"}]}')
    code, out = run(capsys, ["prove", "--degree", "5", "--descriptor", str(desc)])
    assert code == 0
    verdict = json.loads(out.splitlines()[1])
    assert verdict["verdict"] == "nonexistent"
    # the characteristic-5 gate refuses the same conclusion
    code, out = run(
        capsys, ["prove", "--degree", "5", "--char", "5", "--descriptor", str(desc)]
    )
    assert code == 1
    assert json.loads(out.splitlines()[1])["verdict"] == "not excluded"


def test_decompose_golden_values(capsys):
    code, out = run(capsys, ["decompose", "--tensor", "2", "2"])
    assert code == 0
    assert json.loads(out.split("\n", 1)[1])["parts"] == [3, 1]
    code, out = run(capsys, ["decompose", "--sym", "2", "4"])
    assert json.loads(out.split("\n", 1)[1])["parts"] == [5]
    code, out = run(capsys, ["decompose", "--sym", "3", "2"])
    assert json.loads(out.split("\n", 1)[1])["parts"] == [5, 1]
    assert cli.main(["decompose", "--tensor", "0", "2"]) == 2
    capsys.readouterr()


def test_sym_with_oracle_check(capsys):
    code, out = run(capsys, ["sym", "--rank", "2", "--degree", "3", "--check"])
    assert code == 0
    report = json.loads(out.split("\n", 1)[1])
    assert report["parts"] == report["oracle_parts"] == [4]
    assert report["agree"] is True


def test_dyn_report(capsys):
    code, out = run(
        capsys,
        ["dyn", "--lattice", str(FIXTURES / "lattice_example.json"), "--degree", "3"],
    )
    assert code == 0
    report = json.loads(out.split("\n", 1)[1])
    assert report["lambda1_f"] == {"lo": "9", "hi": "9"}
    assert report["spectral_radius_V"] == {"lo": "3", "hi": "3"}
    assert report["bound_ok"] is True


def test_verify_certificate_rejects_corruption(tmp_path, capsys):
    source = (FIXTURES / "cert_r2_d3.jsonl").read_text().splitlines()
    rows = [json.loads(line) for line in source]
    for row in rows:
        if row.get("rule") == "zero-by-omega-rigidity":
            row["affected"] = [3, 0, 0]
            break
    bad = tmp_path / "bad.jsonl"
    bad.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    code, out = run(capsys, ["verify-certificate", str(bad)])
    assert code == 1
    assert json.loads(out.split("\n", 1)[1])["valid"] is False
    garbage = tmp_path / "garbage.jsonl"
    garbage.write_text('{"kind": "poem"}\n')
    assert cli.main(["verify-certificate", str(garbage)]) == 2
    capsys.readouterr()


def test_reports_are_byte_identical(capsys):
    runs = [
        run(capsys, ["verify", str(FIXTURES / "char5.json")])[1] for _ in range(2)
    ]
    assert runs[0] == runs[1]
    proofs = [run(capsys, ["prove", "--rank", "1", "--degree", "4"])[1] for _ in range(2)]
    assert proofs[0] == proofs[1]


def test_jobs_flag_validated(capsys):
    assert cli.main(["--jobs", "0", "decompose", "--tensor", "2", "2"]) == 2
    capsys.readouterr()
    assert cli.main(["--jobs", "2", "decompose", "--tensor", "2", "2"]) == 0
    capsys.readouterr()
