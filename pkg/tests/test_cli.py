import hashlib
import json
import subprocess
import sys

import pytest

from ncann.cli import RunConfig, execute, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_nf_plain_text(capsys):
    code, out = run(capsys, "nf", "--ring", "armendariz_3_3", "a[2]*b[0]")
    assert code == 0
    assert out.strip() == "a[0]*b[2] + a[1]*b[1]"


def test_nf_json(capsys):
    code, out = run(capsys, "nf", "--json", "b[0]*a[1]*a[0]", "b[1]*a[1]")
    data = json.loads(out)
    assert code == 0
    assert [d["nf"] for d in data] == ["b[0]*a[1]*a[0]", "0"]


def test_mul(capsys):
    code, out = run(capsys, "mul", "--ring", "cedo_3_1", "--p", "3", "a1[0]", "alam[1]")
    assert code == 0 and out.strip() == "2*a0[0]*alam[1]"


def test_ann_left(capsys):
    code, out = run(capsys, "ann", "--idx", "3", "--deg", "2", "--elems", "a[0];a[1]")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 3 and data["side"] == "left"
    assert not data["evidence_only"]


def test_ann_series_is_evidence_only(capsys):
    code, out = run(capsys, "ann", "--ring", "cedo_3_1", "--side", "right", "--idx", "0", "--deg", "1",
                    "--order", "4", "a0[0] - a1[0]*x")
    data = json.loads(out)
    assert code == 0 and data["evidence_only"] and data["dim"] >= 1


def test_zip(capsys):
    code, out = run(capsys, "zip", "--side", "right", "--idx", "2", "--deg", "2", "--elems", "a[0];1 + b[0]")
    data = json.loads(out)
    assert code == 0 and data["witness"] == ["1 + b[0]"]
    code, out = run(capsys, "zip", "--idx", "2", "--deg", "1", "--elems", "a[0];a[1]")
    assert code == 1 and json.loads(out)["vacuous"]


def test_armendariz_commands(capsys):
    code, out = run(capsys, "armendariz", "--ring", "armendariz_3_3", "--order", "4",
                    "a[0] + a[1]*x + a[2]*x^2 + a[3]*x^3 + a[4]*x^4",
                    "b[0] + b[1]*x + b[2]*x^2 + b[3]*x^3 + b[4]*x^4", "--idx", "4")
    data = json.loads(out)
    assert code == 0 and data["violation"] == [1, 0] and data["evidence_only"]
    code, out = run(capsys, "armendariz", "--ring", "armendariz_3_3", "a[0] + a[1]*x", "b[0]")
    assert code == 1 and json.loads(out)["error"] == "PreconditionError"
    code, out = run(capsys, "armendariz", "--ring", "armendariz_3_3", "--search", "--idx", "1", "--xdeg", "1")
    data = json.loads(out)
    assert code == 0 and data["violations"] == 0 and data["f_scanned"] > 0


def test_exit_codes(capsys):
    code, out = run(capsys, "nf", "a[0] +")
    assert code == 2 and json.loads(out)["error"] == "DSLSyntaxError"
    code, _ = run(capsys, "nf", "--ring", "nope", "a[0]")
    assert code == 2
    code, _ = run(capsys, "nf", "--ring", "armendariz_3_3", "--p", "3", "a[0]")
    assert code == 2
    code, out = run(capsys, "ann", "--idx", "1", "--deg", "2", "a[4]")
    assert code == 3 and json.loads(out)["error"] == "IndexBoundsError"
    code, _ = run(capsys, "ann", "--idx", "1", "--deg", "1")
    assert code == 1


def test_basis_and_claim(capsys):
    code, out = run(capsys, "basis", "--ring", "armendariz_3_3", "--idx", "3", "--deg", "3", "--claim")
    data = json.loads(out)
    assert code == 0 and data["count"] == 21 and data["claim"]["verdict"] == "pass"


def test_check(capsys):
    code, out = run(capsys, "check", "cedo_3_1", "--idx", "2", "--deg", "2")
    data = json.loads(out)
    assert code == 0 and {d["claim"] for d in data} >= {"basis_claim", "cedo_series_witness"}


def test_output_file_and_determinism(capsys, tmp_path):
    digests = []
    for k in range(2):
        target = tmp_path / f"out{k}.json"
        code, out = run(capsys, "check", "section4", "--idx", "2", "--deg", "2", "--output", str(target))
        assert code == 0
        assert json.loads(target.read_text()) == json.loads(out)
        digests.append(hashlib.sha256(target.read_bytes()).hexdigest())
    assert digests[0] == digests[1]
    assert not list(tmp_path.glob("*.tmp"))


def test_witnesses_roundtrip(capsys):
    code, out = run(capsys, "zip", "--side", "right", "--idx", "2", "--deg", "2", "--elems", "a[0];1 + b[0]")
    w = json.loads(out)["witness"]
    code, out = run(capsys, "ann", "--side", "right", "--idx", "2", "--deg", "2", *w)
    assert json.loads(out)["dim"] == 0


def test_dsl_file_ring_and_elems_file(capsys, tmp_path):
    ring = tmp_path / "mono.ncr"
    ring.write_text("field 3;\nfamily u(1);\nfamily v(1);\nrule v[i]*u[j] -> 0 when j <= i;\n")
    elems = tmp_path / "x.txt"
    elems.write_text("u[0]\nu[1]\n")
    code, out = run(capsys, "ann", "--ring", str(ring), "--idx", "2", "--deg", "1", "--elems", str(elems))
    data = json.loads(out)
    assert code == 0 and data["dim"] == 2  # v[1], v[2]
    code, out = run(capsys, "nf", "--ring", str(ring), "v[2]*u[1] + 2*v[0]*u[1]")
    assert out.strip() == "2*v[0]*u[1]"


def test_alpha_file(capsys, tmp_path):
    alpha = tmp_path / "shift.alpha"
    alpha.write_text("map a[i] -> a[i+1];\nmap b[j] -> b[j+1];\n")
    code, out = run(capsys, "mul", "--alpha", str(alpha), "x", "b[0]")
    assert code == 0 and out.strip() == "b[1]*x"


def test_execute_returns_report():
    code, report, text = execute(RunConfig("nf", exprs=["a[0]*b[0]"]))
    assert code == 0 and text == "0" and report[0]["terms"] == []


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "ncann.cli", "nf", "a[1]"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "a[1]"


def test_usage_error_from_argparse():
    with pytest.raises(SystemExit):
        main(["ann", "--side", "middle"])
