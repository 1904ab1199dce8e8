import json
import subprocess
import sys

import pytest

from ckp.cli import bijection_table, run
from ckp.series import Series


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hwv_twisted_degree_one_is_empty(capsys):
    code, out, _ = call(capsys, "hwv", "--algebra", "twisted", "--degree", "1")
    assert code == 0
    data = json.loads(out)
    assert data["vectors"] == [] and data["degree2"] == 2


def test_hwv_schema(capsys):
    code, out, _ = call(capsys, "hwv", "--algebra", "untwisted", "--degree", "3/2", "--json")
    data = json.loads(out)
    assert sorted(v["charge"] for v in data["vectors"]) == [-1, 3]
    for v in data["vectors"]:
        for mono, num, den in v["terms"]:
            assert all(len(p) == 2 for p in mono) and den > 0


def test_hwv_text(capsys):
    code, out, _ = call(capsys, "--format", "text", "hwv", "--algebra", "twisted",
                        "--degree", "1.5")
    assert code == 0 and out.startswith("# twisted hwv at degree 3/2: 1")


def test_bijection_thirteen_halves(capsys):
    code, out, _ = call(capsys, "bijection", "--degree", "6.5")
    data = json.loads(out)
    assert code == 0
    assert data["ptdo"] == data["bpdi"] == data["hwv"] == data["image_rank"] == 7
    assert data["image_charges_ok"]
    charges = {row["charge"]: row["hwv"] for row in data["charges"]}
    assert charges == {13: 1, 9: 1, 5: 2, 1: 2, -3: 1}
    assert all(row["birank"] == row["hwv"] == row["crank"] for row in data["charges"])


def test_bijection_csv(capsys):
    code, out, _ = call(capsys, "--format", "csv", "bijection", "--degree", "13/2")
    lines = out.strip().splitlines()
    assert lines[0] == "charge,birank,hwv,crank"
    assert "13,1,1,1" in lines


def test_bijection_table_direct():
    assert bijection_table(0)["pairs"] == [["(-|-)", 0]]


def test_character_roundtrip(capsys):
    code, out, _ = call(capsys, "character", "--which", "fock", "--order", "6")
    s = Series.from_json(json.loads(out))
    assert s.coefficient(q=1, z=2) == 1


def test_verify_identity_r(capsys):
    code, out, _ = call(capsys, "verify", "--identity", "identityR", "--order", "40")
    assert code == 0
    data = json.loads(out)
    assert data["summary"] == [["identityR", "pass"]]


def test_verify_csv(capsys):
    code, out, _ = call(capsys, "--format", "csv", "verify", "--identity", "dimension",
                        "--order", "10", "--no-stability")
    assert out.strip().splitlines() == ["identity,order,status,stable", "dimension,10,pass,"]


def test_verify_window(capsys):
    code, out, _ = call(capsys, "verify", "--identity", "appendix", "--order", "6",
                        "--window", "a=12", "--no-stability")
    assert code == 0
    assert json.loads(out)["reports"][0]["windows"]["a"] == [-12, 12]


@pytest.mark.parametrize("argv", [
    ["hwv", "--algebra", "affine", "--degree", "1"],
    ["hwv", "--algebra", "twisted", "--degree", "1/3"],
    ["hwv", "--algebra", "twisted", "--degree", "-1"],
    ["verify", "--identity", "nothing", "--order", "4"],
    ["verify", "--identity", "appendix", "--order", "4", "--window", "a=3"],
    ["verify", "--identity", "appendix", "--order", "4", "--window", "b=30"],
    ["hirota", "--max-degree", "2"],
    ["character", "--which", "fock", "--order", "-2"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, _ = call(capsys, *argv)
    assert code == 2


def test_hirota_scan(capsys):
    code, out, _ = call(capsys, "hirota", "--scan", "--max-degree", "3", "--trials", "4",
                        "--seed", "7")
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass" and data["max_degree2"] == 6


def test_partitions(capsys):
    code, out, _ = call(capsys, "--format", "csv", "partitions", "--family", "ptdo",
                        "--max-weight", "3")
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert [int(c) for _, c in rows] == [1, 1, 1, 2, 1, 2, 3]
    code, out, _ = call(capsys, "partitions", "--family", "bpdi", "--max-weight", "2")
    data = json.loads(out)
    assert [(r["weight2"], r["birank"]) for r in data] == [(0, 0), (1, 1), (2, 2), (3, 3),
                                                           (3, -1), (4, 4)]


def test_deterministic_output(capsys):
    a = call(capsys, "hirota", "--scan", "--max-degree", "2", "--trials", "3", "--seed", "1")
    b = call(capsys, "hirota", "--scan", "--max-degree", "2", "--trials", "3", "--seed", "1")
    assert a == b


def test_output_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CKP_OUTPUT_DIR", str(tmp_path / "out"))
    code = run(["--output", "counts.csv", "--format", "csv", "partitions", "--family", "odp",
                "--max-weight", "2"])
    assert code == 0
    assert (tmp_path / "out" / "counts.csv").read_text().startswith("weight2,count\n0,1\n1,1")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ckp", "partitions", "--family", "odp",
                           "--max-weight", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["partition"] == "()"
