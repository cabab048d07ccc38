import json
import subprocess
import sys
from fractions import Fraction

import pytest

from bposit import FormatSpec, value_of
from bposit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_inspect_fields(capsys):
    code, out, _ = run(capsys, "inspect", "--format", "bposit:16:6:5", "0x0001")
    assert code == 0
    assert "0|000000|00000|0001" in out and "+17·2^-196" in out


def test_inspect_json(capsys):
    code, out, _ = run(capsys, "inspect", "--format", "bposit:16:6:5", "0xC000", "--json")
    doc = json.loads(out)
    assert doc["exact"] == "-1·2^0" and doc["one_hot"] == "100000"
    assert doc["effective_exponent"] == -1  # significand 1 - 3s + f = -2


def test_inspect_ieee(capsys):
    _, out, _ = run(capsys, "inspect", "--format", "ieee:16", "0x7c00", "0x0001")
    assert "inf" in out and "0|00000|0000000001" in out


def test_table_is_monotone(capsys):
    code, out, _ = run(capsys, "table", "--format", "bposit:8:6:3", "--json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 256 and rows[0]["class"] == "nar"
    spec = FormatSpec.bposit(8, 6, 3)
    vals = [value_of(int(r["hex"], 16), spec).to_fraction() for r in rows[1:]]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_table_limit(capsys):
    code, _, err = run(capsys, "table", "--format", "bposit:32:6:5")
    assert code == 1 and "limited" in err


def test_convert(capsys):
    _, out, _ = run(capsys, "convert", "--to", "bposit:32:6:5", "--digits", "8", "1.4657e-52", "--json")
    doc = json.loads(out)
    assert doc["value"] == "1.4657003E-52"
    _, out, _ = run(capsys, "convert", "--from", "posit:16:2", "--to", "ieee:32", "0x4000")
    assert "0x3f800000" in out


def test_sweep_is_byte_identical(capsys, tmp_path):
    args = ["sweep", "--formats", "bposit:16:6:3,ieee:16", "--samples", "3", "--seed", "4"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and a.startswith("# meta:")
    out = tmp_path / "s.csv"
    run(capsys, *args, "--out", str(out))
    assert out.read_text() == a


def test_zones(capsys):
    code, out, _ = run(capsys, "zones", "--format", "bposit:16:6:3", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["baseline"] == "ieee:16"
    assert Fraction(doc["pattern_fraction"]) == Fraction(doc["pattern_fraction"])


def test_circuit_report(capsys, tmp_path):
    code, out, _ = run(capsys, "circuit-report", "--kinds", "bposit-dec,posit-dec",
                       "--sizes", "16", "--export", str(tmp_path), "--dot", "--json")
    rows = json.loads(out)
    assert code == 0 and [r["kind"] for r in rows] == ["bposit-dec", "posit-dec"]
    assert (tmp_path / "bposit-dec-bposit_16_6_5.json").exists()
    assert (tmp_path / "posit-dec-posit_16_2.dot").exists()


def test_fuzz(capsys):
    code, out, _ = run(capsys, "fuzz", "--formats", "bposit:32:6:5,posit:16:2,ieee:32",
                       "--n", "2000", "--seed", "1", "--json")
    docs = json.loads(out)
    assert code == 0 and all(d["ok"] for d in docs)


def test_errors(capsys):
    code, out, _ = run(capsys, "inspect", "--format", "nope:1", "1", "--json")
    assert code == 1 and json.loads(out)["type"] == "InvalidFormat"
    code, _, err = run(capsys, "inspect", "--format", "bposit:8:6:3", "0x1ff")
    assert code == 1 and "does not fit" in err
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--json"])
    assert exc.value.code == 2
    assert json.loads(capsys.readouterr().out)["type"] == "usage"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "bposit", "inspect", "--format",
                          "posit:16:2", "0x4000"], capture_output=True, text=True)
    assert res.returncode == 0 and "+1·2^0" in res.stdout
