import json
import subprocess
import sys

import pytest

from fermiwig.cli import main
from fermiwig.expressions import ExpressionError, parse_operator
from fermiwig.fock import operators_equal
from fermiwig.bogoliubov import build_bogoliubov, ladder
from fermiwig.rings import SQRT2


def test_verify_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "--suite", "car", "--suite", "sifting", "--modes", "2,2",
                 "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["scenario"]["modes"]["k_points"] == 2
    assert "checks passed" in capsys.readouterr().out


def test_verify_config_errors_exit_2(capsys):
    assert main(["verify", "--modes", "1,3"]) == 2
    assert main(["verify", "--suite", "delta-overlaps"]) == 2
    assert "laurent-eps" in capsys.readouterr().err


def test_verify_with_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"ring": "float"}))
    assert main(["verify", "--config", str(cfg), "--quiet"]) == 0


def test_overlap_command(capsys):
    assert main(["overlap", "--c1", "1", "--c2", "-1", "--t", "1/2"]) == 0
    out = capsys.readouterr().out
    assert "h1 = (2/3,0)" in out and "agree" in out
    assert main(["overlap", "--c1", "+1", "--c2", "-1", "--t", "1", "--params", "zero"]) == 0
    out = capsys.readouterr().out
    assert "direct:   0" in out and "singular" in out


def test_wigner_and_star_commands(capsys, tmp_path):
    assert main(["wigner", "--op", "q0"]) == 0
    assert "W[q, p] = (1,0) * <q[1,↑]>" in capsys.readouterr().out
    assert main(["star", "--ops", "a0,ad0"]) == 0
    assert "equals the Wigner functional" in capsys.readouterr().out
    doc = tmp_path / "w.txt"
    assert main(["wigner", "--op", "a0*ad1 + one", "--out", str(doc)]) == 0
    assert main(["weyl", "--file", str(doc)]) == 0
    assert "fock-operator" in capsys.readouterr().out
    assert main(["weyl", "--op", "ad0*a1 - 2*i*one"]) == 0
    assert "roundtrip exact" in capsys.readouterr().out


def test_bad_expression_exit_2(capsys):
    assert main(["wigner", "--op", "__import__('os')"]) == 2
    assert main(["star", "--ops", "a0"]) == 2


def test_expression_language(m2):
    a, ad = ladder(m2)
    b = build_bogoliubov(m2)
    assert operators_equal(parse_operator("(a0 + ad0)/sqrt2", m2), (a[0] + ad[0]) * SQRT2.inverse())
    assert operators_equal(parse_operator("q1 - 3*p0**1", m2), b.g[1] - b.gd[0] * 3)
    assert operators_equal(parse_operator("-hd0 + i", m2), -b.hd[0] + parse_operator("i*one", m2))
    for bad in ("a9", "x0", "a0/a1", "a0**-1", "1.5*a0", "a0.real", "[a0]"):
        with pytest.raises(ExpressionError):
            parse_operator(bad, m2)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fermiwig", "verify", "--suite", "car", "--quiet"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert "12/12 checks passed" in proc.stdout
