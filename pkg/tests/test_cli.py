import json
import subprocess
import sys

import pytest

from quasimod.cli import RunConfig, main
from quasimod.qseries import PuiseuxSeries


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eisenstein_pretty(capsys):
    code, out, _ = run(capsys, "qexp", "eisenstein", "--k", "2", "--order", "3")
    assert code == 0
    assert out.strip() == "1 - 24*q - 72*q^2 - 96*q^3"


def test_j_json(capsys):
    code, out, _ = run(capsys, "genfun", "j", "--order", "1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["coeffs"] == ["1", "744", "196884"]
    s = PuiseuxSeries.from_json(out)
    assert [e for e, _ in s.items()] == [-1, 0, 1]


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--order", "1", "--json", "genfun", "j")
    assert code == 0 and json.loads(out)["coeffs"] == ["1", "744", "196884"]


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "halphen", "--order", "10"),
        ("verify", "ramanujan", "--order", "20"),
        ("verify", "theta-eisenstein", "--order", "12"),
        ("verify", "delta-product", "--order", "12"),
        ("verify", "picard-fuchs", "--order", "12"),
        ("verify", "ohyama"),
    ],
)
def test_verify_ok(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.startswith("OK") and "MISMATCH" not in out


@pytest.mark.parametrize(
    "argv",
    [
        ("qexp", "eisenstein", "--k", "5"),
        ("qexp", "eisenstein", "--k", "2", "--order", "-1"),
        ("periods", "legendre", "--psi", "abc"),
        ("nosuch",),
        ("ff", "count", "--curve", "y^2=x^3+1", "--p", "9"),
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_derham_reduce(capsys):
    code, out, _ = run(capsys, "derham", "reduce", "x^2")
    assert code == 0
    assert "alpha = 1/12*t2 - t1^2" in out and "beta = 2*t1" in out


def test_gm_field(capsys):
    code, out, _ = run(capsys, "gm", "field")
    assert code == 0 and "(-1/12*t2 + t1^2)*d/dt1" in out


def test_ff_count(capsys):
    code, out, _ = run(capsys, "ff", "count", "--curve", "y^2+y=x^3-x^2", "--p", "13")
    assert code == 0 and "a_13 = 4" in out


def test_periods_aconst(capsys):
    code, out, _ = run(capsys, "periods", "aconst")
    assert code == 0 and "extrapolated" in out


def test_legendre_reports_both_orientations(capsys):
    code, out, _ = run(capsys, "periods", "legendre", "--psi", "1")
    assert code == 0
    assert "|LHS - 2 pi i| = 12.566" in out
    assert "|LHS + 2 pi i|" in out


def test_boundary_csv(capsys):
    code, out, _ = run(capsys, "periods", "boundary", "--n", "2")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("segment,")
    assert len(lines) == 1 + 6


def test_cache_is_deterministic(tmp_path, capsys):
    argv = ("genfun", "yau-zaslow", "--order", "8", "--json", "--cache-dir", str(tmp_path))
    _, first, _ = run(capsys, *argv)
    files = sorted(tmp_path.iterdir())
    blob = files[0].read_bytes()
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert sorted(tmp_path.iterdir()) == files and files[0].read_bytes() == blob


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(order=-2)
    with pytest.raises(ValueError):
        RunConfig(precision_bits=8)
    with pytest.raises(ValueError):
        RunConfig(output="xml")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "quasimod", "ff", "sigma", "--p", "5", "--k", "0"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "sigma_0(5) = -5"
