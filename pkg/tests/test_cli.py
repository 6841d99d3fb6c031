import csv
import io
import shutil
import subprocess
import sys

import pytest

from cuspzeta import cli
from cuspzeta import scattering as S
from cuspzeta.errors import ParseError

MODEL = S.build_model({"kappa": 1, "n": 2, "plus": {"poles": [(-0.7 + 1.3j, 1), (-2 + 0.5j, 2)], "p_const": 1.5}})


@pytest.fixture
def spectral_cfg(tmp_path):
    (tmp_path / "model.scat").write_text(S.serialize_scattering(MODEL))
    (tmp_path / "run.cfg").write_text(
        "# spectral test family\nn 2\nscattering model.scat\neigenvalue 1.3 2 1\neigenvalue 2.1 1 -1\nkernel_dim 1\n")
    return tmp_path / "run.cfg"


def run(tmp_path, *argv):
    out = tmp_path / "out"
    code = cli.main([*argv, "--out-dir", str(out)])
    files = {p.name: p.read_bytes() for p in out.iterdir()} if out.exists() else {}
    return code, files


def rows(data: bytes):
    lines = [l for l in data.decode().splitlines() if not l.startswith("#")]
    return list(csv.reader(lines))


def test_validate(tmp_path):
    code, files = run(tmp_path, "validate")
    assert code == 0
    table = rows(files["validate.csv"])
    assert table[0][:4] == ["suite", "case", "value", "passed"] or len(table) > 1


def test_deterministic_bytes(tmp_path, spectral_cfg):
    a = run(tmp_path / "a", "eta", "--config", str(spectral_cfg))
    b = run(tmp_path / "b", "eta", "--config", str(spectral_cfg))
    assert a[0] == 0 and a[1] == b[1]


def test_eta_routes(tmp_path, spectral_cfg):
    code, files = run(tmp_path, "eta", "--config", str(spectral_cfg))
    text = files["eta.csv"].decode()
    assert "# input n: 2" in text
    assert code == 0


def test_text_format(tmp_path, spectral_cfg):
    code, files = run(tmp_path, "poles", "--config", str(spectral_cfg), "--format", "text")
    assert code == 0
    assert "poles.txt" in files
    assert files["poles.txt"].decode().startswith("command")


def test_poles_schema(tmp_path, spectral_cfg):
    code, files = run(tmp_path, "poles", "--config", str(spectral_cfg))
    assert rows(files["poles.csv"])[0] == ["location_re", "location_im", "order", "residue_re", "residue_im", "source"]
    assert b"# regular_at_zero: true" in files["poles.csv"]


def test_det_and_plot(tmp_path, spectral_cfg):
    code, files = run(tmp_path, "det", "--config", str(spectral_cfg), "--s-grid", "0.5:1.5:0.5", "--plot")
    assert code == 0
    table = rows(files["det.csv"])
    assert table[0] == ["s", "log_det_mellin", "log_det_product", "log_C"]
    assert len(table) == 4
    assert files["det.png"].startswith(b"\x89PNG")
    mel, prod = float(table[2][1]), float(table[2][2])
    assert abs(mel - prod) < 1e-8


def test_verify_fe(tmp_path, spectral_cfg):
    code, files = run(tmp_path, "verify-fe", "even", "--config", str(spectral_cfg), "--s", "0.3", "0.5,0.2")
    assert code == 0
    table = rows(files["verify-fe_even.csv"])
    assert all(float(r[-1]) < 1e-6 for r in table[1:])


def test_unipotent_and_heat_trace(tmp_path):
    code, files = run(tmp_path, "unipotent", "--n", "3")
    assert code == 0 and files
    code, files = run(tmp_path, "heat-trace", "--n", "2", "--t-grid", "0.1:1:3")
    assert code == 0
    assert len(rows(files["heat-trace.csv"])) == 4


def test_ms_check(tmp_path):
    code, files = run(tmp_path, "ms-check", "--lambda", "0.7", "--R", "5", "10")
    assert code == 0


def test_env_out_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_DIR_ENV, str(tmp_path / "env"))
    assert cli.main(["unipotent", "--n", "2"]) == 0
    assert (tmp_path / "env" / "unipotent.csv").is_file()


def test_stdout_when_no_out_dir(capsysbinary, monkeypatch):
    monkeypatch.delenv(cli.OUT_DIR_ENV, raising=False)
    assert cli.main(["unipotent", "--n", "1"]) == 0
    assert capsysbinary.readouterr().out.startswith(b"# command: unipotent")


def test_exit_codes(tmp_path, spectral_cfg):
    assert cli.main(["nonsense"]) == 2
    code, files = run(tmp_path / "x", "eta", "--config", str(tmp_path / "missing.cfg"))
    assert code == 2 and b"ValidationError" in files["eta.csv"]
    bad = tmp_path / "bad.cfg"
    bad.write_text("n 2\nwhat 3\n")
    code, _ = run(tmp_path / "y", "eta", "--config", str(bad))
    assert code == 2
    # a point on the ledger is a computation error
    code, files = run(tmp_path / "z", "verify-fe", "odd", "--config", str(spectral_cfg), "--s=-0.7,1.3")
    assert code == 1 and b"PoleError" in files["verify-fe_odd.csv"]


def test_parse_config_errors():
    with pytest.raises(ParseError) as e:
        cli.parse_config("n 2\n\nkappa x\n")
    assert e.value.line == 3
    with pytest.raises(ParseError):
        cli.parse_config("synthetic 1 2\n")


def test_console_script(tmp_path):
    exe = shutil.which("cuspzeta")
    cmd = [exe] if exe else [sys.executable, "-m", "cuspzeta.cli"]
    res = subprocess.run([*cmd, "unipotent", "--n", "2"], capture_output=True, cwd=tmp_path)
    assert res.returncode == 0
    assert res.stdout.startswith(b"# command: unipotent")


@pytest.mark.parametrize("n, col", [(3, 2), (2, 3)])
def test_odd_hyperbolic_column_not_dropped(tmp_path, n, col):
    # the odd hyperbolic term is real for odd n and imaginary for even n
    cfg = tmp_path / "g.cfg"
    cfg.write_text(f"n {n}\nsynthetic 10 1.0 0.8 1\n")
    code, files = run(tmp_path, "heat-trace", "--config", str(cfg), "--t-grid", "0.5:2:3", "--parity", "odd")
    table = rows(files["heat-trace.csv"])
    assert code == 0 and table[0][2:4] == ["H_re", "H_im"]
    assert all(float(r[col]) != 0 and float(r[5 - col]) == 0 for r in table[1:])
