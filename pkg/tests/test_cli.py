import json
import subprocess
import sys

import pytest

from heckezeta.cache import DetCache, cache_key
from heckezeta.cli import main, parse_rep
from heckezeta.errors import ParameterError
from heckezeta.serialize import fmt_complex, parse_complex, read_config
from heckezeta.zeta import ZetaQuery, zeta_eval


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_complex_format_roundtrip():
    for z in (0.1 + 0.2j, -1e-300 - 3.5j, 2.0 + 0j, complex(1 / 3, -2 / 7)):
        assert parse_complex(fmt_complex(z)) == z
    assert parse_complex("2.0+0.0i") == 2
    assert parse_complex("-0.5") == -0.5
    assert parse_complex("3i") == 3j
    with pytest.raises(ValueError):
        parse_complex("abc")


def test_delta_command(capsys, tmp_path):
    code, out, _ = run(capsys, "delta", "--w", "3", "--tol", "1e-8", "--out", str(tmp_path))
    assert code == 0
    assert len(out.strip().split(".")[1]) == 10
    doc = json.loads((tmp_path / "delta.json").read_text())
    assert doc["schema_version"] == 1 and abs(doc["delta"] - float(out)) < 1e-10


def test_zeta_command_matches_library(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("HECKE_CACHE", str(tmp_path / "c.jsonl"))
    code, out, _ = run(capsys, "zeta", "--w", "3", "--rep", "trivial", "--s", "2.0+0.0i")
    assert code == 0
    assert abs(parse_complex(out) - zeta_eval(ZetaQuery(3.0, 2.0))) < 1e-15
    # second call is served from the cache
    code, out2, _ = run(capsys, "zeta", "--w", "3", "--s", "2.0+0.0i")
    assert out2 == out
    assert len(DetCache(tmp_path / "c.jsonl")) == 1


def test_exit_codes(capsys):
    assert run(capsys, "zeta", "--w", "1.5", "--s", "1")[0] == 2
    assert run(capsys, "zeta", "--w", "3", "--s", "-0.5")[0] == 3
    assert run(capsys, "dump-matrix", "--w", "3", "--s", "1", "--M", "5000")[0] == 4
    assert run(capsys, "zeta", "--w", "3", "--s", "nonsense")[0] == 2


def test_json_errors(capsys):
    code, _, err = run(capsys, "zeta", "--w", "3", "--s", "-1", "--json-errors")
    doc = json.loads(err)
    assert code == 3 and doc["error"] == "PoleError" and doc["m"] + doc["j"] == 3


def test_euler_check_exit(capsys):
    code, out, _ = run(capsys, "euler-check", "--w", "3", "--s", "1.5", "--ell-max", "6")
    assert "rel_gap" in out and code == 1   # gap is ~1e-3 at this truncation


def test_factor_and_recursion_checks(capsys):
    assert run(capsys, "factor-check", "--w", "4", "--s", "0.3+8i")[0] == 0
    assert run(capsys, "recursion-check", "--w", "3", "--s", "0.2+5i", "--k", "2", "--M", "40")[0] == 0


def test_specfun_command(capsys):
    code, out, _ = run(capsys, "specfun", "--fn", "hurwitz", "--s", "2", "--a", "1")
    assert abs(parse_complex(out) - 1.6449340668482264) < 1e-15


def test_rep_parsing(tmp_path):
    assert parse_rep("character:0.25:-1", 3.0).dim == 1
    assert parse_rep("induced-index2", 3.0).dim == 2
    f = tmp_path / "rep.json"
    f.write_text(json.dumps({"U_S": [[0, 1], [1, 0]], "U_T": [[1, 0], [0, -1]]}))
    assert parse_rep(f"matrix:{f}", 3.0).dim == 2
    with pytest.raises(ParameterError):
        parse_rep("bogus", 3.0)


def test_config_file_and_unknown_keys(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("w = 3\ns = 2.0\n")
    code, out, _ = run(capsys, "zeta", "--config", str(cfg))
    assert code == 0
    cfg.write_text("w = 3\ns = 2\nbanana = 1\n")
    assert run(capsys, "zeta", "--config", str(cfg))[0] == 2
    # command-line flags win over the file
    cfg.write_text("w = 4\ns = 2\n")
    _, out4, _ = run(capsys, "zeta", "--config", str(cfg), "--w", "3")
    assert out4 == out


def test_read_config_rejects_garbage(tmp_path):
    f = tmp_path / "x.cfg"
    f.write_text("no equals sign\n")
    with pytest.raises(ValueError):
        read_config(f)


def test_cache_skips_malformed_lines(tmp_path):
    p = tmp_path / "c.jsonl"
    c = DetCache(p)
    c.put("k", 1 + 2j)
    with open(p, "a") as fh:
        fh.write("{broken\n")
    c2 = DetCache(p)
    assert c2.get("k") == 1 + 2j and c2.skipped == 1


def test_cache_audit_recomputes(tmp_path):
    c = DetCache(tmp_path / "c.jsonl", audit_rate=1.0)
    c.put("k", 1.0)
    assert c.lookup("k", lambda: 2.0) == 2.0


def test_cache_key_quantizes():
    assert cache_key(3, "r", 1 + 1e-14j, 40, 0.7) == cache_key(3, "r", 1 + 0j, 40, 0.7)


def test_report_requires_delta(capsys, tmp_path):
    assert run(capsys, "report", "--results", str(tmp_path))[0] == 2


def test_report_empty_resonances(capsys, tmp_path):
    run(capsys, "delta", "--w", "3", "--out", str(tmp_path))
    (tmp_path / "resonances_w3.json").write_text(json.dumps({"zeros": []}))
    code, out, _ = run(capsys, "report", "--results", str(tmp_path))
    assert code == 0 and (tmp_path / "resonances_w3.svg").exists()


def test_growth_scan_naming(capsys, tmp_path):
    code, _, _ = run(capsys, "growth-scan", "--w", "3", "--sigma", "0.25", "--t-min", "10",
                     "--t-max", "14", "--steps", "3", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "growth_w3_sigma0.25.csv").exists()
    lines = (tmp_path / "growth_w3_sigma0.25.csv").read_text().splitlines()
    assert lines[0].startswith("# heckezeta growth-scan")
    assert lines[1] == "t,sigma,re_Z,im_Z,log_abs_Z,M_used,converged"


def test_console_script_module():
    r = subprocess.run([sys.executable, "-m", "heckezeta.cli", "delta", "--w", "4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("0.68367")
