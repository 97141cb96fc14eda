import io
import json
import subprocess
import sys

import numpy as np
import pytest

from qboundstate.cli import (
    EXIT_FAIL,
    EXIT_OK,
    EXIT_USAGE,
    ConfigError,
    RunConfig,
    main,
    parse_config,
    particles,
    read_export,
    run,
)
from qboundstate.smatrix import assemble_S

BASE = """\
# fundamental pair
q_re = 0.8
q_im = 0.3
g = 1.2
M1 = 1
M2 = 1
xplus1_re = 1.6
xplus1_im = 0.7
xplus2_re = -0.9
xplus2_im = 1.8
seed = 7
"""


@pytest.fixture
def cfg_file(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text(BASE)
    return p


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        cfg = parse_config(argv)
    except ConfigError as exc:
        return EXIT_USAGE, "", str(exc)
    return run(cfg, out, err), out.getvalue(), err.getvalue()


def test_minimal_config(cfg_file):
    cfg = parse_config(["smat", "--config", str(cfg_file)])
    assert isinstance(cfg, RunConfig)
    assert cfg.command == "smat" and cfg.params["M1"] == 1 and cfg.params["g"] == 1.2
    assert cfg.get("alpha_re") == 1.0  # default


def test_missing_key_is_named(tmp_path):
    p = tmp_path / "bad.cfg"
    p.write_text(BASE.replace("g = 1.2\n", ""))
    with pytest.raises(ConfigError, match=r"\bg\b"):
        parse_config(["smat", "--config", str(p)])


def test_unknown_keys_listed(cfg_file):
    with pytest.raises(ConfigError, match="unknown keys: bar, foo"):
        parse_config(["smat", "--config", str(cfg_file), "--set", "foo=1", "--set", "bar=2"])


def test_override_wins_and_conflict_needs_marker(cfg_file):
    cfg = parse_config(["smat", "--config", str(cfg_file), "--override", "g=2.5"])
    assert cfg.params["g"] == 2.5
    with pytest.raises(ConfigError, match="override"):
        parse_config(["smat", "--config", str(cfg_file), "--set", "g=2.5"])
    # restating the same value is not a conflict
    assert parse_config(["smat", "--config", str(cfg_file), "--set", "g=1.2"]).params["g"] == 1.2


@pytest.mark.parametrize("line", ["g = abc", "g = nan", "g = inf", "M1 = 1.5", "novalue"])
def test_unparsable_values(tmp_path, line):
    p = tmp_path / "bad.cfg"
    p.write_text(BASE.replace("g = 1.2", line))
    with pytest.raises(ConfigError):
        parse_config(["smat", "--config", str(p)])


def test_export_schema_and_roundtrip(cfg_file, tmp_path):
    out = tmp_path / "S.json"
    code, _, _ = _run(["export", "--config", str(cfg_file), "--out", str(out)])
    assert code == EXIT_OK
    S, meta = read_export(out)
    assert S.shape == (16, 16)
    assert len(meta["basis1"]) == 4 and len(meta["basis2"]) == 4
    assert meta["seed"] == 7
    for key in ("q_re", "q_im", "g", "xplus1_re", "xplus1_im", "xplus2_re", "xplus2_im"):
        assert key in meta["params"]
    assert meta["params"]["particle1"]["xminus"]
    assert meta["residuals"]["invariance_max"] < 1e-8
    kin1, kin2 = particles(parse_config(["smat", "--config", str(cfg_file)]))
    assert np.array_equal(S, assemble_S(kin1, kin2))


def test_export_is_byte_identical(cfg_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert _run(["export", "--config", str(cfg_file), "--out", str(p)])[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert list(doc) == sorted(doc)


def test_export_needs_output(cfg_file):
    assert _run(["export", "--config", str(cfg_file)])[0] == EXIT_USAGE


def test_kinematics_command(cfg_file):
    code, out, _ = _run(["kinematics", "--config", str(cfg_file)])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert max(doc["particle1"]["residuals"].values()) < 1e-9


def test_verify_all_passes(cfg_file):
    code, out, _ = _run(["verify", "all", "--config", str(cfg_file)])
    assert code == EXIT_OK, out
    assert "FAIL" not in out and "passed" in out


def test_verify_corrupted_s_fails(cfg_file):
    code, out, _ = _run(["verify", "ybe", "--config", str(cfg_file), "--corrupt-s"])
    assert code == EXIT_FAIL
    assert "FAIL" in out


def test_pole_gives_usage_exit(cfg_file):
    kin1, _ = particles(parse_config(["smat", "--config", str(cfg_file)]))
    xm = kin1.xminus
    code, _, err = _run(
        ["smat", "--config", str(cfg_file), "--override", f"xplus2_re={xm.real!r}", "--override", f"xplus2_im={xm.imag!r}"]
    )
    assert code == EXIT_USAGE
    assert "pole" in err.lower()


def test_usage_errors():
    assert _run(["bogus"])[0] == EXIT_USAGE
    assert _run(["verify", "nosuchsuite", "--set", "q_re=0.8", "--set", "g=1", "--set", "M1=1", "--set", "M2=1"])[0] == EXIT_USAGE
    assert _run(["smat", "--config", "/nonexistent/run.cfg"])[0] == EXIT_USAGE


def test_main_entry_point_exit_codes(cfg_file):
    assert main(["verify", "sixj", "--config", str(cfg_file)]) == EXIT_OK
    assert main(["verify", "--config", str(cfg_file), "--set", "M1=0"]) == EXIT_USAGE


def test_console_subprocess(cfg_file, tmp_path):
    out = tmp_path / "S.json"
    r = subprocess.run(
        [sys.executable, "-m", "qboundstate.cli", "export", "--config", str(cfg_file), "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0, r.stderr
    assert out.exists()
