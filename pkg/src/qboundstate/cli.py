"""Command-line front end.

Usage::

    qboundstate kinematics --config run.cfg
    qboundstate smat --config run.cfg --out S.json
    qboundstate export --config run.cfg --out S.json
    qboundstate verify [invariance|ybe|sixj|rational|classical|sq1|all] --config run.cfg

The config file holds ``key = value`` lines (``#`` starts a comment).
``--set key=value`` adds a value that must not contradict the file;
``--override key=value`` replaces a file value.  Exit codes: 0 all checks
pass, 1 a verification failed, 2 usage or parameter error (including poles).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import verify as V
from .kinematics import Kinematics, KinematicsError, ModelParams, build_kinematics, solve_mass_shell
from .oracle import DegeneracyError
from .qnum import QDomainError
from .report import VerificationReport
from .repspace import enumerate_basis
from .smatrix.assemble import assemble_S

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMMANDS = ("kinematics", "smat", "verify", "export")
SUITES = ("invariance", "ybe", "sixj", "rational", "classical", "sq1", "all")

INT_KEYS = {"M1", "M2", "M3", "root1", "root2", "seed", "points"}
FLOAT_KEYS = {
    "q_re", "q_im", "g", "alpha_re", "alpha_im", "alpha_tilde_re", "alpha_tilde_im",
    "xplus1_re", "xplus1_im", "xplus2_re", "xplus2_im",
    "gamma1_re", "gamma1_im", "gamma2_re", "gamma2_im",
    "tolerance", "h",
}  # fmt: skip
DEFAULTS = {
    "q_im": 0.0,
    "alpha_re": 1.0,
    "alpha_im": 0.0,
    "alpha_tilde_re": 1.0,
    "alpha_tilde_im": 0.0,
    "gamma1_re": 1.0,
    "gamma1_im": 0.0,
    "gamma2_re": 1.0,
    "gamma2_im": 0.0,
    "root1": 0,
    "root2": 0,
    "M3": 1,
    "seed": 0,
    "points": 3,
    "h": 0.3,
}
REQUIRED = {
    "kinematics": ("q_re", "g", "M1", "M2", "xplus1_re", "xplus1_im", "xplus2_re", "xplus2_im"),
    "smat": ("q_re", "g", "M1", "M2", "xplus1_re", "xplus1_im", "xplus2_re", "xplus2_im"),
    "export": ("q_re", "g", "M1", "M2", "xplus1_re", "xplus1_im", "xplus2_re", "xplus2_im"),
    "verify": ("q_re", "g", "M1", "M2"),
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    output_path: str | None = None
    suite: str = "all"
    corrupt_s: bool = False  # test hook: perturb one S entry before verification

    def get(self, key):
        return self.params.get(key, DEFAULTS.get(key))

    def complex_value(self, stem: str) -> complex:
        return complex(self.get(f"{stem}_re"), self.get(f"{stem}_im"))

    def model(self) -> ModelParams:
        return ModelParams(
            q=self.complex_value("q"), g=self.get("g"),
            alpha=self.complex_value("alpha"), alpha_tilde=self.complex_value("alpha_tilde"),
        )  # fmt: skip


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    try:
        if key in INT_KEYS:
            return int(raw)
        val = float(raw)
    except ValueError:
        raise ConfigError(f"cannot parse {key} = {raw!r} as a number") from None
    if not math.isfinite(val):
        raise ConfigError(f"{key} must be finite, got {raw!r}")
    return val


def _split_pairs(lines, origin: str) -> dict[str, str]:
    out = {}
    for i, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}:{i}: expected 'key = value', got {line!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key in out:
            raise ConfigError(f"{origin}:{i}: duplicate key {key!r}")
        out[key] = val
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qboundstate", description="Bound-state S-matrix toolkit")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("suite", nargs="?", default=None, help="verification suite (verify only)")
    ap.add_argument("--config", help="plain-text key = value file")
    ap.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="add a value absent from the file")
    ap.add_argument("--override", action="append", default=[], metavar="KEY=VALUE", help="replace a file value")
    ap.add_argument("--out", dest="output_path", help="export path")
    ap.add_argument("--corrupt-s", action="store_true", help=argparse.SUPPRESS)
    return ap


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def parse_config(argv) -> RunConfig:
    """Validated :class:`RunConfig` from command-line arguments (and the config file they name)."""
    ap = build_parser()
    ap.__class__ = _Parser
    args = ap.parse_args(list(argv))
    raw: dict[str, str] = {}
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        raw = _split_pairs(text.splitlines(), args.config)
    added = _split_pairs(args.set, "--set")
    for key, val in added.items():
        if key in raw and _parse_value(key, raw[key]) != _parse_value(key, val):
            raise ConfigError(f"--set {key}={val} conflicts with the config file value {raw[key]}; use --override")
        raw[key] = val
    raw.update(_split_pairs(args.override, "--override"))

    known = INT_KEYS | FLOAT_KEYS
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown keys: {', '.join(unknown)}")
    params = {k: _parse_value(k, v) for k, v in raw.items()}
    missing = [k for k in REQUIRED[args.command] if k not in params]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")
    for key in ("M1", "M2", "M3"):
        if key in params and params[key] < 1:
            raise ConfigError(f"{key} must be >= 1")
    suite = args.suite or "all"
    if args.command != "verify" and args.suite is not None:
        raise ConfigError(f"unexpected argument {args.suite!r} for {args.command}")
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if args.command == "export" and not args.output_path:
        raise ConfigError("export needs --out")
    return RunConfig(args.command, params, args.output_path, suite, args.corrupt_s)


# -- kinematics from a config ----------------------------------------------------


def particles(cfg: RunConfig) -> tuple[Kinematics, Kinematics]:
    params = cfg.model()
    out = []
    for i in (1, 2):
        xp, M = cfg.complex_value(f"xplus{i}"), cfg.get(f"M{i}")
        root = cfg.get(f"root{i}")
        if root not in (0, 1):
            raise ConfigError(f"root{i} must be 0 (smaller modulus) or 1")
        xm = solve_mass_shell(xp, params, M)[root]
        out.append(build_kinematics(xp, xm, params, M, cfg.complex_value(f"gamma{i}")))
    return out[0], out[1]


def _c(x: complex) -> dict:
    x = complex(x)
    return {"re": x.real, "im": x.imag}


# -- export ------------------------------------------------------------------------


def export_document(S: np.ndarray, kin1: Kinematics, kin2: Kinematics, params: dict, residuals: dict, seed: int) -> str:
    """Deterministic JSON text: explicit bases, ``entries[out][in]``, inputs and residuals."""
    doc = {
        "basis1": [s.as_list() for s in enumerate_basis(kin1.M)],
        "basis2": [s.as_list() for s in enumerate_basis(kin2.M)],
        "basis_state": "[m, n, k, l]: m, n fermionic and k, l bosonic occupation numbers",
        "index_order": "tensor index i1 * len(basis2) + i2; entries[out][in]",
        "entries": [[_c(v) for v in row] for row in S],
        "params": {**{k: params[k] for k in sorted(params)}, "particle1": kin1.as_dict(), "particle2": kin2.as_dict()},
        "residuals": residuals,
        "seed": seed,
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def export_matrix(S, kin1, kin2, path, params=None, residuals=None, seed: int = 0) -> None:
    try:
        Path(path).write_text(export_document(S, kin1, kin2, params or {}, residuals or {}, seed))
    except OSError as exc:
        raise ConfigError(f"cannot write export: {exc}") from None


def read_export(path) -> tuple[np.ndarray, dict]:
    """Matrix and the remaining document fields of an export file."""
    doc = json.loads(Path(path).read_text())
    S = np.array([[complex(e["re"], e["im"]) for e in row] for row in doc.pop("entries")])
    return S, doc


# -- commands ----------------------------------------------------------------------


def _corrupt(builder):
    def wrapped(kin1, kin2):
        S = builder(kin1, kin2).copy()
        S[1, 1] *= 1 + 1e-3
        return S

    return wrapped


def _tol(cfg: RunConfig, default: float) -> float:
    t = cfg.get("tolerance")
    return default if t is None else t


def suite_reports(cfg: RunConfig, name: str) -> list[VerificationReport]:
    """Run one named suite at the configured model parameters; random points follow ``seed``."""
    seed, npts = cfg.get("seed"), cfg.get("points")
    rng = np.random.default_rng(seed)
    params = cfg.model()
    M1, M2, M3 = cfg.get("M1"), cfg.get("M2"), cfg.get("M3")
    builder = _corrupt(assemble_S) if cfg.corrupt_s else assemble_S
    q = params.q
    reps: list[VerificationReport] = []

    if name == "invariance":
        for _ in range(npts):
            k1, k2 = V.random_generic(rng, params, M1, M2)
            S = builder(k1, k2)
            reps.append(V.check_invariance(S, k1, k2, _tol(cfg, 1e-8), seed=seed))
            if 16 * M1 * M2 <= 64:
                reps.append(V.check_uniqueness(k1, k2, seed=seed))
                reps.append(V.check_oracle_agreement(k1, k2, _tol(cfg, 1e-8), S=S, seed=seed))
            if M1 == M2 == 1:
                reps.append(V.check_fundamental(k1, k2, _tol(cfg, 1e-10), seed=seed))
    elif name == "ybe":
        for _ in range(npts):
            ks = V.random_generic(rng, params, M1, M2, M3)
            reps.append(V.check_ybe_subspaceI(M1, M2, M3, *(k.z for k in ks), q, _tol(cfg, 1e-8), seed=seed))
            if 4 * M1 * 4 * M2 * 4 * M3 <= 512:
                reps.append(V.check_ybe_full(*ks, _tol(cfg, 1e-8), builder=builder, seed=seed))
    elif name == "sixj":
        dus = rng.normal(size=npts) + 1j * rng.normal(size=npts)
        reps.append(V.check_sixj_identity(M1, M2, list(dus), q, _tol(cfg, 1e-8), seed=seed))
    elif name == "rational":
        for _ in range(npts):
            x1, x2 = (1.5 * np.exp(2j * np.pi * rng.uniform()) * rng.uniform(1, 1.5) for _ in range(2))
            reps.append(V.check_rational_limit(M1, M2, x1, x2, params.g, tolerance=_tol(cfg, 0.2), seed=seed))
    elif name == "classical":
        h = cfg.get("h")
        x1, x2 = (1.5 * np.exp(1j * rng.uniform(0.2, 2.9)) * rng.uniform(1, 1.5) for _ in range(2))
        for k1 in range(M1):
            for k2 in range(M2):
                reps.append(V.check_classical_limit(M1, M2, k1, k2, h, x1, x2, tolerance=_tol(cfg, 1e-5), seed=seed))
                reps.append(V.check_full_rational_limit(M1, M2, k1, k2, x1, x2, tolerance=_tol(cfg, 1e-4), seed=seed))
    elif name == "sq1":
        # closed forms exist for a fundamental second particle: run at (M1, 1)
        for _ in range(npts):
            k1, k2 = V.random_generic(rng, params, M1, 1)
            reps.append(V.check_sq1_closed_forms(k1, k2, _tol(cfg, 1e-8), seed=seed))
            reps.append(V.check_sq1_relations(k1, k2, _tol(cfg, 1e-9), seed=seed))
    elif name == "all":
        for sub in SUITES[:-1]:
            reps.extend(suite_reports(cfg, sub))
    else:
        raise ConfigError(f"unknown suite {name!r}")
    return reps


def _cmd_kinematics(cfg: RunConfig, out) -> int:
    doc = {}
    for i, kin in enumerate(particles(cfg), 1):
        rec = kin.as_dict()
        rec.update(z=[complex(kin.z).real, complex(kin.z).imag], U=[complex(kin.U).real, complex(kin.U).imag],
                   V=[complex(kin.V).real, complex(kin.V).imag], residuals=kin.residuals())  # fmt: skip
        doc[f"particle{i}"] = rec
    out.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return EXIT_OK


def _cmd_smat(cfg: RunConfig, out) -> int:
    kin1, kin2 = particles(cfg)
    S = assemble_S(kin1, kin2)
    if cfg.corrupt_s:
        S = _corrupt(lambda a, b: S)(kin1, kin2)
    rep = V.check_invariance(S, kin1, kin2, _tol(cfg, 1e-8))
    residuals = {"invariance_max": rep.residual_max, "invariance_fro": rep.residual_fro}
    residuals.update({f"{name}_{i}": v for i, k in enumerate((kin1, kin2), 1) for name, v in k.residuals().items()})
    text = export_document(S, kin1, kin2, cfg.params, residuals, cfg.get("seed"))
    if cfg.output_path:
        export_matrix(S, kin1, kin2, cfg.output_path, cfg.params, residuals, cfg.get("seed"))
        out.write(f"wrote {S.shape[0]}x{S.shape[1]} S-matrix to {cfg.output_path}\n")
    elif cfg.command == "smat":
        out.write(text)
    out.write(rep.line() + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _cmd_verify(cfg: RunConfig, out) -> int:
    reps = suite_reports(cfg, cfg.suite)
    width = max(len(r.name) for r in reps)
    out.write(f"{'check':<{width}}  {'status':<6}  {'residual':>9}  {'tol':>7}\n")
    for r in reps:
        out.write(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  {r.residual_max:9.2e}  {r.tolerance:7.0e}\n")
    failed = sum(not r.passed for r in reps)
    out.write(f"{len(reps) - failed}/{len(reps)} passed\n")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute a validated config; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    handler = {"kinematics": _cmd_kinematics, "smat": _cmd_smat, "export": _cmd_smat, "verify": _cmd_verify}[cfg.command]
    try:
        return handler(cfg, out)
    except ConfigError as exc:
        err.write(f"error: {exc}\n")
    except KinematicsError as exc:
        # PoleError and OffShellError land here too
        err.write(f"error: {type(exc).__name__}: {exc}\n")
    except (QDomainError, DegeneracyError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
    except ArithmeticError as exc:
        # internal cross-checks break down on singular kinematics
        err.write(f"error: numerical breakdown near a singular point: {exc}\n")
    return EXIT_USAGE


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
