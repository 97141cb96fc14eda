"""Residual bookkeeping shared by all verification code."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np


@dataclass
class VerificationReport:
    name: str
    residual_max: float
    residual_fro: float
    tolerance: float
    point: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.residual_max <= self.tolerance)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name}: max={self.residual_max:.2e} fro={self.residual_fro:.2e} tol={self.tolerance:.0e}"

    def to_json(self) -> str:
        d = asdict(self)
        d["passed"] = self.passed
        return json.dumps(d, sort_keys=True, default=str)


def relative_residual(diff, *scale_terms) -> tuple[float, float]:
    """Max-entry and Frobenius norm of ``diff`` relative to the largest scale term."""
    diff = np.asarray(diff)
    smax = max([np.max(np.abs(t)) if np.size(t) else 0.0 for t in scale_terms] + [1e-300])
    sfro = max([np.linalg.norm(t) for t in scale_terms] + [1e-300])
    return float(np.max(np.abs(diff)) / smax) if diff.size else 0.0, float(np.linalg.norm(diff) / sfro)


def merge(name: str, parts: dict[str, tuple[float, float]], tolerance: float, point=None) -> VerificationReport:
    """Collapse named ``(max, fro)`` residual pairs into one report."""
    rmax = max((v[0] for v in parts.values()), default=0.0)
    rfro = max((v[1] for v in parts.values()), default=0.0)
    worst = max(parts, key=lambda k: parts[k][0]) if parts else None
    return VerificationReport(
        name=name,
        residual_max=rmax,
        residual_fro=rfro,
        tolerance=tolerance,
        point=point or {},
        details={"worst": worst, "parts": {k: v[0] for k, v in parts.items()}},
    )
