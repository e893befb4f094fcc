"""File formats: potential CSV, spectral/target/report JSON.

JSON is emitted with fixed field order and fixed float formatting
(17 significant digits), so identical inputs produce byte-identical
outputs suitable for regression diffs.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InputError
from .forward import Eigenpair
from .inverse import RunReport, SpectralTarget
from .potential import GridFunction, TrigSeries
from .validate import ValidationReport

_FLOAT_FMT = ".17g"


def fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise InputError(f"cannot serialize non-finite value {x!r}")
    return format(float(x), _FLOAT_FMT)


def _emit(obj: Any) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, dict):
        parts = (f"{json.dumps(str(k))}: {_emit(v)}" for k, v in obj.items())
        return "{" + ", ".join(parts) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_emit(v) for v in obj) + "]"
    raise InputError(f"cannot serialize object of type {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Deterministic JSON text (insertion-ordered fields, 17-digit floats)."""
    return _emit(obj) + "\n"


def dump(obj: Any, path) -> None:
    Path(path).write_text(dumps(obj))


def _load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}")


# ---------------------------------------------------------------- potential CSV


def save_potential_csv(v: GridFunction, path) -> None:
    """Write the grid samples as ``x,v`` rows with 17 significant digits."""
    lines = ["x,v"]
    x = v.x
    lines.extend(f"{fmt_float(x[i])},{fmt_float(v.samples[i])}" for i in range(len(x)))
    Path(path).write_text("\n".join(lines) + "\n")


def load_potential_csv(path) -> GridFunction:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    if not rows or [c.strip() for c in rows[0]] != ["x", "v"]:
        raise InputError(f"{path}: expected CSV header 'x,v'")
    body = [r for r in rows[1:] if r]
    try:
        xs = np.array([float(r[0]) for r in body])
        vs = np.array([float(r[1]) for r in body])
    except (ValueError, IndexError) as exc:
        raise InputError(f"{path}: malformed row: {exc}")
    n = len(xs) - 1
    if n < 1:
        raise InputError(f"{path}: need at least two rows of samples")
    expected = np.arange(n + 1) / n
    if np.abs(xs - expected).max() > 1e-9:
        raise InputError(f"{path}: x column is not the uniform grid i/{n} on [0, 1]")
    return GridFunction(n, vs)


# --------------------------------------------------------------------- trig JSON


def trig_series_to_dict(s: TrigSeries) -> dict:
    return {"a0": s.a0, "cos": list(s.cos_coeffs), "sin": list(s.sin_coeffs)}


def trig_series_from_dict(d: dict) -> TrigSeries:
    try:
        return TrigSeries(float(d["a0"]), np.asarray(d["cos"], float), np.asarray(d["sin"], float))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed trig series object: {exc}")


# ----------------------------------------------------------------- spectral JSON


def spectral_data_to_dict(pairs: list[Eigenpair], p: float) -> dict:
    return {
        "p": float(p),
        "N": len(pairs),
        "pairs": [
            {"n": pr.n, "lambda": pr.lam, "mu": pr.mu, "nu": pr.nu, "alpha": pr.alpha}
            for pr in pairs
        ],
    }


def spectral_data_from_dict(d: dict) -> tuple[list[dict], float]:
    try:
        pairs = d["pairs"]
        p = float(d["p"])
        if len(pairs) != int(d["N"]):
            raise InputError("pair count disagrees with N")
        for pr in pairs:
            for key in ("n", "lambda", "mu", "nu", "alpha"):
                if key not in pr:
                    raise InputError(f"pair missing field {key!r}")
        return pairs, p
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed spectral data object: {exc}")


def load_spectral_data(path) -> tuple[list[dict], float]:
    return spectral_data_from_dict(_load_json(path))


# ------------------------------------------------------------------- target JSON


def target_to_dict(t: SpectralTarget) -> dict:
    return {
        "p": t.p,
        "N": t.order,
        "mu0": t.mu0,
        "mu": list(t.mu),
        "nu_scaled": None if t.nu_scaled is None else list(t.nu_scaled),
    }


def target_from_dict(d: dict) -> SpectralTarget:
    try:
        nu = d.get("nu_scaled")
        mu = np.asarray(d["mu"], dtype=float)
        if int(d["N"]) != len(mu):
            raise InputError("mu length disagrees with N")
        return SpectralTarget(
            float(d["mu0"]),
            mu,
            None if nu is None else np.asarray(nu, dtype=float),
            float(d.get("p", 2.0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed spectral target object: {exc}")


def load_target(path) -> SpectralTarget:
    return target_from_dict(_load_json(path))


# ------------------------------------------------------------------- report JSON


def run_report_to_dict(r: RunReport) -> dict:
    return {
        "iterations": r.iterations,
        "residual_history": list(r.residual_history),
        "converged": r.converged,
        "warnings": list(r.warnings),
    }


def validation_report_to_dict(r: ValidationReport) -> dict:
    return {
        "admissible": r.admissible,
        "first_violation": r.first_violation,
        "decay_constant": r.decay_constant,
        "identity_residual": r.identity_residual,
        "notes": list(r.notes),
    }
