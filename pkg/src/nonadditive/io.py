"""JSON readers and writers for distributions, bipartite states and separable ensembles.

State format::

    {"dA": 2, "dB": 2, "re": [[...]], "im": [[...]]}

rows in the A-major ordering.  Ensemble format::

    {"weights": [...], "pA": [[...]], "pB": [[...]], "UA": {"re": ..., "im": ...}, "UB": {...}}

with UA / UB optional (identity).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .classical import as_joint_dist, as_prob_dist
from .constants import ValidationError
from .quantum_state import BipartiteState, SeparableEnsemble


def read_json_arg(text_or_path: str):
    """Parse an inline JSON literal, or the contents of the file it names."""
    text = text_or_path.strip()
    if text[:1] not in "[{":
        try:
            text = Path(text_or_path).read_text()
        except OSError as exc:
            raise ValidationError(f"cannot read {text_or_path!r}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}") from exc


def _complex(obj, key: str = "matrix") -> np.ndarray:
    if not isinstance(obj, dict) or "re" not in obj:
        raise ValidationError(f"{key} must be an object with 're' (and optionally 'im') arrays")
    try:
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float) if obj.get("im") is not None else np.zeros_like(re)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{key}: non-numeric entries") from exc
    if re.shape != im.shape:
        raise ValidationError(f"{key}: 're' has shape {re.shape} but 'im' has shape {im.shape}")
    return re + 1j * im


def _split(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def dist_from_json(obj) -> np.ndarray:
    return as_prob_dist(obj)


def joint_from_json(obj) -> np.ndarray:
    return as_joint_dist(obj)


def state_from_json(obj) -> BipartiteState:
    if not isinstance(obj, dict):
        raise ValidationError("state must be a JSON object with keys dA, dB, re, im")
    missing = [k for k in ("dA", "dB", "re") if k not in obj]
    if missing:
        raise ValidationError(f"state is missing keys: {', '.join(missing)}")
    return BipartiteState(_complex(obj, "state"), int(obj["dA"]), int(obj["dB"]))


def state_to_json(s: BipartiteState) -> dict:
    return {"dA": s.dA, "dB": s.dB, **_split(s.rho)}


def ensemble_from_json(obj) -> SeparableEnsemble:
    if not isinstance(obj, dict):
        raise ValidationError("ensemble must be a JSON object")
    missing = [k for k in ("weights", "pA", "pB") if k not in obj]
    if missing:
        raise ValidationError(f"ensemble is missing keys: {', '.join(missing)}")
    UA = _complex(obj["UA"], "UA") if obj.get("UA") is not None else None
    UB = _complex(obj["UB"], "UB") if obj.get("UB") is not None else None
    return SeparableEnsemble(obj["weights"], obj["pA"], obj["pB"], UA, UB)


def ensemble_to_json(e: SeparableEnsemble) -> dict:
    return {
        "weights": e.weights.tolist(),
        "pA": e.pA.tolist(),
        "pB": e.pB.tolist(),
        "UA": _split(e.UA),
        "UB": _split(e.UB),
    }
