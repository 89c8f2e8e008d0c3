"""JSON state documents.

    {"modes": d, "terms": [{"ket": [...], "bra": [...], "re": x, "im": y}, ...]}

Terms are written in canonical order so that equal states serialize to
identical bytes. Extra top-level keys (e.g. ``metadata``) are ignored on load.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .config import hermitian_tolerance
from .errors import NonHermitianState, PhotonSubsetError
from .fock import BeamState
from .linear_optics import ModeUnitary


class StateFormatError(PhotonSubsetError, ValueError):
    pass


def state_to_dict(state: BeamState) -> dict[str, Any]:
    return {
        "modes": state.modes,
        "terms": [
            {"ket": list(t.ket), "bra": list(t.bra), "re": float(t.amplitude.real), "im": float(t.amplitude.imag)}
            for t in state.terms()
        ],
    }


def state_from_dict(doc: dict[str, Any], check_hermitian: bool = True, tol: float | None = None) -> BeamState:
    if not isinstance(doc, dict) or "modes" not in doc or "terms" not in doc:
        raise StateFormatError('a state document needs "modes" and "terms"')
    entries = []
    for i, term in enumerate(doc["terms"]):
        try:
            entries.append((term["ket"], term["bra"], complex(term.get("re", 0.0), term.get("im", 0.0))))
        except (KeyError, TypeError) as exc:
            raise StateFormatError(f"term {i} is malformed: {term!r}") from exc
    state = BeamState(doc["modes"], entries)
    if check_hermitian:
        tol = hermitian_tolerance() if tol is None else tol
        err = state.hermitian_error()
        if err > tol:
            raise NonHermitianState(f"Hermiticity error {err:.3e} exceeds tolerance {tol:.1e}")
    return state


def dumps(state: BeamState, metadata: dict[str, Any] | None = None) -> str:
    """JSON text with one term per line.

    Floats use Python's shortest round-trip repr, so ``loads(dumps(s))``
    reproduces every amplitude bit for bit.
    """
    doc = state_to_dict(state)
    lines = [f'{{"modes": {doc["modes"]}, "terms": [']
    lines.append(",\n".join(" " + json.dumps(t) for t in doc["terms"]))
    tail = "]"
    if metadata is not None:
        tail += ', "metadata": ' + json.dumps(metadata)
    lines.append(tail + "}")
    return "\n".join(line for line in lines if line)


def loads(text: str, **kwargs) -> BeamState:
    return state_from_dict(json.loads(text), **kwargs)


def save_state(state: BeamState, path: str | Path, metadata: dict[str, Any] | None = None) -> None:
    Path(path).write_text(dumps(state, metadata) + "\n")


def load_state(path: str | Path, **kwargs) -> BeamState:
    return loads(Path(path).read_text(), **kwargs)


def load_unitary(path: str | Path) -> ModeUnitary:
    doc = json.loads(Path(path).read_text())
    try:
        re = np.asarray(doc["re"], dtype=float)
        im = np.asarray(doc.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFormatError('a unitary document needs "re" (and optionally "im") matrices') from exc
    return ModeUnitary(re + 1j * im)


def unitary_to_dict(u: ModeUnitary) -> dict[str, Any]:
    return {"re": u.entries.real.tolist(), "im": u.entries.imag.tolist()}
