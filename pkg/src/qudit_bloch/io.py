"""JSON file formats for matrices, bases and Bloch vectors.

Matrix file::

    {"dim": [rows, cols], "data": [[re, im], ...], "meta": {...}}

``data`` is row-major. Floats are written with ``repr`` precision (17
significant digits), so a write/read cycle is lossless.

Bloch file::

    {"family": "ggm", "dim": 3,
     "components": [{"label": "s:1,2", "re": 0.0, "im": 0.0}, ...]}

Basis archive::

    {"family": "wob", "dim": 3, "norm": 3.0,
     "elements": [{"label": "0,0", "matrix": <matrix file>}, ...]}
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .bases import Family, OperatorBasis, format_label, get_basis, parse_label
from .bloch import BipartiteDecomposition, BlochVector


class FileFormatError(ValueError):
    pass


def _finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise FileFormatError("non-finite number in file data")
    return x


def matrix_to_dict(m, meta: dict | None = None) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    out = {
        "dim": [int(m.shape[0]), int(m.shape[1])],
        "data": [[_finite(z.real), _finite(z.imag)] for z in m.reshape(-1)],
    }
    if meta:
        out["meta"] = meta
    return out


def matrix_from_dict(obj: dict) -> np.ndarray:
    try:
        rows, cols = (int(v) for v in obj["dim"])
        data = obj["data"]
        if rows < 1 or cols < 1 or len(data) != rows * cols:
            raise FileFormatError(f"matrix file declares {rows}x{cols} but holds {len(data)} entries")
        flat = np.array([complex(_finite(re), _finite(im)) for re, im in data], dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FileFormatError):
            raise
        raise FileFormatError(f"malformed matrix file: {exc}") from None
    return flat.reshape(rows, cols)


def bloch_to_dict(b: BlochVector) -> dict:
    return {
        "family": b.family.value,
        "dim": b.dim,
        "components": [
            {"label": format_label(b.family, lab), "re": _finite(c.real), "im": _finite(c.imag)}
            for lab, c in b.items()
        ],
    }


def bloch_from_dict(obj: dict) -> BlochVector:
    try:
        family = Family.parse(obj["family"])
        d = int(obj["dim"])
        expected = get_basis(family, d).traceless_labels
        comps = obj["components"]
        labels = tuple(parse_label(family, c["label"]) for c in comps)
        if labels != expected:
            raise FileFormatError("Bloch components are missing or out of basis order")
        values = [complex(_finite(c["re"]), _finite(c["im"])) for c in comps]
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"malformed Bloch file: {exc}") from None
    return BlochVector(family, d, values)


def bipartite_to_dict(dec: BipartiteDecomposition) -> dict:
    labels = [format_label(dec.family, lab) for lab in dec.labels]

    def comps(values):
        return [{"label": lab, "re": float(v.real), "im": float(v.imag)} for lab, v in zip(labels, values)]

    return {
        "family": dec.family.value,
        "dim": dec.dim,
        "bipartite": True,
        "identity": [float(dec.identity_coeff.real), float(dec.identity_coeff.imag)],
        "n": comps(dec.n_coeffs),
        "m": comps(dec.m_coeffs),
        "labels": labels,
        "c": [[[float(z.real), float(z.imag)] for z in row] for row in dec.c_matrix],
    }


def basis_to_dict(basis: OperatorBasis) -> dict:
    return {
        "family": basis.family.value,
        "dim": basis.dim,
        "norm": basis.norm,
        "elements": [
            {"label": format_label(basis.family, lab), "matrix": matrix_to_dict(m)} for lab, m in basis
        ],
    }


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: not valid JSON ({exc})") from None


def write_matrix(path, m, meta: dict | None = None) -> None:
    write_json(path, matrix_to_dict(m, meta))


def read_matrix(path) -> np.ndarray:
    return matrix_from_dict(read_json(path))


def write_bloch(path, b: BlochVector) -> None:
    write_json(path, bloch_to_dict(b))


def read_bloch(path) -> BlochVector:
    return bloch_from_dict(read_json(path))
