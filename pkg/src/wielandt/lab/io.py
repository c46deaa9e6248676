"""Flat-file formats: matrix JSON and experiment CSV.

Matrix JSON is ``{"n": int, "matrices": [matrix, ...]}`` where a matrix is a
list of rows and each entry is a two-element ``[re, im]`` list. A PEPS tensor
uses ``{"n": int, "g": int, "tensor": ...}`` with the same entry encoding and
nesting of shape (g, n, n, n, n). Python's float repr is the shortest string
that round-trips, so emit-then-parse is bit-exact.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from ..wordspan import GeneratingSystem

CSV_FIELDS = ("n", "g", "trial", "observed", "lower_bound", "upper_bound_generic", "wall_ms")
NOT_GENERATING = "inf"


class MatrixFormatError(ValueError):
    pass


def _encode(arr: np.ndarray):
    if arr.ndim == 0:
        z = complex(arr)
        return [z.real, z.imag]
    return [_encode(a) for a in arr]


def _decode_entry(x, where: str) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        re, im = x, 0.0
    elif isinstance(x, list) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    ):
        re, im = x
    else:
        raise MatrixFormatError(f"{where}: expected [re, im], got {x!r}")
    if not (math.isfinite(re) and math.isfinite(im)):
        raise MatrixFormatError(f"{where}: non-finite entry {x!r}")
    return complex(re, im)


def _load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    try:
        # NaN / Infinity literals are not JSON; refuse them here already
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    except ValueError as exc:
        raise MatrixFormatError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise MatrixFormatError(f"{path}: top level must be a JSON object")
    return data


def _reject_constant(name):
    raise ValueError(f"non-finite literal {name}")


def _get_n(data: dict, path) -> int:
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError(f"{path}: field 'n' must be a positive integer, got {n!r}")
    return n


def parse_matrices(path) -> GeneratingSystem:
    data = _load_json(path)
    n = _get_n(data, path)
    mats = data.get("matrices")
    if not isinstance(mats, list) or not mats:
        raise MatrixFormatError(f"{path}: field 'matrices' must be a non-empty list")
    out = np.empty((len(mats), n, n), dtype=np.complex128)
    for m, M in enumerate(mats):
        where = f"{path}: matrices[{m}]"
        if not isinstance(M, list) or len(M) != n:
            got = len(M) if isinstance(M, list) else type(M).__name__
            raise MatrixFormatError(f"{where}: expected {n} rows, got {got}")
        for i, row in enumerate(M):
            if not isinstance(row, list) or len(row) != n:
                got = len(row) if isinstance(row, list) else type(row).__name__
                raise MatrixFormatError(f"{where}[{i}]: expected {n} entries, got {got}")
            for j, x in enumerate(row):
                out[m, i, j] = _decode_entry(x, f"{where}[{i}][{j}]")
    return GeneratingSystem(out)


def emit_matrices(S, path) -> None:
    mats = np.asarray(S.mats if isinstance(S, GeneratingSystem) else S, dtype=np.complex128)
    if mats.ndim == 2:
        mats = mats[np.newaxis]
    if not np.all(np.isfinite(mats)):
        raise ValueError("refusing to write non-finite matrices")
    doc = {"n": int(mats.shape[1]), "matrices": _encode(mats)}
    _write_text(path, json.dumps(doc) + "\n")


def parse_peps(path):
    from ..tensornets import PepsTensor

    data = _load_json(path)
    n = _get_n(data, path)
    g = data.get("g")
    if not isinstance(g, int) or isinstance(g, bool) or g < 1:
        raise MatrixFormatError(f"{path}: field 'g' must be a positive integer, got {g!r}")
    raw = data.get("tensor")
    shape = (g, n, n, n, n)

    def walk(x, depth, where):
        if depth == len(shape):
            return _decode_entry(x, where)
        if not isinstance(x, list) or len(x) != shape[depth]:
            raise MatrixFormatError(f"{where}: expected a list of length {shape[depth]}")
        return [walk(y, depth + 1, f"{where}[{i}]") for i, y in enumerate(x)]

    return PepsTensor(np.array(walk(raw, 0, f"{path}: tensor"), dtype=np.complex128))


def emit_peps(T, path) -> None:
    doc = {"n": T.n, "g": T.g, "tensor": _encode(T.entries)}
    _write_text(path, json.dumps(doc) + "\n")


def _write_text(path, text: str, newline: str | None = None) -> None:
    path = Path(path)
    try:
        with open(path, "w", newline=newline) as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc


def _csv_observed(row) -> str:
    if row.status != "ok":
        return row.status
    return NOT_GENERATING if row.observed is None else str(row.observed)


def emit_csv(rows, path) -> None:
    """RFC-4180 CSV (CRLF line endings); NotGenerating is written as ``inf``.

    Rows that did not complete carry their status (``timeout``, ``budget``,
    ``error``) in the observed column.
    """
    path = Path(path)
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\r\n")
            w.writerow(CSV_FIELDS)
            for r in rows:
                w.writerow([r.n, r.g, r.trial, _csv_observed(r), r.lower_bound, r.upper_bound_generic, r.wall_ms])
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc


def parse_csv(path) -> list:
    from .experiment import ExperimentRow

    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != CSV_FIELDS:
            raise ValueError(f"{path}: unexpected header {header!r}")
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            if len(rec) != len(CSV_FIELDS):
                raise ValueError(f"{path}: line {lineno}: expected {len(CSV_FIELDS)} fields")
            n, g, trial, obs, lo, hi, ms = rec
            status, observed = "ok", None
            if obs in ("timeout", "budget", "error"):
                status = obs
            elif obs != NOT_GENERATING:
                observed = int(obs)
            rows.append(ExperimentRow(int(n), int(g), int(trial), observed, int(lo), int(hi), int(ms), status))
    return rows
