"""Readers and writers for the JSON and CSV file formats used by the CLI."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .channel import TransitionMatrix
from .discrete import DiscretePmf, JointPmf
from .errors import ValidationError
from .spectral import SampledSignal, SpectrumPair


def _load_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"{path}: file not found") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _field(doc: Any, name: str, where: str) -> Any:
    if not isinstance(doc, dict):
        raise ValidationError(f"{where}: expected a JSON object")
    if name not in doc:
        raise ValidationError(f"{where}: missing field {name!r}")
    return doc[name]


def _numbers(values: Any, name: str, where: str, ndim: int = 1) -> np.ndarray:
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError):
        raise ValidationError(f"{where}: field {name!r} must contain numbers") from None
    if arr.ndim != ndim:
        raise ValidationError(f"{where}: field {name!r} must be a {ndim}-D array")
    return arr


def _labels(values: Any, name: str, where: str) -> tuple:
    if not isinstance(values, list):
        raise ValidationError(f"{where}: field {name!r} must be a list")
    return tuple(tuple(v) if isinstance(v, list) else v for v in values)


def pmf_from_json(doc: Any, where: str = "pmf") -> DiscretePmf:
    """``{"symbols": [...], "probs": [...]}``"""
    symbols = _labels(_field(doc, "symbols", where), "symbols", where)
    probs = _numbers(_field(doc, "probs", where), "probs", where)
    try:
        return DiscretePmf(symbols, probs)
    except ValidationError as exc:
        raise ValidationError(f"{where}: field 'probs': {exc}") from None


def joint_from_json(doc: Any, where: str = "joint pmf") -> JointPmf:
    """``{"x_symbols": [...], "y_symbols": [...], "probs": [[...], ...]}``"""
    xs = _labels(_field(doc, "x_symbols", where), "x_symbols", where)
    ys = _labels(_field(doc, "y_symbols", where), "y_symbols", where)
    probs = _numbers(_field(doc, "probs", where), "probs", where, ndim=2)
    try:
        return JointPmf(xs, ys, probs)
    except ValidationError as exc:
        raise ValidationError(f"{where}: field 'probs': {exc}") from None


def transition_matrix_from_json(doc: Any, where: str = "transition matrix") -> TransitionMatrix:
    """``{"inputs": [...], "outputs": [...], "rows": [[...], ...]}``"""
    inputs = _labels(_field(doc, "inputs", where), "inputs", where)
    outputs = _labels(_field(doc, "outputs", where), "outputs", where)
    rows = _numbers(_field(doc, "rows", where), "rows", where, ndim=2)
    try:
        return TransitionMatrix(rows, inputs, outputs)
    except ValidationError as exc:
        raise ValidationError(f"{where}: field 'rows': {exc}") from None


def pmf_to_json(pmf: DiscretePmf) -> dict:
    return {"symbols": list(pmf.symbols), "probs": pmf.probs.tolist()}


def joint_to_json(j: JointPmf) -> dict:
    return {"x_symbols": list(j.x_symbols), "y_symbols": list(j.y_symbols), "probs": j.probs.tolist()}


def transition_matrix_to_json(t: TransitionMatrix) -> dict:
    return {"inputs": list(t.inputs), "outputs": list(t.outputs), "rows": t.rows.tolist()}


def load_pmf(path) -> DiscretePmf:
    return pmf_from_json(_load_json(path), str(path))


def load_joint(path) -> JointPmf:
    return joint_from_json(_load_json(path), str(path))


def load_transition_matrix(path) -> TransitionMatrix:
    return transition_matrix_from_json(_load_json(path), str(path))


# --------------------------------------------------------------------------
# CSV


def read_columns(path, names: Sequence[str]) -> dict[str, np.ndarray]:
    """Read the named numeric columns of a headed CSV file."""
    try:
        fh = open(path, newline="", encoding="utf-8")
    except FileNotFoundError:
        raise ValidationError(f"{path}: file not found") from None
    with fh:
        reader = csv.DictReader(fh)
        header = [h.strip() for h in (reader.fieldnames or [])]
        missing = [n for n in names if n not in header]
        if missing:
            raise ValidationError(f"{path}: missing column(s) {', '.join(missing)} (header {header})")
        reader.fieldnames = header
        cols: dict[str, list[float]] = {n: [] for n in names}
        for lineno, row in enumerate(reader, start=2):
            for n in names:
                try:
                    cols[n].append(float(row[n]))
                except (TypeError, ValueError):
                    raise ValidationError(f"{path}: line {lineno}, column {n!r}: not a number ({row[n]!r})") from None
    return {n: np.array(v) for n, v in cols.items()}


def read_samples_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Paired channel samples with header ``x,y``."""
    cols = read_columns(path, ("x", "y"))
    if cols["x"].size == 0:
        raise ValidationError(f"{path}: no samples")
    return cols["x"], cols["y"]


def read_signal_csv(path) -> SampledSignal:
    """Uniformly sampled signal with header ``t,x``."""
    cols = read_columns(path, ("t", "x"))
    try:
        return SampledSignal.from_times(cols["t"], cols["x"])
    except ValidationError as exc:
        raise ValidationError(f"{path}: column 't': {exc}") from None


def read_spectrum_csv(path, bandwidth=None) -> SpectrumPair:
    """Spectrum with header ``f,S,N``; bandwidth defaults to the largest frequency."""
    cols = read_columns(path, ("f", "S", "N"))
    if cols["f"].size == 0:
        raise ValidationError(f"{path}: no rows")
    bw = float(cols["f"][-1]) if bandwidth is None else float(bandwidth)
    try:
        return SpectrumPair(cols["f"], cols["S"], cols["N"], bw)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def format_number(v: float) -> str:
    """Six significant figures, trailing zeros kept."""
    return f"{float(v):#.6g}"


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="")


def samples_csv_text(x, y) -> str:
    """Samples are written with ``repr`` precision so they round-trip exactly."""
    lines = ["x,y"]
    lines.extend(f"{a!r},{b!r}" for a, b in zip(np.asarray(x).tolist(), np.asarray(y).tolist()))
    return "\n".join(lines) + "\n"
