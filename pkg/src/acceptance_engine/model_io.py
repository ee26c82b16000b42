"""Serialized model-spec (JSON, format_version 1) and dataset (CSV) formats.

Numbers are printed at 17 significant digits so every double round-trips
exactly; the writer is canonical (fixed key order, fixed layout), which
makes save(load(f)) byte-identical for canonically formatted files.
"""
import csv
import io
import json
import math

import numpy as np

from .core_net import CANONICAL_INPUTS, NetworkSpec, validate_spec
from .errors import InvalidValueError, ShapeError
from .training import Dataset

FORMAT_VERSION = 1

_MODEL_FIELDS = {
    "format_version", "input_names", "hidden_size", "w_in", "b_hidden",
    "w_out", "b_out", "output_activation",
}

DATASET_HEADER = list(CANONICAL_INPUTS) + ["acceptance"]


def _fmt(value):
    """Canonical decimal form of a finite double: 17 significant digits."""
    return format(float(value), ".17g")


def dumps_model(spec):
    """Canonical JSON text for a NetworkSpec."""
    violations = validate_spec(spec)
    if violations:
        raise InvalidValueError("cannot serialize invalid spec: " + "; ".join(violations))
    lines = ["{"]
    lines.append(f'  "format_version": {FORMAT_VERSION},')
    names = ", ".join(json.dumps(n) for n in spec.input_names)
    lines.append(f'  "input_names": [{names}],')
    lines.append(f'  "hidden_size": {spec.hidden_size},')
    rows = ",\n".join(
        "    [" + ", ".join(_fmt(v) for v in row) + "]" for row in spec.w_in
    )
    lines.append('  "w_in": [\n' + rows + "\n  ],")
    lines.append('  "b_hidden": [' + ", ".join(_fmt(v) for v in spec.b_hidden) + "],")
    lines.append('  "w_out": [' + ", ".join(_fmt(v) for v in spec.w_out) + "],")
    lines.append(f'  "b_out": {_fmt(spec.b_out)},')
    lines.append(f'  "output_activation": {json.dumps(spec.output_activation)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_model(text):
    """Parse model-spec JSON; unknown fields and invalid specs are rejected."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise InvalidValueError(f"model file is not valid JSON: {err}") from None
    if not isinstance(doc, dict):
        raise InvalidValueError("model file must contain a JSON object")
    unknown = set(doc) - _MODEL_FIELDS
    if unknown:
        raise InvalidValueError(f"unknown model fields: {sorted(unknown)}")
    missing = _MODEL_FIELDS - set(doc)
    if missing:
        raise InvalidValueError(f"missing model fields: {sorted(missing)}")
    if doc["format_version"] != FORMAT_VERSION:
        raise InvalidValueError(
            f"unsupported format_version {doc['format_version']!r}, expected {FORMAT_VERSION}"
        )
    try:
        spec = NetworkSpec(
            input_names=tuple(doc["input_names"]),
            hidden_size=int(doc["hidden_size"]),
            w_in=np.array(doc["w_in"], dtype=float),
            b_hidden=np.array(doc["b_hidden"], dtype=float),
            w_out=np.array(doc["w_out"], dtype=float),
            b_out=float(doc["b_out"]),
            output_activation=doc["output_activation"],
        )
    except (TypeError, ValueError) as err:
        raise InvalidValueError(f"malformed model fields: {err}") from None
    violations = validate_spec(spec)
    if violations:
        raise InvalidValueError("invalid model spec: " + "; ".join(violations))
    return spec


def save_model(spec, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(spec))


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())


def save_dataset(dataset, path):
    """Write a Dataset as the 7-column CSV format (raw inputs + target)."""
    if dataset.inputs.shape[1] != 6:
        raise ShapeError("dataset CSV format requires exactly 6 input columns")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(DATASET_HEADER)
        for row, target in zip(dataset.inputs, dataset.targets):
            writer.writerow([_fmt(v) for v in row] + [_fmt(target)])


def load_dataset(path):
    """Read the 7-column CSV dataset; feature ranges come from the data
    (per-column min/max), so constant columns surface later as degenerate
    features during normalization."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidValueError("dataset CSV is empty") from None
        if header != DATASET_HEADER:
            raise InvalidValueError(
                f"dataset CSV header must be {','.join(DATASET_HEADER)}, got {','.join(header)}"
            )
        inputs, targets = [], []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 7:
                raise InvalidValueError(
                    f"dataset CSV line {lineno}: expected 7 columns, got {len(row)}"
                )
            try:
                values = [float(cell) for cell in row]
            except ValueError:
                raise InvalidValueError(
                    f"dataset CSV line {lineno}: non-numeric cell"
                ) from None
            if not all(math.isfinite(v) for v in values):
                raise InvalidValueError(f"dataset CSV line {lineno}: non-finite value")
            inputs.append(values[:6])
            targets.append(values[6])
    if not inputs:
        raise InvalidValueError("dataset CSV has no data rows")
    inputs = np.array(inputs)
    targets = np.array(targets)
    ranges = np.column_stack([inputs.min(axis=0), inputs.max(axis=0)])
    return Dataset(inputs=inputs, targets=targets, feature_ranges=ranges)
