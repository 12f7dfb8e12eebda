"""JSON persistence for trained models.

Floats are stored as ``float.hex`` strings so a save/load round trip is
bit-exact.
"""

import json

import numpy as np

from ..baseline import MlpParams
from ..dfree import LayeredNetwork
from ..errors import DomainError, FormatVersionError, MalformedFileError, ShapeError

FORMAT_VERSION = 1


def _encode(a):
    return [_encode(x) for x in a] if np.ndim(a) else float(a).hex()


def _decode(obj, shape, what):
    try:
        nested = np.array(obj, dtype=object)
    except ValueError as exc:
        raise ShapeError(f"{what}: ragged array") from exc
    if nested.shape != tuple(shape):
        raise ShapeError(f"{what}: declared shape {tuple(shape)} but file holds {nested.shape}")
    try:
        flat = [float.fromhex(x) for x in nested.ravel()]
    except (TypeError, ValueError) as exc:
        raise MalformedFileError(f"{what}: entries must be hex float strings") from exc
    return np.array(flat, dtype=float).reshape(shape)


def to_dict(model):
    if isinstance(model, LayeredNetwork):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "dfree",
            "width": model.width,
            "depth": model.depth,
            "unitarize_mode": model.unitarize_mode,
            "operator_mode": model.operator_mode,
            "interpretation": model.interpretation,
            "normalize_inputs": model.normalize_inputs,
            "observable": None if model.observable is None else _encode(model.observable),
            "layers": [_encode(w) for w in model.layers],
        }
    if isinstance(model, MlpParams):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "mlp",
            "widths": list(model.widths),
            "weights": [_encode(w) for w in model.weights],
            "biases": [_encode(b) for b in model.biases],
        }
    raise TypeError(f"cannot serialize {type(model).__name__}")


def from_dict(data):
    if not isinstance(data, dict) or "format_version" not in data:
        raise MalformedFileError("missing format_version")
    if data["format_version"] != FORMAT_VERSION:
        raise FormatVersionError(f"unsupported format_version {data['format_version']!r} (expected {FORMAT_VERSION})")
    try:
        kind = data["kind"]
        if kind == "dfree":
            d, depth = int(data["width"]), int(data["depth"])
            if len(data["layers"]) != depth:
                raise ShapeError(f"declared depth {depth} but file holds {len(data['layers'])} layers")
            layers = tuple(_decode(w, (d, d), f"layer {i}") for i, w in enumerate(data["layers"]))
            obs = data["observable"]
            return LayeredNetwork(
                layers,
                unitarize_mode=data["unitarize_mode"],
                operator_mode=data["operator_mode"],
                interpretation=data["interpretation"],
                observable=None if obs is None else _decode(obs, (d, d), "observable"),
                normalize_inputs=bool(data["normalize_inputs"]),
            )
        if kind == "mlp":
            widths = [int(w) for w in data["widths"]]
            n = len(widths) - 1
            if len(data["weights"]) != n or len(data["biases"]) != n:
                raise ShapeError(f"declared {n} layers but file holds a different count")
            ws = tuple(_decode(w, (widths[i + 1], widths[i]), f"weights {i}") for i, w in enumerate(data["weights"]))
            bs = tuple(_decode(b, (widths[i + 1],), f"biases {i}") for i, b in enumerate(data["biases"]))
            return MlpParams(ws, bs)
    except KeyError as exc:
        raise MalformedFileError(f"missing field {exc}") from exc
    except DomainError as exc:
        raise MalformedFileError(str(exc)) from exc
    raise MalformedFileError(f"unknown model kind {data.get('kind')!r}")


def save_network(model, path):
    with open(path, "w") as fh:
        json.dump(to_dict(model), fh, indent=1)
        fh.write("\n")


def load_network(path):
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFileError(f"{path}: not valid JSON ({exc.msg})") from exc
    return from_dict(data)
