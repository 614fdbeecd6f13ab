"""JSON encoding of channels and results.

Channel specification::

    {"kind": "superop" | "kraus" | "stochastic" | "state" | "choi",
     "dim": n,
     "data": ...}

Complex entries are ``[re, im]`` pairs (plain numbers are read as real).
``stochastic`` data is a real matrix, ``kraus`` a list of matrices, ``state``
the density matrix and ``choi`` a representative operator as written by the
``choi`` command, which is read back through the reconstruction formula.
"""
from __future__ import annotations

import json
import math

import numpy as np

from chanent.channels import Channel, DensityOperator, classical_embed
from chanent.errors import ValidationError

SIG_DIGITS = 12


def encode_complex(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def encode_matrix(m) -> list:
    return [[encode_complex(z) for z in row] for row in np.asarray(m, dtype=np.complex128)]


def decode_scalar(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(
        isinstance(c, (int, float)) and not isinstance(c, bool) for c in v
    ):
        return complex(v[0], v[1])
    raise ValidationError(f"cannot read {v!r} as a complex number")


def decode_matrix(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValidationError("matrix must be a non-empty list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValidationError("matrix rows have different lengths")
    return np.array([[decode_scalar(v) for v in r] for r in rows], dtype=np.complex128)


def channel_from_json(obj: dict) -> Channel:
    """Build a :class:`Channel` from a parsed channel specification.

    Raises:
        ValidationError: on unknown kinds, malformed data or invalid channels.
    """
    if not isinstance(obj, dict):
        raise ValidationError("channel specification must be a JSON object")
    missing = {"kind", "dim", "data"} - obj.keys()
    if missing:
        raise ValidationError(f"channel specification lacks {sorted(missing)}")
    kind, dim, data = obj["kind"], obj["dim"], obj["data"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValidationError(f"dim must be a positive integer, got {dim!r}")
    if kind == "superop":
        return Channel(dim, "superop", decode_matrix(data))
    if kind == "kraus":
        if not isinstance(data, list):
            raise ValidationError("kraus data must be a list of matrices")
        return Channel(dim, "kraus", [decode_matrix(a) for a in data])
    if kind == "stochastic":
        m = decode_matrix(data)
        if np.any(m.imag != 0):
            raise ValidationError("stochastic data must be real")
        ch = classical_embed(m.real)
        if ch.dim != dim:
            raise ValidationError(f"dim {dim} does not match data of size {ch.dim}")
        return ch
    if kind == "state":
        return Channel(dim, "state", DensityOperator(decode_matrix(data)))
    if kind == "choi":
        from chanent.choi import reconstruct

        m = decode_matrix(data)
        if m.shape != (dim * dim, dim * dim):
            raise ValidationError(f"choi data must be {dim * dim}x{dim * dim}")
        return reconstruct(m, dim)
    raise ValidationError(f"unknown channel kind {kind!r}")


def channel_to_json(t: Channel) -> dict:
    if t.kind == "stochastic":
        data = np.asarray(t.data).tolist()
    elif t.kind == "kraus":
        data = [encode_matrix(a) for a in t.data]
    elif t.kind == "state":
        data = encode_matrix(t.data.matrix)
    else:
        data = encode_matrix(t.data)
    return {"kind": t.kind, "dim": t.dim, "data": data}


def load_channel(path) -> Channel:
    with open(path, encoding="utf-8") as fh:
        return channel_from_json(json.load(fh))


def round_sig(x: float, digits: int = SIG_DIGITS) -> float:
    if x == 0 or not math.isfinite(x):
        return 0.0 if x == 0 else x
    return float(f"{x:.{digits}g}")


def rounded(obj, digits: int = SIG_DIGITS):
    """Recursively round floats to ``digits`` significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj), digits)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {k: rounded(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [rounded(v, digits) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(rounded(obj), indent=2) + "\n"
