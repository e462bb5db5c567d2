"""Binary and text containers for grid functions and dense symbols.

Binary layout (little-endian)::

    magic   4s   b"MLFG"
    version u16  1
    dims    u16  n (spatial dimension)
    N       u32  points per axis
    L       f64  period
    m       u32  0 for a grid function, linearity for a symbol
    payload      complex64 (re, im float32 pairs), C order, FFT order for symbols

complex64 is lossy for complex128 data; use the text form when exact round
trips of double-precision samples are needed.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .fourier import GridFunction, GridSpec, SymbolGrid

MAGIC = b"MLFG"
VERSION = 1
_HEADER = struct.Struct("<4sHHIdI")
TEXT_LIMIT = 4096


def _parts(obj) -> tuple[GridSpec, int, np.ndarray]:
    if isinstance(obj, GridFunction):
        return obj.spec, 0, obj.samples
    if isinstance(obj, SymbolGrid):
        return obj.spec, obj.m, obj.dense()
    raise ConfigError(f"cannot serialize {type(obj).__name__}")


def _build(spec: GridSpec, m: int, samples: np.ndarray):
    if m == 0:
        return GridFunction(spec, samples.reshape(spec.shape))
    return SymbolGrid.from_samples(spec, m, samples.reshape((spec.N,) * (m * spec.n)))


def to_bytes(obj) -> bytes:
    spec, m, samples = _parts(obj)
    header = _HEADER.pack(MAGIC, VERSION, spec.n, spec.N, spec.L, m)
    return header + np.ascontiguousarray(samples, dtype="<c8").tobytes()


def from_bytes(data: bytes):
    if len(data) < _HEADER.size:
        raise ConfigError("truncated container header")
    magic, version, n, N, L, m = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ConfigError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ConfigError(f"unsupported container version {version}")
    spec = GridSpec(n, N, L)
    count = N ** (n * max(m, 1))
    payload = data[_HEADER.size:]
    if len(payload) != 8 * count:
        raise ConfigError(f"payload has {len(payload)} bytes, expected {8 * count}")
    samples = np.frombuffer(payload, dtype="<c8").astype(np.complex128)
    return _build(spec, m, samples)


def save(obj, path) -> None:
    Path(path).write_bytes(to_bytes(obj))


def load(path):
    return from_bytes(Path(path).read_bytes())


def to_text(obj) -> str:
    """JSON document with samples as [re, im] pairs; lossless for float64."""
    spec, m, samples = _parts(obj)
    if samples.size > TEXT_LIMIT:
        raise ConfigError(f"text form is limited to {TEXT_LIMIT} samples, got {samples.size}")
    flat = samples.ravel()
    doc = {
        "format": "MLFG-text", "version": VERSION, "dims": spec.n, "N": spec.N, "L": spec.L, "m": m,
        "samples": [[float(z.real), float(z.imag)] for z in flat],
    }
    return json.dumps(doc)


def from_text(text: str):
    doc = json.loads(text)
    if doc.get("format") != "MLFG-text":
        raise ConfigError("not an MLFG text document")
    spec = GridSpec(doc["dims"], doc["N"], doc["L"])
    pairs = np.asarray(doc["samples"], dtype=float)
    return _build(spec, doc["m"], pairs[:, 0] + 1j * pairs[:, 1])
