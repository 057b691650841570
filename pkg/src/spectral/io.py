"""
Field serialization: JSON records and a little-endian binary record

Binary layout (all little-endian):
    4 bytes  magic b"BOF1"
    <d       lambda
    <I       M
    <B       kind, 0 = real samples, 1 = coefficients, 2 = coefficients of a real field
    payload  M * <f8 samples, or M * <c16 coefficients
"""
import struct
from typing import Any, Dict, Union

import numpy as np

from src.spectral.grid import Grid, RealField, SpectralField

FIELD_MAGIC = b"BOF1"
_HEADER = struct.Struct("<4sdIB")
_SAMPLES, _COEFFS, _REAL_COEFFS = 0, 1, 2

Field = Union[RealField, SpectralField]


def field_to_json(field: Field) -> Dict[str, Any]:
    record = {"lambda": field.grid.lam, "M": field.grid.n_modes}
    if isinstance(field, RealField):
        record["kind"] = "samples"
        record["samples"] = [float(v) for v in field.samples]
    else:
        record["kind"] = "coeffs"
        record["real"] = field.real
        record["coeffs"] = [[float(c.real), float(c.imag)] for c in field.coeffs]
    return record


def field_from_json(record: Dict[str, Any]) -> Field:
    grid = Grid(lam=float(record["lambda"]), n_modes=int(record["M"]))
    if record["kind"] == "samples":
        return RealField(grid, np.asarray(record["samples"], dtype=float))
    pairs = np.asarray(record["coeffs"], dtype=float)
    return SpectralField(grid, pairs[:, 0] + 1j * pairs[:, 1], bool(record.get("real", False)))


def field_to_bytes(field: Field) -> bytes:
    grid = field.grid
    if isinstance(field, RealField):
        header = _HEADER.pack(FIELD_MAGIC, grid.lam, grid.n_modes, _SAMPLES)
        return header + field.samples.astype("<f8").tobytes()
    kind = _REAL_COEFFS if field.real else _COEFFS
    header = _HEADER.pack(FIELD_MAGIC, grid.lam, grid.n_modes, kind)
    return header + field.coeffs.astype("<c16").tobytes()


def field_from_bytes(blob: bytes) -> Field:
    magic, lam, n_modes, kind = _HEADER.unpack_from(blob)
    if magic != FIELD_MAGIC:
        raise ValueError(f"not a field record (magic {magic!r})")
    grid = Grid(lam=lam, n_modes=n_modes)
    payload = blob[_HEADER.size:]
    if kind == _SAMPLES:
        return RealField(grid, np.frombuffer(payload, dtype="<f8", count=n_modes))
    if kind not in (_COEFFS, _REAL_COEFFS):
        raise ValueError(f"unknown field kind {kind}")
    coeffs = np.frombuffer(payload, dtype="<c16", count=n_modes)
    return SpectralField(grid, coeffs, kind == _REAL_COEFFS)
