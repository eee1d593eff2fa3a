"""Binary matrix container shared by all pipeline stages.

Layout (all integers little-endian):
  bytes 0..3   magic "SARM"
  bytes 4..5   version (u16)
  bytes 6..7   element kind (u16): 0 = real float64, 1 = complex float64
               stored as interleaved (re, im) pairs
  bytes 8..15  row count (u64)
  bytes 16..23 column count (u64)
  payload      rows*cols elements, row-major
  trailer      UTF-8 JSON metadata (reads to end of file)
"""

from __future__ import annotations

import json
import struct

import numpy as np

from .errors import ConfigError

MAGIC = b"SARM"
VERSION = 1
KIND_REAL = 0
KIND_COMPLEX = 1
_HEADER = struct.Struct("<4sHHQQ")


def write_matrix(path, M: np.ndarray, metadata: dict | None = None) -> None:
    M = np.asarray(M)
    if M.ndim != 2:
        raise ConfigError("only 2-D matrices are supported")
    if np.iscomplexobj(M):
        kind = KIND_COMPLEX
        payload = np.ascontiguousarray(M, dtype="<c16").tobytes()
    else:
        kind = KIND_REAL
        payload = np.ascontiguousarray(M, dtype="<f8").tobytes()
    header = _HEADER.pack(MAGIC, VERSION, kind, M.shape[0], M.shape[1])
    trailer = json.dumps(metadata or {}, sort_keys=True).encode()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)
        fh.write(trailer)


def read_matrix(path) -> tuple[np.ndarray, dict]:
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise ConfigError(f"{path}: truncated header")
    magic, version, kind, rows, cols = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ConfigError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise ConfigError(f"{path}: unsupported version {version}")
    if kind == KIND_REAL:
        dtype, size = np.dtype("<f8"), 8
    elif kind == KIND_COMPLEX:
        dtype, size = np.dtype("<c16"), 16
    else:
        raise ConfigError(f"{path}: unknown element kind {kind}")
    count = rows * cols
    start = _HEADER.size
    end = start + count * size
    if len(raw) < end:
        raise ConfigError(f"{path}: payload shorter than {rows}x{cols}")
    M = np.frombuffer(raw[start:end], dtype=dtype).reshape(rows, cols).copy()
    trailer = raw[end:]
    try:
        metadata = json.loads(trailer.decode()) if trailer else {}
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: bad metadata trailer: {exc}") from exc
    if kind == KIND_REAL:
        M = M.astype(float, copy=False)
    return M, metadata
