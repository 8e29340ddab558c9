"""Map and table exports: 16-bit PGM, float32 sidecar, CSV; all written atomically."""
from __future__ import annotations

import csv
import io
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import FormatError
from .seq_model import FeatureMap

PGM_MAXVAL = 65535


def atomic_write(path, payload: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def quantize(normalized: np.ndarray) -> np.ndarray:
    return np.round(np.clip(normalized, 0.0, 1.0) * PGM_MAXVAL).astype(np.uint16)


def pgm_bytes(levels: np.ndarray) -> bytes:
    h, w = levels.shape
    header = f"P5\n{w} {h}\n{PGM_MAXVAL}\n".encode("ascii")
    return header + levels.astype(">u2").tobytes()


def write_pgm(path, normalized: np.ndarray) -> None:
    """Write a [0, 1] image as binary 16-bit PGM (big-endian samples)."""
    atomic_write(path, pgm_bytes(quantize(normalized)))


def read_pgm(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    tokens, pos = [], 0
    while len(tokens) < 4:
        while pos < len(raw) and raw[pos : pos + 1].isspace():
            pos += 1
        if raw[pos : pos + 1] == b"#":
            pos = raw.index(b"\n", pos)
            continue
        end = pos
        while end < len(raw) and not raw[end : end + 1].isspace():
            end += 1
        tokens.append(raw[pos:end])
        pos = end
    magic, w, h, maxval = tokens[0], int(tokens[1]), int(tokens[2]), int(tokens[3])
    if magic != b"P5" or maxval != PGM_MAXVAL:
        raise FormatError(f"{path}: expected 16-bit P5 PGM")
    data = np.frombuffer(raw, dtype=">u2", count=w * h, offset=pos + 1)
    return data.reshape(h, w).astype(np.uint16)


def sidecar_bytes(fmap: FeatureMap) -> bytes:
    header = np.array([fmap.width, fmap.height, fmap.index], dtype="<f4")
    return header.tobytes() + fmap.values.astype("<f4").tobytes()


def write_sidecar(path, fmap: FeatureMap) -> None:
    """Flat little-endian float32: width, height, index, then row-major values."""
    atomic_write(path, sidecar_bytes(fmap))


def read_sidecar(path) -> tuple[np.ndarray, int]:
    raw = np.frombuffer(Path(path).read_bytes(), dtype="<f4")
    w, h, index = (int(v) for v in raw[:3])
    if raw.size != 3 + w * h:
        raise FormatError(f"{path}: sidecar size does not match its header")
    return raw[3:].reshape(h, w).astype(np.float64), index


def csv_bytes(header, rows) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().encode()


def write_csv(path, header, rows) -> None:
    atomic_write(path, csv_bytes(header, rows))
