"""Frame-sequence container, ROIs, feature maps and the TSEQ / ROI-CSV formats."""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    BadMagicError,
    FormatError,
    NonFiniteError,
    RoiError,
    TruncatedError,
    ZeroDimensionError,
)

MAGIC = b"TSEQ"
VERSION = 1
# magic, version, width, height, frames, dt, physical_width
_HEADER = struct.Struct("<4sIIIIdd")
HEADER_SIZE = _HEADER.size  # 36 bytes

METHOD_TAGS = ("raw", "ppt-phase", "ppt-amplitude", "pct-eof", "hos-skewness", "hos-kurtosis")
ROI_KINDS = ("reference", "defect")


@dataclass(frozen=True)
class FrameSequence:
    """Stack of thermograms, shape ``(frames, height, width)``, float32 °C.

    ``data[k, y, x]`` is the temperature of pixel ``(x, y)`` at frame ``k``, so the
    flat buffer obeys ``flat[k*width*height + y*width + x]``.
    """

    data: np.ndarray
    dt: float
    physical_width: float | None = None

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float32)
        if data.ndim != 3:
            raise FormatError(f"expected a 3D (frames, height, width) array, got ndim={data.ndim}")
        if min(data.shape) < 1:
            raise ZeroDimensionError(f"zero dimension in shape {data.shape}")
        if not (self.dt > 0 and np.isfinite(self.dt)):
            raise FormatError(f"dt must be positive, got {self.dt}")
        if not np.all(np.isfinite(data)):
            raise NonFiniteError("sequence contains NaN or Inf samples")
        if self.physical_width is not None and not self.physical_width > 0:
            raise FormatError("physical_width must be positive when given")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @property
    def frames(self) -> int:
        return self.data.shape[0]

    @property
    def height(self) -> int:
        return self.data.shape[1]

    @property
    def width(self) -> int:
        return self.data.shape[2]

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.frames) * self.dt

    def frame(self, k: int) -> np.ndarray:
        return self.data[k]

    def frame_index(self, seconds: float) -> int:
        """Nearest frame to a time in seconds, clipped to the record."""
        return int(np.clip(round(seconds / self.dt), 0, self.frames - 1))


@dataclass(frozen=True)
class Roi:
    name: str
    x0: int
    y0: int
    x1: int
    y1: int
    kind: str = "defect"

    def __post_init__(self):
        if self.kind not in ROI_KINDS:
            raise RoiError(f"ROI {self.name!r}: unknown kind {self.kind!r}")
        if self.x0 < 0 or self.y0 < 0 or self.x1 < self.x0 or self.y1 < self.y0:
            raise RoiError(f"ROI {self.name!r}: malformed rectangle")
        if self.kind == "reference" and self.area < 2:
            raise RoiError(f"reference ROI {self.name!r} needs at least 2 pixels")

    @property
    def area(self) -> int:
        return (self.x1 - self.x0 + 1) * (self.y1 - self.y0 + 1)

    @property
    def slices(self) -> tuple[slice, slice]:
        """(row, column) slices, for indexing ``image[roi.slices]``."""
        return slice(self.y0, self.y1 + 1), slice(self.x0, self.x1 + 1)

    def check_bounds(self, width: int, height: int) -> None:
        if self.x1 >= width or self.y1 >= height:
            raise RoiError(
                f"ROI {self.name!r} ({self.x0},{self.y0})-({self.x1},{self.y1}) "
                f"exceeds {width}x{height}"
            )

    def overlaps(self, other: Roi) -> bool:
        return not (
            self.x1 < other.x0 or other.x1 < self.x0 or self.y1 < other.y0 or other.y1 < self.y0
        )


@dataclass
class FeatureMap:
    """A 2D image produced by one method, ``values`` shaped (height, width)."""

    values: np.ndarray
    method: str
    index: int = 0
    degenerate: bool = False
    flagged: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise ValueError("feature map values must be 2D")
        if self.method not in METHOD_TAGS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if not np.all(np.isfinite(self.values)):
            raise NonFiniteError(f"{self.method} map has non-finite values")

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def label(self) -> str:
        return f"{self.method}-{self.index}"


def sequence_bytes(seq: FrameSequence) -> bytes:
    header = _HEADER.pack(
        MAGIC, VERSION, seq.width, seq.height, seq.frames, float(seq.dt),
        float(seq.physical_width or 0.0),
    )
    return header + np.ascontiguousarray(seq.data, dtype="<f4").tobytes()


def save_sequence(seq: FrameSequence, path) -> None:
    with open(path, "wb") as fh:
        fh.write(sequence_bytes(seq))


def load_sequence(path) -> FrameSequence:
    raw = Path(path).read_bytes()
    if len(raw) < 4 or raw[:4] != MAGIC:
        raise BadMagicError(f"{path}: not a TSEQ file")
    if len(raw) < HEADER_SIZE:
        raise TruncatedError(f"{path}: header truncated ({len(raw)} bytes)")
    _, version, width, height, frames, dt, phys = _HEADER.unpack_from(raw)
    if version != VERSION:
        raise FormatError(f"{path}: unsupported TSEQ version {version}")
    if 0 in (width, height, frames):
        raise ZeroDimensionError(f"{path}: zero dimension {width}x{height}x{frames}")
    n = width * height * frames
    if len(raw) - HEADER_SIZE < 4 * n:
        raise TruncatedError(f"{path}: payload has {len(raw) - HEADER_SIZE} bytes, expected {4 * n}")
    data = np.frombuffer(raw, dtype="<f4", count=n, offset=HEADER_SIZE)
    if not np.all(np.isfinite(data)):
        raise NonFiniteError(f"{path}: non-finite sample")
    return FrameSequence(
        data.reshape(frames, height, width).astype(np.float32),
        dt=dt,
        physical_width=phys if phys > 0 else None,
    )


def pixel_pitch(physical_width: float, width: int) -> float:
    """Physical size of one pixel, e.g. 40 cm over 138 px -> 0.29 cm/px."""
    if not physical_width > 0 or width < 1:
        raise ValueError("physical_width must be > 0 and width >= 1")
    return physical_width / width


def parse_rois(text: str, map_width: int, map_height: int, source: str = "<rois>") -> list[Roi]:
    rois: list[Roi] = []
    seen: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 6:
            raise RoiError(f"{source}:{lineno}: expected name,x0,y0,x1,y1,kind")
        name, *coords, kind = parts
        try:
            x0, y0, x1, y1 = (int(c) for c in coords)
        except ValueError:
            raise RoiError(f"{source}:{lineno}: non-integer coordinate") from None
        if name in seen:
            raise RoiError(f"{source}:{lineno}: duplicate ROI name {name!r}")
        try:
            roi = Roi(name, x0, y0, x1, y1, kind)
            roi.check_bounds(map_width, map_height)
        except RoiError as exc:
            raise RoiError(f"{source}:{lineno}: {exc}") from None
        seen.add(name)
        rois.append(roi)
    if not any(r.kind == "reference" for r in rois):
        raise RoiError(f"{source}: no reference ROI")
    return rois


def load_rois(path, map_width: int, map_height: int) -> list[Roi]:
    return parse_rois(Path(path).read_text(), map_width, map_height, source=str(path))


def format_rois(rois) -> str:
    return "".join(f"{r.name},{r.x0},{r.y0},{r.x1},{r.y1},{r.kind}\n" for r in rois)
