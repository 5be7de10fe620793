"""Reading and writing 8-bit PGM (P2 ASCII / P5 binary) files.

Intensities are stored as ``round(p * 255)`` with halves rounded up, and read
back as ``v / maxval``.  Output bytes depend only on the quantized pixels.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import PgmParseError, RangeError
from .image import as_image

MAXVAL = 255
_WHITESPACE = b" \t\r\n\v\f"
_HASH = ord("#")


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def skip_space_and_comments(self):
        data = self.data
        while self.pos < len(data):
            c = data[self.pos]
            if c in _WHITESPACE:
                self.pos += 1
            elif c == _HASH:
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            else:
                break

    def token(self, what: str) -> int:
        self.skip_space_and_comments()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos] not in _WHITESPACE and data[self.pos] != _HASH:
            self.pos += 1
        raw = data[start:self.pos]
        if not raw:
            raise PgmParseError(f"truncated data: expected {what}", start)
        if not raw.isdigit():
            raise PgmParseError(f"invalid {what} {raw[:16]!r}", start)
        return int(raw)


def load_pgm(data: bytes) -> np.ndarray:
    """Decode PGM bytes into a float image in ``[0, 1]``."""
    if len(data) < 2:
        raise PgmParseError("truncated data: missing magic number", 0)
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PgmParseError(f"unsupported magic {magic!r}", 0)
    reader = _Reader(data)
    reader.pos = 2
    if len(data) > 2 and data[2] not in _WHITESPACE and data[2] != _HASH:
        raise PgmParseError(f"unsupported magic {data[:3]!r}", 0)

    width = reader.token("width")
    height = reader.token("height")
    if width < 1 or height < 1:
        raise PgmParseError(f"image dimensions must be >= 1, got {width}x{height}", reader.pos)
    reader.skip_space_and_comments()
    maxval_at = reader.pos
    maxval = reader.token("maxval")
    if not 1 <= maxval <= MAXVAL:
        raise PgmParseError(f"maxval {maxval} not in [1, {MAXVAL}]", maxval_at)
    count = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        if reader.pos >= len(data) or data[reader.pos] not in _WHITESPACE:
            raise PgmParseError("truncated data: missing raster", reader.pos)
        start = reader.pos + 1
        raster = data[start:start + count]
        if len(raster) < count:
            raise PgmParseError(
                f"truncated raster: expected {count} bytes, got {len(raster)}", start + len(raster))
        values = np.frombuffer(raster, dtype=np.uint8).astype(np.int64)
        if values.max() > maxval:
            bad = int(np.argmax(values > maxval))
            raise PgmParseError(f"sample {values[bad]} exceeds maxval {maxval}", start + bad)
    else:
        values = _ascii_samples(reader, count, maxval)

    return values.reshape(height, width) / float(maxval)


def _ascii_samples(reader: _Reader, count: int, maxval: int) -> np.ndarray:
    rest = reader.data[reader.pos:]
    if _HASH not in rest:
        tokens = rest.split()[:count]
        if len(tokens) == count and all(t.isdigit() for t in tokens):
            values = np.array(tokens, dtype=np.int64)
            if values.max() <= maxval:
                return values
    # slow path: token by token, so errors carry an exact byte offset
    values = np.empty(count, dtype=np.int64)
    for k in range(count):
        reader.skip_space_and_comments()
        at = reader.pos
        v = reader.token(f"sample {k}")
        if v > maxval:
            raise PgmParseError(f"sample {v} exceeds maxval {maxval}", at)
        values[k] = v
    return values


def quantize(img) -> np.ndarray:
    """Map ``[0, 1]`` intensities to 8-bit levels, rounding halves up."""
    img = as_image(img)
    if img.min() < 0.0 or img.max() > 1.0:
        raise RangeError("pixels must lie in [0, 1] to be saved; clip first")
    return np.floor(img * MAXVAL + 0.5).astype(np.uint8)


def save_pgm(img, binary: bool = True) -> bytes:
    levels = quantize(img)
    height, width = levels.shape
    if binary:
        return b"P5\n%d %d\n%d\n" % (width, height, MAXVAL) + levels.tobytes()
    lines = [b"P2", b"%d %d" % (width, height), b"%d" % MAXVAL]
    lines += [b" ".join(b"%d" % v for v in row) for row in levels.tolist()]
    return b"\n".join(lines) + b"\n"


def read_pgm(path: str | os.PathLike) -> np.ndarray:
    with open(path, "rb") as fh:
        return load_pgm(fh.read())


def write_pgm(path: str | os.PathLike, img, binary: bool = True) -> None:
    data = save_pgm(img, binary=binary)
    with open(path, "wb") as fh:
        fh.write(data)
