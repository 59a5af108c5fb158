"""NEQR image model and per-bitplane minterm extraction."""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .esop import EsopCover


class ImageFormatError(ValueError):
    """The file is not a readable raster in a supported format."""


class UnsupportedBitDepthError(ImageFormatError):
    pass


@dataclass(frozen=True, eq=False)
class NeqrImage:
    """A ``2**h x 2**w`` raster with ``channels`` planes of ``q``-bit values.

    ``pixels`` has shape ``(2**h, 2**w, channels)``.  Use :meth:`from_array`
    to build one from an arbitrary-sized array; it pads with zeros.
    """

    h: int
    w: int
    q: int
    channels: int
    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", np.array(self.pixels, dtype=np.int64))
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels}")
        if self.q < 1:
            raise ValueError(f"q must be positive, got {self.q}")
        expected = (1 << self.h, 1 << self.w, self.channels)
        if self.pixels.shape != expected:
            raise ValueError(f"pixels shape {self.pixels.shape} != {expected}")
        if self.pixels.size and (self.pixels.min() < 0 or self.pixels.max() >= 1 << self.q):
            raise ValueError(f"pixel values must lie in [0, {1 << self.q})")
        self.pixels.setflags(write=False)

    @property
    def num_position_bits(self) -> int:
        return self.h + self.w

    @property
    def shape(self) -> tuple[int, int]:
        return 1 << self.h, 1 << self.w

    @classmethod
    def from_array(cls, array, q: int = 8) -> "NeqrImage":
        """Wrap a ``(rows, cols)`` or ``(rows, cols, 1|3)`` integer array.

        Rows and columns are zero-padded at the bottom and right up to the next
        power of two.
        """
        arr = np.asarray(array)
        if arr.ndim == 2:
            arr = arr[:, :, None]
        if arr.ndim != 3 or arr.shape[2] not in (1, 3):
            raise ValueError(f"expected (rows, cols) or (rows, cols, 1|3) array, got {arr.shape}")
        rows, cols, channels = arr.shape
        if rows == 0 or cols == 0:
            raise ValueError("image has zero size")
        if arr.dtype.kind not in "iub":
            if not np.all(np.mod(arr, 1) == 0):
                raise ValueError("pixel values must be integers")
        h = _ceil_log2(rows)
        w = _ceil_log2(cols)
        pixels = np.zeros((1 << h, 1 << w, channels), dtype=np.int64)
        pixels[:rows, :cols] = arr
        return cls(h, w, q, channels, pixels)


def _ceil_log2(n):
    return max(0, (int(n) - 1).bit_length())


@dataclass(frozen=True)
class ColorLineCover:
    channel: int
    bit: int
    cover: EsopCover


# ---------------------------------------------------------------------------
# Loading

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def load_image(path: str | os.PathLike) -> NeqrImage:
    """Read PGM/PPM (plain or raw, maxval 255) or 8-bit gray/RGB PNG."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] in (b"P2", b"P3", b"P5", b"P6"):
        array = _parse_netpbm(data)
    elif data.startswith(_PNG_MAGIC):
        array = _read_png(path)
    else:
        raise ImageFormatError(f"{os.fspath(path)}: not a PGM, PPM or PNG file")
    if array.shape[0] == 0 or array.shape[1] == 0:
        raise ImageFormatError(f"{os.fspath(path)}: image has zero size")
    return NeqrImage.from_array(array, q=8)


def _parse_netpbm(data: bytes) -> np.ndarray:
    magic = data[:2]
    pos = 2
    header = []
    # width, height, maxval; '#' comments run to end of line
    while len(header) < 3:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos >= len(data):
            raise ImageFormatError("truncated netpbm header")
        if data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        token = data[start:pos]
        if not token.isdigit():
            raise ImageFormatError(f"bad netpbm header token {token!r}")
        header.append(int(token))
    width, height, maxval = header
    if maxval != 255:
        raise UnsupportedBitDepthError(f"maxval {maxval} unsupported; only 8-bit (255) images")
    channels = 3 if magic in (b"P3", b"P6") else 1
    count = width * height * channels
    if magic in (b"P5", b"P6"):
        raster = data[pos + 1:pos + 1 + count]
        if len(raster) != count:
            raise ImageFormatError("truncated netpbm raster")
        values = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = data[pos:]
        body = b"\n".join(line.split(b"#", 1)[0] for line in body.splitlines())
        try:
            values = np.array(body.split()[:count], dtype=np.int64)
        except ValueError as exc:
            raise ImageFormatError(f"bad plain netpbm raster: {exc}") from None
        if len(values) != count:
            raise ImageFormatError("truncated netpbm raster")
        if values.size and (values.min() < 0 or values.max() > maxval):
            raise ImageFormatError("netpbm sample exceeds maxval")
    return values.reshape(height, width, channels)


def _read_png(path) -> np.ndarray:
    from PIL import Image

    with Image.open(path) as im:
        if im.mode not in ("L", "RGB"):
            raise UnsupportedBitDepthError(
                f"PNG mode {im.mode!r} unsupported; only 8-bit gray or RGB"
            )
        return np.asarray(im)


def save_pnm(path: str | os.PathLike, image: NeqrImage) -> None:
    """Write a raw PGM/PPM (maxval 255); handy for fixtures and self-tests."""
    if image.q != 8:
        raise UnsupportedBitDepthError("only 8-bit images can be written as PNM")
    magic = b"P6" if image.channels == 3 else b"P5"
    rows, cols = image.shape
    with open(path, "wb") as fh:
        fh.write(b"%s\n%d %d\n255\n" % (magic, cols, rows))
        fh.write(image.pixels.astype(np.uint8).tobytes())


# ---------------------------------------------------------------------------
# Covers


def position_index(image: NeqrImage, y: int, x: int) -> int:
    """Basis index of ``|yx>``: y bits (MSB first) then x bits."""
    return (y << image.w) | x


def bitplane_cover(image: NeqrImage, channel: int, bit: int) -> ColorLineCover:
    """Minterms of the positions whose value has color line ``bit`` set.

    Color line 0 is the most significant bit.  Cubes follow row-major order.
    """
    if not 0 <= bit < image.q:
        raise ValueError(f"bit index {bit} outside [0, {image.q})")
    if not 0 <= channel < image.channels:
        raise ValueError(f"channel {channel} outside [0, {image.channels})")
    n = image.num_position_bits
    plane = (image.pixels[:, :, channel].reshape(-1) >> (image.q - 1 - bit)) & 1
    positions = np.flatnonzero(plane)
    if n == 0:
        cubes = [""] * len(positions)
    else:
        fmt = f"0{n}b"
        cubes = [format(p, fmt) for p in positions.tolist()]
    return ColorLineCover(channel, bit, EsopCover(n, cubes))


def bitplane_covers(image: NeqrImage) -> list[ColorLineCover]:
    return [bitplane_cover(image, ch, j)
            for ch in range(image.channels) for j in range(image.q)]


def ideal_map(image: NeqrImage) -> np.ndarray:
    """Exact position -> channel-values lookup.

    Returns an array of shape ``(2**(h+w), channels)``; row ``position_index(y, x)``
    holds the values the prepared state must carry next to ``|yx>``.
    """
    return image.pixels.reshape(-1, image.channels).copy()
