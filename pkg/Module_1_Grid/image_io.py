"""
Image File I/O

PGM (P2 ASCII / P5 binary) and CSV readers and writers for GridImage data.

PGM scaling is affine: writing maps [lo, hi] onto 0..255 with
round(255 * (u - lo) / (hi - lo)), constant images map to 0; reading maps a
stored value to value / maxval.
"""

from pathlib import Path

import numpy as np
import pandas as pd

from core.errors import GridError
from .grid_types import GridImage, as_array

PGM_MAXVAL = 255


def _scale_to_bytes(u, value_range=None):
    lo, hi = (float(np.min(u)), float(np.max(u))) if value_range is None else value_range
    if hi <= lo:
        return np.zeros(u.shape, dtype=np.uint8)
    scaled = np.round(PGM_MAXVAL * (np.clip(u, lo, hi) - lo) / (hi - lo))
    return scaled.astype(np.uint8)


def write_pgm(u, file_path, binary=False, value_range=None):
    """Write an image as PGM; value_range=(lo, hi) fixes the scaling window"""
    data = np.asarray(as_array(u), dtype=np.float64)
    pixels = _scale_to_bytes(data, value_range)
    height, width = pixels.shape
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)

    header = f"{'P5' if binary else 'P2'}\n{width} {height}\n{PGM_MAXVAL}\n"
    if binary:
        with open(file_path, 'wb') as f:
            f.write(header.encode('ascii'))
            f.write(pixels.tobytes())
    else:
        rows = "\n".join(" ".join(str(int(v)) for v in row) for row in pixels)
        file_path.write_text(header + rows + "\n", encoding='ascii')
    return file_path


def _header_tokens(raw, count):
    """First `count` whitespace-separated header tokens, skipping # comments; returns (tokens, offset)"""
    tokens = []
    i = 0
    while len(tokens) < count:
        while i < len(raw) and chr(raw[i]).isspace():
            i += 1
        if i >= len(raw):
            raise GridError("truncated PGM header")
        if raw[i:i + 1] == b'#':
            while i < len(raw) and raw[i:i + 1] not in (b'\n', b'\r'):
                i += 1
            continue
        start = i
        while i < len(raw) and not chr(raw[i]).isspace():
            i += 1
        tokens.append(raw[start:i].decode('ascii'))
    return tokens, i


def read_pgm(file_path, spacing=1.0):
    """Read a P2 or P5 PGM file into a GridImage with values value / maxval"""
    raw = Path(file_path).read_bytes()
    (magic, width, height, maxval), offset = _header_tokens(raw, 4)
    width, height, maxval = int(width), int(height), int(maxval)
    if magic not in ("P2", "P5"):
        raise GridError(f"unsupported PGM magic '{magic}' in {file_path}")
    if not 0 < maxval < 65536:
        raise GridError(f"invalid PGM maxval {maxval}")

    if magic == "P2":
        values = np.array(raw[offset:].split(), dtype=np.float64)
    else:
        # exactly one whitespace byte separates the header from the raster
        dtype = np.dtype('>u2') if maxval > 255 else np.uint8
        values = np.frombuffer(raw[offset + 1:], dtype=dtype).astype(np.float64)

    if values.size < width * height:
        raise GridError(f"PGM raster too short: {values.size} of {width * height} values")
    return GridImage(values[:width * height].reshape(height, width) / maxval, spacing)


def write_csv_image(u, file_path):
    """One CSV row per image row, ',' separator, '.' decimal"""
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(np.asarray(as_array(u), dtype=np.float64)).to_csv(
        file_path, header=False, index=False, float_format="%.17g", lineterminator="\n")
    return file_path


def read_csv_image(file_path, spacing=1.0):
    frame = pd.read_csv(file_path, header=None, dtype=np.float64)
    return GridImage(frame.to_numpy(), spacing)


def read_image(file_path, spacing=1.0):
    """Dispatch on suffix: .pgm or .csv"""
    suffix = Path(file_path).suffix.lower()
    if suffix == ".pgm":
        return read_pgm(file_path, spacing)
    if suffix == ".csv":
        return read_csv_image(file_path, spacing)
    raise GridError(f"unsupported image format '{suffix}' for {file_path}")
