"""
netpbm.py

Module for ASCII Netpbm image files: PGM (``P2``) for gray and PPM (``P3``)
for RGB images, both with maxval 255.

The reader accepts ``#`` comments and free whitespace. The writer emits a
canonical layout (magic, ``<width> <height>``, maxval, then one image row per
line) so files are byte-stable.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from sdfnoc.exceptions import ParseError
from sdfnoc.graph.tokens import Image

_WORD = re.compile(r"\S+")
MAXVAL = 255


def parse_netpbm(text: str) -> Image:
    """
    Parse an ASCII PGM or PPM document.

    Raises
    ------
    ParseError
        On a wrong magic number, a maxval other than 255, a pixel outside
        0..255 or a pixel count that does not match the header.
    """
    words: list[tuple[str, int, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        words += [(m.group(), number, m.start() + 1) for m in _WORD.finditer(content)]
    if not words:
        raise ParseError("empty image document", 1, 1)
    magic, line, column = words[0]
    if magic not in ("P2", "P3"):
        raise ParseError(f"expected magic 'P2' or 'P3', got {magic!r}", line, column)
    channels = 1 if magic == "P2" else 3
    if len(words) < 4:
        raise ParseError("truncated header", line, column)
    header = []
    for text_value, line, column in words[1:4]:
        if not text_value.isdigit():
            raise ParseError(f"expected an integer, got {text_value!r}", line, column)
        header.append(int(text_value))
    width, height, maxval = header
    if width < 1 or height < 1:
        raise ParseError(f"invalid image size {width}x{height}", words[1][1], words[1][2])
    if maxval != MAXVAL:
        raise ParseError(f"maxval must be {MAXVAL}, got {maxval}", words[3][1], words[3][2])
    samples = words[4:]
    expected = width * height * channels
    if len(samples) != expected:
        last = words[-1]
        raise ParseError(
            f"expected {expected} samples, found {len(samples)}", last[1], last[2]
        )
    values = []
    for text_value, line, column in samples:
        if not text_value.isdigit() or int(text_value) > MAXVAL:
            raise ParseError(f"invalid sample {text_value!r}", line, column)
        values.append(int(text_value))
    shape = (height, width) if channels == 1 else (height, width, 3)
    return Image(np.array(values, dtype=np.uint8).reshape(shape))


def format_netpbm(img: Image) -> str:
    """Write an image as canonical ASCII PGM (gray) or PPM (RGB)."""
    magic = "P2" if img.is_gray else "P3"
    lines = [magic, f"{img.width} {img.height}", str(MAXVAL)]
    for row in img.pixels:
        lines.append(" ".join(str(int(v)) for v in row.ravel()))
    return "\n".join(lines) + "\n"


def read_netpbm(path: str | Path) -> Image:
    """Read a PGM/PPM file, tagging parse errors with the path."""
    path = Path(path)
    try:
        return parse_netpbm(path.read_text(encoding="utf-8"))
    except ParseError as err:
        err.path = str(path)
        raise


def write_netpbm(path: str | Path, img: Image) -> Path:
    """Write ``img`` to ``path`` and return the path."""
    path = Path(path)
    path.write_text(format_netpbm(img), encoding="utf-8", newline="\n")
    return path
