"""
tokens.py

Module for the tokens that flow along dataflow edges and NoC links.

Implements:

- NullToken / NULL: the explicit placeholder token. It carries no data but keeps
  stream positions aligned.
- Scalar: a signed 64-bit integer token.
- Image: an immutable gray (H x W) or RGB (H x W x 3) image with 8-bit pixels.
- Stream: a finite tuple of tokens. Token index is the synchronization key.

Examples
--------
>>> from sdfnoc.graph.tokens import NULL, Scalar, as_stream
>>> as_stream([1, None, 3])
(Scalar(1), N, Scalar(3))
>>> NULL is as_stream(["N"])[0]
True
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Union

import numpy as np

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class NullToken:
    """The null token. There is exactly one instance, :data:`NULL`."""

    _instance: NullToken | None = None

    def __new__(cls) -> NullToken:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "N"

    def __reduce__(self):
        return (NullToken, ())


NULL = NullToken()


@dataclass(frozen=True)
class Scalar:
    """
    Integer token in the signed 64-bit range.

    Raises
    ------
    ValueError
        If the value is not an integer or does not fit in 64 bits.
    """

    value: int

    def __post_init__(self) -> None:
        if isinstance(self.value, bool) or not isinstance(self.value, (int, np.integer)):
            raise ValueError(f"Scalar value must be an integer, got {self.value!r}")
        value = int(self.value)
        if not INT64_MIN <= value <= INT64_MAX:
            raise ValueError(f"Scalar value {value} is outside the signed 64-bit range")
        object.__setattr__(self, "value", value)

    def __repr__(self) -> str:
        return f"Scalar({self.value})"


class Image:
    """
    Immutable image token.

    Parameters
    ----------
    pixels : array-like
        Integer pixel values in 0..255 with shape (H, W) for gray images or
        (H, W, 3) for RGB images, channel order R, G, B.

    Raises
    ------
    ValueError
        If the shape is not (H, W) or (H, W, 3) with H, W >= 1, or a value is
        outside 0..255.
    """

    __slots__ = ("_pixels",)

    def __init__(self, pixels) -> None:
        arr = np.asarray(pixels)
        if arr.ndim not in (2, 3) or (arr.ndim == 3 and arr.shape[2] != 3):
            raise ValueError(f"image shape must be (H, W) or (H, W, 3), got {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image dimensions must be at least 1x1, got {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.dtype.kind not in "iu":
                raise ValueError(f"image pixels must be integers, got dtype {arr.dtype}")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("image pixel values must lie in 0..255")
        data = np.array(arr, dtype=np.uint8, copy=True)
        data.setflags(write=False)
        self._pixels = data

    @property
    def pixels(self) -> np.ndarray:
        """Read-only ``uint8`` pixel array."""
        return self._pixels

    @property
    def height(self) -> int:
        return int(self._pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self._pixels.shape[1])

    @property
    def channels(self) -> int:
        return 1 if self._pixels.ndim == 2 else 3

    @property
    def is_gray(self) -> bool:
        return self.channels == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self._pixels.shape == other._pixels.shape and bool(
            np.array_equal(self._pixels, other._pixels)
        )

    def __hash__(self) -> int:
        return hash((self._pixels.shape, self._pixels.tobytes()))

    def __repr__(self) -> str:
        kind = "gray" if self.is_gray else "rgb"
        return f"Image({self.width}x{self.height} {kind})"


Token = Union[NullToken, Scalar, Image]
Stream = tuple[Token, ...]


def is_null(token: Token) -> bool:
    """Return True for the null token."""
    return token is NULL


def as_token(value) -> Token:
    """
    Convert a plain Python value to a token.

    ``None`` and ``"N"`` become :data:`NULL`, integers become :class:`Scalar`,
    arrays become :class:`Image`; tokens are returned unchanged.
    """
    if isinstance(value, (NullToken, Scalar, Image)):
        return value
    if value is None or (isinstance(value, str) and value == "N"):
        return NULL
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return Scalar(int(value))
    if isinstance(value, np.ndarray):
        return Image(value)
    raise ValueError(f"cannot convert {value!r} to a token")


def as_stream(values: Iterable) -> Stream:
    """Convert an iterable of plain values or tokens to a :data:`Stream`."""
    return tuple(as_token(v) for v in values)
