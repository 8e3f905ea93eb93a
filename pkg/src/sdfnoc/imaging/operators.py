"""
operators.py

Module for the integer-exact image operators of the day/night preprocessor.

Implements:

- gauss3: 3x3 binomial smoothing of a gray image.
- grayworld: gray-world color constancy on an RGB image (Q16 gains).
- hist_eq: histogram equalization of a gray image.
- canny: Sobel/NMS/hysteresis edge detector on a gray image (0/255 output).
- split_rgb / merge_rgb: channel plumbing.
- channelwise: lift a gray operator to RGB images, one channel at a time.

All arithmetic is integer or fixed point with explicit rounding so results
are bit-exact across platforms. Borders replicate the nearest pixel.

Examples
--------
>>> import numpy as np
>>> from sdfnoc.graph.tokens import Image
>>> img = np.zeros((3, 3), dtype=np.uint8)
>>> img[1, 1] = 255
>>> int(gauss3(Image(img)).pixels[1, 1])
64
"""

from __future__ import annotations

import warnings
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from sdfnoc.exceptions import OperatorDomainError
from sdfnoc.graph.tokens import Image

GAUSS_KERNEL = np.array([[1, 2, 1], [2, 4, 2], [1, 2, 1]], dtype=np.int64)
SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.int64)
SOBEL_Y = np.array([[-1, -2, -1], [0, 0, 0], [1, 2, 1]], dtype=np.int64)

# tan(22.5 degrees) as a ratio of integers
TAN_22_5 = (414, 1000)
Q16_ONE = 1 << 16


def _require_gray(img: Image, name: str) -> np.ndarray:
    if not isinstance(img, Image):
        raise OperatorDomainError(f"{name} expects an image, got {type(img).__name__}")
    if not img.is_gray:
        raise OperatorDomainError(f"{name} expects a gray image, got {img!r}")
    return img.pixels.astype(np.int64)


def _require_rgb(img: Image, name: str) -> np.ndarray:
    if not isinstance(img, Image):
        raise OperatorDomainError(f"{name} expects an image, got {type(img).__name__}")
    if img.is_gray:
        raise OperatorDomainError(f"{name} expects an RGB image, got {img!r}")
    return img.pixels.astype(np.int64)


def gauss3(img: Image) -> Image:
    """
    Smooth a gray image with the 3x3 kernel [[1,2,1],[2,4,2],[1,2,1]].

    Each output pixel is ``(weighted sum + 8) // 16``.

    Raises
    ------
    OperatorDomainError
        If ``img`` is not a gray image.
    """
    pixels = _require_gray(img, "gauss3")
    weighted = ndimage.correlate(pixels, GAUSS_KERNEL, mode="nearest")
    return Image((weighted + 8) // 16)


def grayworld(img: Image) -> Image:
    """
    Balance the channel energies of an RGB image (gray-world assumption).

    The gain of channel c is ``(S_R + S_G + S_B) / (3 S_c)`` with ``S_c`` the
    channel sum, stored as ``floor(gain * 2**16)``. Output pixels are
    ``clamp((p * gain_q16 + 2**15) >> 16, 0, 255)``. A channel whose mean is
    zero keeps gain 1 and a warning is issued.

    Raises
    ------
    OperatorDomainError
        If ``img`` is not an RGB image.
    """
    pixels = _require_rgb(img, "grayworld")
    sums = [int(pixels[:, :, c].sum()) for c in range(3)]
    total = sum(sums)
    out = np.empty_like(pixels)
    for c, channel_sum in enumerate(sums):
        if channel_sum == 0:
            warnings.warn(
                f"grayworld: channel {'RGB'[c]} has zero mean, keeping gain 1",
                stacklevel=2,
            )
            gain = Q16_ONE
        else:
            gain = (total << 16) // (3 * channel_sum)
        out[:, :, c] = (pixels[:, :, c] * gain + (1 << 15)) >> 16
    return Image(np.clip(out, 0, 255))


def hist_eq(img: Image) -> Image:
    """
    Equalize the histogram of a gray image.

    ``out(v) = floor((cdf(v) - cdf_min) * 255 / (N - cdf_min))`` where
    ``cdf_min`` is the smallest non-zero CDF value and ``N`` the pixel count.
    A constant image is returned unchanged.

    Raises
    ------
    OperatorDomainError
        If ``img`` is not a gray image.
    """
    pixels = _require_gray(img, "hist_eq")
    count = pixels.size
    cdf = np.cumsum(np.bincount(pixels.ravel(), minlength=256))
    cdf_min = int(cdf[pixels.min()])
    if count == cdf_min:
        return img
    lut = np.clip((cdf - cdf_min) * 255 // (count - cdf_min), 0, 255)
    return Image(lut[pixels])


@dataclass(frozen=True)
class CannyParams:
    """Canny hysteresis thresholds on the ``|gx| + |gy|`` magnitude."""

    low: int = 40
    high: int = 100

    def __post_init__(self) -> None:
        if not 0 <= self.low <= self.high:
            raise ValueError(
                "Canny thresholds must satisfy 0 <= low <= high, "
                f"got {self.low}, {self.high}"
            )


def _sectors(gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Quantize gradient direction: 0 horizontal, 1 and 3 diagonals, 2 vertical."""
    ax, ay = np.abs(gx), np.abs(gy)
    num, den = TAN_22_5
    sector = np.where(gx * gy > 0, 1, 3)
    sector = np.where(ax * den <= ay * num, 2, sector)
    sector = np.where(ay * den <= ax * num, 0, sector)
    return sector


# (before, after) neighbor offsets along the gradient of each sector
_NEIGHBORS = {
    0: ((0, -1), (0, 1)),
    1: ((-1, -1), (1, 1)),
    2: ((-1, 0), (1, 0)),
    3: ((-1, 1), (1, -1)),
}


def _non_maximum_suppression(magnitude: np.ndarray, sector: np.ndarray) -> np.ndarray:
    height, width = magnitude.shape
    padded = np.pad(magnitude, 1, mode="edge")
    keep = np.zeros(magnitude.shape, dtype=bool)
    for code, ((br, bc), (ar, ac)) in _NEIGHBORS.items():
        before = padded[1 + br : 1 + br + height, 1 + bc : 1 + bc + width]
        after = padded[1 + ar : 1 + ar + height, 1 + ac : 1 + ac + width]
        keep |= (sector == code) & (magnitude > before) & (magnitude >= after)
    return np.where(keep, magnitude, 0)


def canny(img: Image, params: CannyParams | None = None) -> Image:
    """
    Detect edges in a gray image.

    Sobel gradients with replicated borders, magnitude ``|gx| + |gy|``, four
    direction sectors, non-maximum suppression (strictly greater than the
    neighbor before, at least the neighbor after), double threshold and
    hysteresis over 8-connected neighborhoods. Edge pixels are 255, all
    others 0.

    Parameters
    ----------
    img : Image
        Gray image of at least 3x3 pixels.
    params : CannyParams, optional
        Thresholds. Defaults to ``CannyParams(low=40, high=100)``.

    Raises
    ------
    OperatorDomainError
        If ``img`` is not gray or smaller than 3x3.
    """
    params = params or CannyParams()
    pixels = _require_gray(img, "canny")
    if img.height < 3 or img.width < 3:
        raise OperatorDomainError(f"canny needs at least 3x3 pixels, got {img!r}")
    gx = ndimage.correlate(pixels, SOBEL_X, mode="nearest")
    gy = ndimage.correlate(pixels, SOBEL_Y, mode="nearest")
    magnitude = np.abs(gx) + np.abs(gy)
    thin = _non_maximum_suppression(magnitude, _sectors(gx, gy))
    candidates = thin >= max(params.low, 1)
    strong = thin >= max(params.high, 1)
    labels, _ = ndimage.label(candidates, structure=np.ones((3, 3), dtype=int))
    seeds = np.unique(labels[strong])
    edges = np.isin(labels, seeds[seeds > 0])
    return Image(np.where(edges, 255, 0))


def split_rgb(img: Image) -> tuple[Image, Image, Image]:
    """Split an RGB image into its R, G and B gray planes."""
    pixels = _require_rgb(img, "split_rgb")
    return tuple(Image(pixels[:, :, c]) for c in range(3))


def merge_rgb(red: Image, green: Image, blue: Image) -> Image:
    """
    Stack three gray planes into an RGB image.

    Raises
    ------
    OperatorDomainError
        If a plane is not gray or the plane sizes differ.
    """
    planes = [_require_gray(p, "merge_rgb") for p in (red, green, blue)]
    if len({p.shape for p in planes}) != 1:
        raise OperatorDomainError(
            f"merge_rgb plane sizes differ: {[p.shape for p in planes]}"
        )
    return Image(np.stack(planes, axis=2))


def channelwise(op: Callable[[Image], Image]) -> Callable[[Image], Image]:
    """
    Lift a gray operator to RGB images by applying it to each channel.

    Gray images are passed to ``op`` unchanged.
    """

    def apply(img: Image) -> Image:
        if isinstance(img, Image) and not img.is_gray:
            return merge_rgb(*(op(plane) for plane in split_rgb(img)))
        return op(img)

    apply.__name__ = getattr(op, "__name__", "channelwise")
    apply.__doc__ = op.__doc__
    return apply
