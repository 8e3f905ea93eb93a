"""
streams.py

Module for stream files: one line per system input or output::

    stream source.in0: 7 N 12
    stream camera.in0: @input_rgb.ppm @input_rgb.ppm

A token is a decimal integer, ``N`` (null) or ``@<path>`` naming a PGM/PPM
image, relative to the stream file.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Mapping, Sequence
from pathlib import Path

from sdfnoc.exceptions import ParseError
from sdfnoc.graph.dataflow_graph import Vertex
from sdfnoc.graph.parser import tokenize
from sdfnoc.graph.tokens import NULL, Image, Scalar, Stream, Token, as_stream
from sdfnoc.imaging.netpbm import read_netpbm, write_netpbm

# Optional minus sign and ASCII digits only
_INTEGER = re.compile(r"-?[0-9]+")


def parse_streams(text: str, base_dir: str | Path = ".") -> dict[Vertex, Stream]:
    """
    Parse a stream document.

    Parameters
    ----------
    text : str
        Document text.
    base_dir : str or Path, optional
        Directory image paths are relative to.

    Raises
    ------
    ParseError
        On malformed lines, a vertex listed twice, bad tokens or unreadable
        images.

    Examples
    --------
    >>> streams = parse_streams("stream a.in0: 1 N 3\\n")
    >>> [(str(v), s) for v, s in streams.items()]
    [('a.in0', (Scalar(1), N, Scalar(3)))]
    """
    base = Path(base_dir)
    streams: dict[Vertex, Stream] = {}
    for words in tokenize(text):
        head = words[0]
        if head.text != "stream" or len(words) < 2 or not words[1].text.endswith(":"):
            raise head.error("expected 'stream <vertex>: <token> ...'", ParseError)
        try:
            vertex = Vertex.parse(words[1].text[:-1])
        except ValueError:
            raise words[1].error(f"invalid vertex {words[1].text[:-1]!r}", ParseError) from None
        if vertex in streams:
            raise words[1].error(f"stream for {vertex} listed twice", ParseError)
        tokens: list[Token] = []
        for word in words[2:]:
            raw = word.text
            if raw == "N":
                tokens.append(NULL)
            elif raw.startswith("@"):
                try:
                    tokens.append(read_netpbm(base / raw[1:]))
                except (OSError, ParseError) as err:
                    raise word.error(f"cannot read image {raw[1:]}: {err}", ParseError) from None
            elif _INTEGER.fullmatch(raw) is None:
                raise word.error(
                    f"invalid token {raw!r}: expected an integer, N or @<image>", ParseError
                )
            else:
                try:
                    tokens.append(Scalar(int(raw)))
                except ValueError as err:
                    raise word.error(f"invalid token {raw!r}: {err}", ParseError) from None
        streams[vertex] = tuple(tokens)
    return streams


def read_streams(path: str | Path) -> dict[Vertex, Stream]:
    """Read a stream file; image paths are relative to its directory."""
    path = Path(path)
    try:
        return parse_streams(path.read_text(encoding="utf-8"), path.parent)
    except ParseError as err:
        err.path = str(path)
        raise


def _no_images(vertex: Vertex, k: int, image: Image) -> str:
    raise ValueError(f"token {k} of {vertex} is an image; use write_streams")


def format_streams(
    streams: Mapping[Vertex, Sequence],
    image_ref: Callable[[Vertex, int, Image], str] = _no_images,
) -> str:
    """
    Write a stream document.

    Parameters
    ----------
    streams : mapping of Vertex to sequence
        Streams to write, in mapping order.
    image_ref : callable, optional
        Called as ``image_ref(vertex, k, image)`` for every image token; returns
        the path written after ``@``. By default image tokens are rejected.
    """
    lines = []
    for vertex, stream in streams.items():
        words = []
        for k, token in enumerate(as_stream(stream)):
            if token is NULL:
                words.append("N")
            elif isinstance(token, Scalar):
                words.append(str(token.value))
            else:
                words.append(f"@{image_ref(vertex, k, token)}")
        lines.append(" ".join([f"stream {vertex}:", *words]))
    return "\n".join(lines) + "\n"


def write_streams(path: str | Path, streams: Mapping[Vertex, Sequence]) -> Path:
    """
    Write a stream file, saving image tokens next to it.

    Images are named ``<stem>_<node>_<port>_<k>.pgm`` (``.ppm`` for color).
    """
    path = Path(path)

    def save(vertex: Vertex, k: int, image: Image) -> str:
        suffix = "pgm" if image.is_gray else "ppm"
        name = f"{path.stem}_{vertex.node}_{vertex.direction.value}{vertex.port}_{k}.{suffix}"
        write_netpbm(path.parent / name, image)
        return name

    text = format_streams(streams, save)
    path.write_text(text, encoding="utf-8", newline="\n")
    return path
