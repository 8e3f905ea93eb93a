"""
registry.py

Module for operator registries: the computational law of every node type.

Implements:

- OperatorSpec: arity and pure firing function of one type label.
- OperatorRegistry: type label -> OperatorSpec with null propagation.
- default_registry: the library operators used by the day/night experiment
  and by structural plumbing (ID, CONST, SOURCE, SINK, ADDER, GAUSS3,
  GRAYWORLD, HISTEQ, CANNY, SPLIT, MERGE).
- get_operator_registry: look a registry factory up by name.

Library operators return Null on every output when any input is Null. A
spec may opt out (CONST never emits Null).

Examples
--------
>>> from sdfnoc.graph.tokens import NULL, Scalar
>>> reg = default_registry()
>>> reg.fire("ADDER", (Scalar(1), Scalar(3)))
(Scalar(4),)
>>> reg.fire("ADDER", (Scalar(1), NULL))
(N,)
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass

from sdfnoc.exceptions import OperatorDomainError, UnknownOperatorError
from sdfnoc.graph.tokens import INT64_MAX, INT64_MIN, NULL, Scalar, Token
from sdfnoc.imaging.operators import (
    CannyParams,
    canny,
    channelwise,
    gauss3,
    grayworld,
    hist_eq,
    merge_rgb,
    split_rgb,
)


@dataclass(frozen=True)
class OperatorSpec:
    """
    Arity and firing function of one type label.

    Parameters
    ----------
    type : str
        Type label.
    in_arity, out_arity : int
        Tokens consumed and produced per firing.
    fire : callable
        Pure function taking ``in_arity`` tokens and returning a token or a
        tuple of ``out_arity`` tokens.
    null_passthrough : bool, optional
        Emit Null on every output when any input is Null. Defaults to True.
    """

    type: str
    in_arity: int
    out_arity: int
    fire: Callable[..., Token | tuple[Token, ...]]
    null_passthrough: bool = True


class OperatorRegistry:
    """
    Map from type label to :class:`OperatorSpec`.

    Parameters
    ----------
    specs : iterable of OperatorSpec, optional
        Initial entries.
    """

    def __init__(self, specs: Sequence[OperatorSpec] = ()) -> None:
        self._specs: dict[str, OperatorSpec] = {}
        for spec in specs:
            self.register(spec)

    def register(self, spec: OperatorSpec) -> None:
        if spec.type in self._specs:
            raise ValueError(f"operator {spec.type!r} is already registered")
        self._specs[spec.type] = spec

    def get(self, type_label: str) -> OperatorSpec:
        try:
            return self._specs[type_label]
        except KeyError:
            raise UnknownOperatorError(
                f"Unknown operator type: {type_label}"
                "\n Operator type must be one of: "
                f"{sorted(self._specs)}"
            ) from None

    def __contains__(self, type_label: object) -> bool:
        return type_label in self._specs

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._specs))

    def __len__(self) -> int:
        return len(self._specs)

    def fire(self, type_label: str, args: Sequence[Token]) -> tuple[Token, ...]:
        """
        Fire one node of ``type_label`` on one token per input port.

        Returns
        -------
        tuple of Token
            One token per output port.

        Raises
        ------
        UnknownOperatorError
            If the type is not registered.
        OperatorDomainError
            If the number of tokens is wrong or the operator rejects them.
        """
        spec = self.get(type_label)
        if len(args) != spec.in_arity:
            raise OperatorDomainError(
                f"{type_label} takes {spec.in_arity} inputs, got {len(args)}"
            )
        if spec.null_passthrough and any(a is NULL for a in args):
            return (NULL,) * spec.out_arity
        result = spec.fire(*args)
        outputs = result if isinstance(result, tuple) else (result,)
        if len(outputs) != spec.out_arity:
            raise OperatorDomainError(
                f"{type_label} produced {len(outputs)} outputs, expected {spec.out_arity}"
            )
        return outputs


def _identity(token: Token) -> Token:
    return token


def _adder(a: Token, b: Token) -> Scalar:
    if not isinstance(a, Scalar) or not isinstance(b, Scalar):
        raise OperatorDomainError(
            f"ADDER expects scalars, got {type(a).__name__} and {type(b).__name__}"
        )
    total = a.value + b.value
    if not INT64_MIN <= total <= INT64_MAX:
        raise OperatorDomainError(f"ADDER overflow: {a.value} + {b.value}")
    return Scalar(total)


def default_registry(
    canny_params: CannyParams | None = None, const_value: int = 0
) -> OperatorRegistry:
    """
    Build the library registry.

    Parameters
    ----------
    canny_params : CannyParams, optional
        Canny thresholds. Defaults to ``CannyParams()``.
    const_value : int, optional
        Value emitted by CONST nodes. Defaults to 0.

    Returns
    -------
    OperatorRegistry
        Registry with ID, SOURCE, SINK, CONST, ADDER, GAUSS3, GRAYWORLD,
        HISTEQ, CANNY, SPLIT and MERGE. GAUSS3, HISTEQ and CANNY accept RGB
        images and process each channel separately.
    """
    params = canny_params or CannyParams()
    constant = Scalar(const_value)

    def edges(img):
        return canny(img, params)

    return OperatorRegistry(
        [
            OperatorSpec("ID", 1, 1, _identity),
            OperatorSpec("SOURCE", 1, 1, _identity),
            OperatorSpec("SINK", 1, 1, _identity),
            OperatorSpec("CONST", 0, 1, lambda: constant, null_passthrough=False),
            OperatorSpec("ADDER", 2, 1, _adder),
            OperatorSpec("GAUSS3", 1, 1, channelwise(gauss3)),
            OperatorSpec("GRAYWORLD", 1, 1, grayworld),
            OperatorSpec("HISTEQ", 1, 1, channelwise(hist_eq)),
            OperatorSpec("CANNY", 1, 1, channelwise(edges)),
            OperatorSpec("SPLIT", 1, 3, split_rgb),
            OperatorSpec("MERGE", 3, 1, merge_rgb),
        ]
    )


OPERATOR_REGISTRIES: dict[str, Callable[..., OperatorRegistry]] = {
    "default": default_registry,
}


def get_operator_registry(name: str = "default", **options) -> OperatorRegistry:
    """
    Build a registry by factory name.

    Parameters
    ----------
    name : str, optional
        Factory name. Defaults to ``"default"``.
    **options
        Keyword arguments forwarded to the factory.

    Example
    -------
    >>> "CANNY" in get_operator_registry("default")
    True
    """
    if name not in OPERATOR_REGISTRIES:
        raise ValueError(
            f"Unknown operator registry: {name}"
            "\n Registry must be one of: "
            f"{list(OPERATOR_REGISTRIES.keys())}"
        )
    return OPERATOR_REGISTRIES[name](**options)
