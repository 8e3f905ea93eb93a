"""Integer-exact image operators, operator registries and Netpbm image files."""

from sdfnoc.imaging.netpbm import format_netpbm, parse_netpbm, read_netpbm, write_netpbm
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
from sdfnoc.imaging.registry import (
    OPERATOR_REGISTRIES,
    OperatorRegistry,
    OperatorSpec,
    default_registry,
    get_operator_registry,
)

__all__ = [
    "OPERATOR_REGISTRIES",
    "CannyParams",
    "OperatorRegistry",
    "OperatorSpec",
    "canny",
    "channelwise",
    "default_registry",
    "format_netpbm",
    "gauss3",
    "get_operator_registry",
    "grayworld",
    "hist_eq",
    "merge_rgb",
    "parse_netpbm",
    "read_netpbm",
    "split_rgb",
    "write_netpbm",
]
