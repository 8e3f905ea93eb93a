"""Bundled day/night experiment: application graphs, area table, project file and images."""

from importlib.resources import files
from pathlib import Path

EXPERIMENT_FILES = (
    "areas.txt",
    "day.sdf",
    "day_inputs.txt",
    "input_gray.pgm",
    "input_rgb.ppm",
    "night.sdf",
    "night_inputs.txt",
    "project.txt",
)


def experiment_path(name: str = "project.txt") -> Path:
    """
    Path of a bundled experiment file.

    Raises
    ------
    ValueError
        If ``name`` is not an experiment file.
    """
    if name not in EXPERIMENT_FILES:
        raise ValueError(
            f"Unknown experiment file: {name}"
            "\n File must be one of: "
            f"{list(EXPERIMENT_FILES)}"
        )
    return Path(str(files("sdfnoc.data") / "experiment" / name))


__all__ = ["EXPERIMENT_FILES", "experiment_path"]
