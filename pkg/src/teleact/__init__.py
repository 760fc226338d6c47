"""Parametric design kernel for telescopic soft pneumatic actuators."""

from .params import (
    DesignParams,
    GenerationResolution,
    MidlineParams,
    Section,
    ThicknessMode,
    ThicknessSpec,
    ValidationError,
    collect_errors,
    load_design,
    save_design,
    validate,
)
from .presets import baseline, preset, preset_names

__version__ = "0.1.0"

__all__ = [
    "DesignParams",
    "GenerationResolution",
    "MidlineParams",
    "Section",
    "ThicknessMode",
    "ThicknessSpec",
    "ValidationError",
    "collect_errors",
    "validate",
    "load_design",
    "save_design",
    "baseline",
    "preset",
    "preset_names",
    "__version__",
]
