"""Digit exchanges in beta-expansions: exact arithmetic, certified bounds, explicit constants."""
from .classify import Kind, classify
from .constants import derive_constants
from .field import FieldElement, NumberField
from .roots import isolate_roots, select_root

__all__ = [
    "FieldElement",
    "Kind",
    "NumberField",
    "classify",
    "derive_constants",
    "isolate_roots",
    "select_root",
]
__version__ = "0.1.0"
