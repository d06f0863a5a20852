"""Exact computation of formal curvature modules and Ricci traces for holonomy
algebras, with the families of Ricci-type algebras checked end to end."""

__version__ = "0.1.0"

from .algspec import AlgebraSpec, build, parse
from .riccicheck import ClassificationRecord, classify

__all__ = ["AlgebraSpec", "ClassificationRecord", "build", "classify", "parse", "__version__"]
