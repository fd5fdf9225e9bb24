"""Exact symbolic engine for deformation germs of nilmanifold DGLAs.

The package computes, in exact Gaussian-rational arithmetic, the degree-one
Kuranishi data of the finite-dimensional differential graded Lie algebras
attached to a nilpotent Lie algebra with an invariant complex structure and a
trivial holomorphic bundle: harmonic spaces, the recursive deformation series,
the obstruction ideal with certified exactness where available, germ
invariants of the resulting analytic germ, and a product-splitting verdict for
the joint (manifold, bundle) problem.
"""

from __future__ import annotations

from .analysis import StructureAnalysis, analyze_structure
from .catalog import build_catalog_structure, catalog_names
from .config import AnalysisConfig, ConfigError, load_config
from .lie import ComplexStructure, LieAlgebra, parse_salamon
from .scalars import GaussianRational

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "ComplexStructure",
    "ConfigError",
    "GaussianRational",
    "LieAlgebra",
    "StructureAnalysis",
    "analyze_structure",
    "build_catalog_structure",
    "catalog_names",
    "load_config",
    "parse_salamon",
    "__version__",
]
