"""Numerical laboratory for Multi-Centre and Bianchi A four-geometries."""

from . import (
    catalog,
    charts,
    curvature,
    engine,
    errors,
    flat3,
    flow,
    forms,
    metric,
    multicentre,
    poisson,
    reports,
    separability,
    symmetry,
)

__version__ = "0.1.0"

__all__ = [
    "catalog",
    "charts",
    "curvature",
    "engine",
    "errors",
    "flat3",
    "flow",
    "forms",
    "metric",
    "multicentre",
    "poisson",
    "reports",
    "separability",
    "symmetry",
    "__version__",
]
