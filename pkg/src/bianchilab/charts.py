"""Coordinate charts and chart points."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Chart:
    """A named coordinate chart with a margin-aware domain predicate.

    ``constraints`` is a list of callables ``coords -> float`` that must be
    strictly positive inside the domain; the margin shrinks the domain so
    finite-difference stencils never straddle a boundary.
    """

    chart_id: str
    coord_names: tuple
    constraints: tuple = ()

    @property
    def dim(self):
        return len(self.coord_names)

    def contains(self, coords, margin=0.0):
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.dim,) or not np.all(np.isfinite(coords)):
            return False
        return all(c(coords) > margin for c in self.constraints)

    def domain(self, margin=0.0):
        """A plain ``coords -> bool`` predicate with the margin baked in."""
        return lambda coords: self.contains(coords, margin)


@dataclass(frozen=True)
class ChartPoint:
    chart_id: str
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", np.asarray(self.coords, dtype=float))


def stencil_margin(cfg):
    """Domain margin protecting a doubled-radius second-derivative stencil."""
    return 4.0 * np.sqrt(cfg.base_step)
