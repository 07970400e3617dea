"""Four-metric models and coordinate maps."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import engine
from .errors import RankDeficiencyError, SingularMetricError

_COND_LIMIT = 1e12


@dataclass
class MetricModel:
    """A metric on a chart, with optional closed-form partials and frame hint.

    ``components`` maps coords(4) -> symmetric 4x4 and must accept complex
    coordinates so the complex-step route applies; ``exact_partials``, when
    given, maps coords -> array P[k, a, b] = d(g_ab)/dx^k and takes priority.
    ``frame_hint`` optionally maps coords -> rows-as-coframe 4x4 matrix E with
    g = E^T diag(signature) E.
    """

    name: str
    chart_id: str
    components: object
    params: dict = field(default_factory=dict)
    exact_partials: object = None
    frame_hint: object = None
    domain: object = None  # coords -> bool, stencil-safe interior
    metadata: dict = field(default_factory=dict)

    def g(self, x):
        return np.asarray(self.components(x))

    def ginv(self, x):
        g = self.g(x)
        if np.iscomplexobj(g):
            return np.linalg.inv(g)
        cond = np.linalg.cond(g)
        if not np.isfinite(cond) or cond > _COND_LIMIT:
            raise SingularMetricError(
                f"{self.name}: metric singular at {np.asarray(x)} (cond {cond:.2e})"
            )
        return np.linalg.inv(g)

    def partials(self, x, cfg=engine.DEFAULT_CFG):
        """P[k, a, b] = d(g_ab)/dx^k."""
        if cfg.scheme == engine.EXACT and self.exact_partials is not None:
            return np.asarray(self.exact_partials(np.asarray(x, dtype=float)))
        return engine.array_partials(self.components, x, cfg, domain=self.domain)

    def dim(self):
        return 4


@dataclass
class VectorField:
    """A vector field on a chart, stored in coordinate components."""

    name: str
    chart_id: str
    components: object  # coords -> 4 reals (complex-safe)

    def __call__(self, x):
        return np.asarray(self.components(x))


@dataclass
class CoordinateMap:
    """A smooth map between charts, with an optional closed-form inverse."""

    source_chart: str
    target_chart: str
    forward: object  # coords -> coords, complex-safe
    inverse: object = None
    name: str = ""

    def jacobian(self, x, cfg=engine.DEFAULT_CFG):
        J = engine.jacobian(self.forward, x, cfg)
        return np.asarray(J)

    def __call__(self, x):
        return np.asarray(self.forward(x))


def pullback_metric(target: MetricModel, cmap: CoordinateMap, name=None,
                    cfg=engine.DEFAULT_CFG) -> MetricModel:
    """Pull ``target`` back along ``cmap``: (phi* g)_ij = J^a_i g_ab J^b_j.

    The Jacobian rank is checked on real evaluations; a singular map raises
    ``RankDeficiencyError`` with the numerical rank attached.
    """

    def comps(x):
        x = np.asarray(x)
        if np.iscomplexobj(x):
            # complex-step pass-through: jacobian by small central differences
            J = _complex_jacobian(cmap.forward, x)
        else:
            J = cmap.jacobian(x, cfg)
            rank = np.linalg.matrix_rank(J, tol=1e-10 * max(1.0, np.abs(J).max()))
            if rank < J.shape[1]:
                raise RankDeficiencyError(rank)
        g = np.asarray(target.components(cmap.forward(x)))
        return J.T @ g @ J

    return MetricModel(
        name=name or f"{target.name}<-{cmap.name or cmap.source_chart}",
        chart_id=cmap.source_chart,
        components=comps,
        params=dict(target.params),
        metadata=dict(target.metadata),
    )


def _complex_jacobian(F, x, h=1e-7):
    x = np.asarray(x, dtype=complex)
    cols = []
    for i in range(x.size):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        cols.append((np.asarray(F(xp)) - np.asarray(F(xm))) / (2 * h))
    return np.array(cols).T


def metric_from_coframe(name, chart_id, coframe, signature=(1, 1, 1, 1), **kw):
    """Build a metric from a coframe field E (rows e^a): g = E^T eta E."""
    eta = np.diag(np.asarray(signature, dtype=float))

    def comps(x):
        E = np.asarray(coframe(x))
        return E.T @ eta @ E

    return MetricModel(name, chart_id, comps, frame_hint=coframe, **kw)
