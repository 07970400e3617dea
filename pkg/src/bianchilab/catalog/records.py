"""Declarative catalog records: one entry per named geometry."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..charts import Chart
from ..curvature import Frame
from ..errors import ParameterRangeError
from ..metric import MetricModel
from .charts import chart as get_chart


@dataclass
class Bundle:
    """Everything the catalog knows about one instantiated geometry."""

    metric: MetricModel
    frame: Frame = None
    bianchi: object = None  # BianchiModel
    multicentre: object = None  # MultiCentreData
    complex_structures: list = None  # three KForms
    ky_tensors: dict = field(default_factory=dict)  # name -> KForm
    ks_tensors: dict = field(default_factory=dict)  # name -> lower-index field
    notes: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    family: str
    tag: str  # opaque source tag for the manifest
    description: str
    defaults: dict
    ranges: dict  # param -> (lo, hi) with None for open ends
    labels: dict  # petrov_minus, hyperkahler, einstein, kahler, ...
    build: object  # params dict -> Bundle
    box: tuple  # per-coordinate (lo, hi) sampling box for audits

    def instantiate(self, **params) -> Bundle:
        merged = dict(self.defaults)
        unknown = set(params) - set(merged)
        if unknown:
            raise ParameterRangeError(
                f"{self.name}: unknown parameters {sorted(unknown)}"
            )
        merged.update(params)
        for key, (lo, hi) in self.ranges.items():
            v = merged[key]
            if (lo is not None and v <= lo) or (hi is not None and v >= hi):
                raise ParameterRangeError(
                    f"{self.name}: {key}={v} outside ({lo}, {hi})"
                )
        return self.build(merged)

    @property
    def chart(self) -> Chart:
        return get_chart(self.labels["chart"])

    def sample_points(self, n, rng, margin=0.05):
        """Uniform points in the entry's audit box, inside the chart."""
        lo = np.array([b[0] for b in self.box])
        hi = np.array([b[1] for b in self.box])
        ch = self.chart
        out = []
        while len(out) < n:
            p = lo + (hi - lo) * rng.random(len(lo))
            if ch.contains(p, margin):
                out.append(p)
        return np.array(out)


def diagonal_coframe(model, coefs, radial_index):
    """Natural vierbein rows (a ds, b sigma1, c sigma2, d sigma3)."""

    def coframe(x):
        a, b, c, d = coefs(x)
        E = np.zeros((4, 4), dtype=np.result_type(np.asarray(x), a))
        E[0, radial_index] = a
        E[1] = b * np.asarray(model.sigma[0].comps(x))
        E[2] = c * np.asarray(model.sigma[1].comps(x))
        E[3] = d * np.asarray(model.sigma[2].comps(x))
        return E

    return coframe


def parallel_structures(metric: MetricModel, chart_id):
    """Triplet built from the vierbein: J_i = e0 ^ e_i + e_j ^ e_k.

    For geometries whose frame connection vanishes on one duality side these
    forms are covariantly constant, hence closed and quaternionic.
    """
    from ..forms import KForm

    def comps(x, i):
        E = np.asarray(metric.frame_hint(x))

        def w(a, b):
            return np.outer(E[a], E[b]) - np.outer(E[b], E[a])

        j, k = (i + 1) % 3, (i + 2) % 3
        return w(0, i + 1) + w(j + 1, k + 1)

    return [KForm(2, chart_id, lambda x, _i=i: comps(x, _i)) for i in range(3)]


def rotated_parallel_structures(metric: MetricModel, chart_id, axis, angle):
    """Vierbein triplet with the doublet opposite ``axis`` rotated by angle(x).

    Deformed half-flat metrics carry a pure-gauge connection on the flat
    duality side; undoing it point by point yields the closed triplet.
    """
    from ..forms import KForm

    base = parallel_structures(metric, chart_id)
    j, k = (axis + 1) % 3, (axis + 2) % 3

    def comps(x, i):
        if i == axis:
            return np.asarray(base[axis].comps(x))
        th = angle(x)
        c, s = np.cos(th), np.sin(th)
        Jj, Jk = np.asarray(base[j].comps(x)), np.asarray(base[k].comps(x))
        return c * Jj + s * Jk if i == j else -s * Jj + c * Jk

    return [KForm(2, chart_id, lambda x, _i=i: comps(x, _i)) for i in range(3)]


def metric_from_coframe(name, chart_id, coframe, params, metadata, domain=None):
    def comps(x):
        E = coframe(x)
        return E.T @ E

    return MetricModel(
        name,
        chart_id,
        comps,
        params=params,
        frame_hint=coframe,
        domain=domain,
        metadata=metadata,
    )
