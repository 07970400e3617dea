"""Gibbons-Hawking-type metrics from a harmonic potential on flat 3-space."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import engine
from .errors import NotHarmonicError, SignatureError
from .flat3 import Flat3Metric, hodge3, laplace_beltrami
from .forms import KForm, exterior_derivative
from .metric import MetricModel


@dataclass
class MultiCentreData:
    """Data for the fibred form (1/V)(dt + theta)^2 + V * gamma0.

    ``sign`` records the orientation in star(d theta) = sign * dV.  ``theta``
    is a 1-form on the 3-chart; ``cartesian_map`` optionally sends the chart
    to flat (X, Y, Z) coordinates.
    """

    name: str
    V: object  # coords(3) -> real, complex-safe
    theta: KForm
    sign: int
    gamma0: Flat3Metric
    cartesian_map: object = None
    params: dict = field(default_factory=dict)

    def monopole_residual(self, x, cfg=engine.DEFAULT_CFG):
        """Max component of star(d theta) - sign * dV at ``x``."""
        dth = exterior_derivative(self.theta, cfg)
        star = hodge3(dth, self.gamma0, np.asarray(x, dtype=float))
        dv = engine.grad(self.V, x, cfg)
        return float(np.max(np.abs(star - self.sign * dv)))

    def harmonic_residual(self, x, cfg=engine.DEFAULT_CFG):
        return abs(laplace_beltrami(self.V, self.gamma0, x, cfg))


def multicentre_build(mc: MultiCentreData, sample_points=(), tol=1e-8,
                      harmonic_tol=1e-6, name=None) -> MetricModel:
    """Assemble the 4-metric on the chart (t, x1, x2, x3).

    ``sample_points`` are 3-chart points where the construction gates run:
    positivity of V, harmonicity, and the monopole equation.
    """
    for p in sample_points:
        v = float(np.real(mc.V(np.asarray(p, dtype=float))))
        if v <= 0:
            raise SignatureError(f"{mc.name}: V = {v:.3e} <= 0 at {p}")
        hres = mc.harmonic_residual(p)
        if hres > harmonic_tol:
            raise NotHarmonicError(f"{mc.name}: Laplacian residual {hres:.3e} at {p}")
        mres = mc.monopole_residual(p)
        if mres > tol:
            raise NotHarmonicError(
                f"{mc.name}: monopole equation residual {mres:.3e} at {p}"
            )

    def comps(x):
        x3 = np.asarray(x)[1:]
        V = mc.V(x3)
        th = np.asarray(mc.theta.comps(x3))
        gamma = np.asarray(mc.gamma0.comps(x3))
        g = np.zeros((4, 4), dtype=np.result_type(V, th, gamma))
        g[0, 0] = 1.0 / V
        g[0, 1:] = th / V
        g[1:, 0] = th / V
        g[1:, 1:] = np.outer(th, th) / V + V * gamma
        return g

    def frame(x):
        x3 = np.real(np.asarray(x))[1:]
        V = float(np.real(mc.V(x3)))
        th = np.real(np.asarray(mc.theta.comps(x3)))
        gamma = np.real(np.asarray(mc.gamma0.comps(x3)))
        E = np.zeros((4, 4))
        E[0, 0] = 1.0 / np.sqrt(V)
        E[0, 1:] = th / np.sqrt(V)
        E[1:, 1:] = np.sqrt(V) * np.linalg.cholesky(gamma).T
        return E

    return MetricModel(
        name=name or f"mc[{mc.name}]",
        chart_id=f"mc-{mc.theta.chart_id}",
        components=comps,
        params=dict(mc.params),
        frame_hint=frame,
        metadata={
            "family": "multicentre",
            "hyperkahler": True,
            "sign": mc.sign,
            "frame_complex_safe": False,
        },
    )
