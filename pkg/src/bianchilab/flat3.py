"""Flat 3-metrics in (possibly curvilinear) coordinates and 3D Hodge duality."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from . import engine
from .errors import SingularMetricError
from .forms import KForm, antisymmetrize

_EPS3 = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS3[_i, _j, _k] = 1.0
    _EPS3[_i, _k, _j] = -1.0


@dataclass
class Flat3Metric:
    """A flat 3-metric given componentwise; flatness is a testable invariant."""

    comps: object  # callable coords(3) -> symmetric 3x3
    orientation_sign: float = 1.0
    chart_id: str = "three-space"
    cartesian_map: object = None  # optional coords(3) -> (X, Y, Z)

    def g(self, x):
        return np.asarray(self.comps(x))

    def inv(self, x):
        g = self.g(x)
        if np.iscomplexobj(g):
            return np.linalg.inv(g)
        cond = np.linalg.cond(g)
        if not np.isfinite(cond) or cond > 1e12:
            raise SingularMetricError(f"3-metric singular at {x} (cond {cond:.2e})")
        return np.linalg.inv(g)

    def sqrt_det(self, x):
        return np.sqrt(np.linalg.det(self.g(x)))


def cartesian3():
    return Flat3Metric(lambda x: np.eye(3), 1.0, "cartesian3")


def pullback_flat3(chart_id, to_cartesian, orientation_sign=1.0):
    """Flat metric induced on a curvilinear chart by a map to (X, Y, Z)."""

    def comps(x):
        J = np.array(
            [engine.cs_partial(to_cartesian, np.real(x), i) for i in range(3)]
        ).T if not np.iscomplexobj(x) else _complex_jacobian(to_cartesian, x)
        return J.T @ J

    return Flat3Metric(comps, orientation_sign, chart_id, cartesian_map=to_cartesian)


def _complex_jacobian(F, x, h=1e-7):
    # central differences in the complex plane; used only when the chain is
    # itself being complex-stepped from outside
    n = len(x)
    cols = []
    for i in range(n):
        xp, xm = np.array(x, dtype=complex), np.array(x, dtype=complex)
        xp[i] += h
        xm[i] -= h
        cols.append((np.asarray(F(xp)) - np.asarray(F(xm))) / (2 * h))
    return np.array(cols).T


def hodge3(omega: KForm, gamma: Flat3Metric, x):
    """3D Hodge dual of a 1- or 2-form; returns component array at ``x``."""
    A = np.asarray(omega.comps(x))
    ginv = gamma.inv(x)
    vol = gamma.orientation_sign * np.sqrt(np.linalg.det(np.asarray(gamma.comps(x))))
    if omega.degree == 1:
        up = ginv @ A
        return vol * np.einsum("ijk,k->ij", _EPS3, up)
    if omega.degree == 2:
        up = ginv @ A @ ginv.T
        return 0.5 * vol * np.einsum("ijk,ij->k", _EPS3, up)
    raise ValueError("hodge3 handles degrees 1 and 2 only")


def hodge3_form(omega: KForm, gamma: Flat3Metric) -> KForm:
    deg = {1: 2, 2: 1}[omega.degree]
    return KForm(deg, omega.chart_id, lambda x: hodge3(omega, gamma, x))


def laplace_beltrami(V, gamma: Flat3Metric, x, cfg=engine.DEFAULT_CFG):
    """Laplacian of ``V`` with respect to ``gamma`` at ``x``.

    Inner gradient is exact (closed-form partials or complex step); the
    divergence is a single central difference of the exact flux.
    """

    def flux(y):
        g = np.asarray(gamma.comps(y))
        ginv = np.linalg.inv(g)
        dV = engine.grad(V, y, cfg)
        return np.sqrt(np.linalg.det(g)) * (ginv @ dV)

    x = np.asarray(x, dtype=float)
    div = 0.0
    for i in range(3):
        div += engine.fd_partial(
            lambda y, _i=i: flux(y)[_i], x, i, cfg, step=cfg.steps(x)[i]
        )
    g = np.asarray(gamma.comps(x))
    return div / np.sqrt(np.linalg.det(g))


def theta_z_from_potential(V, gamma: Flat3Metric, sign, base_point, cfg=engine.DEFAULT_CFG,
                           tol=1e-10):
    """Connection 1-form Theta = f(u, v) dz for a z-invariant harmonic ``V``.

    Solves d(Theta) = sign * (star dV) by line quadrature from ``base_point``
    in the (u, v) plane; path independence holds iff ``V`` is harmonic.
    """
    base = np.asarray(base_point, dtype=float)

    def star_dv(y):
        dV = engine.grad(V, y, cfg)
        omega = KForm(1, gamma.chart_id, lambda _y, _d=dV: _d)
        return hodge3(omega, gamma, y)  # 2-form components

    def theta_z(x, via=None):
        x = np.asarray(x, dtype=float)
        waypoints = [base] + ([np.asarray(via, dtype=float)] if via is not None else []) + [x]
        total = 0.0
        for a, b in zip(waypoints[:-1], waypoints[1:]):
            d = b - a

            def integrand(t):
                y = a + t * d
                S = star_dv(y)
                # dTheta = d(theta_z) ^ dz  =>  d(theta_z)_u = sign * S[u, z]
                return sign * (S[0, 2] * d[0] + S[1, 2] * d[1])

            val, _err = quad(integrand, 0.0, 1.0, epsabs=tol, epsrel=tol, limit=200)
            total += val
        return total

    def comps(x, via=None):
        out = np.zeros(3)
        out[2] = theta_z(x, via=via)
        return out

    form = KForm(1, gamma.chart_id, comps)
    form.theta_z = theta_z
    return form
