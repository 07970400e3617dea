"""Geodesic Hamiltonians, symplectic time stepping, and drift monitoring."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from . import engine
from .errors import RegistryError, StepFailureError


@dataclass(frozen=True)
class PhasePoint:
    """A point of phase space: coordinates and conjugate momenta."""

    x: np.ndarray
    pi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "pi", np.asarray(self.pi, dtype=float))

    def flat(self):
        return np.concatenate([self.x, self.pi])

    @staticmethod
    def from_flat(w):
        w = np.asarray(w)
        n = w.size // 2
        return PhasePoint(np.real(w[:n]), np.real(w[n:]))


class Observable:
    """A phase-space function with gradients in both arguments.

    ``fn(x, pi)`` must accept complex coordinates/momenta so the complex-step
    derivative applies; closed-form gradients ``dx``/``dpi`` take priority
    when supplied.  ``momentum_degree`` records homogeneity in the momenta
    (None when the observable is not homogeneous).
    """

    def __init__(self, name, fn, momentum_degree=None, dx=None, dpi=None):
        self.name = name
        self.fn = fn
        self.momentum_degree = momentum_degree
        self._dx = dx
        self._dpi = dpi

    def __call__(self, z: PhasePoint):
        return float(np.real(self.fn(z.x, z.pi)))

    def value(self, x, pi):
        return self.fn(x, pi)

    def grad_x(self, z: PhasePoint):
        if self._dx is not None:
            return np.asarray(self._dx(z.x, z.pi))
        return np.real(engine.cs_grad(lambda x: self.fn(x, z.pi), z.x))

    def grad_pi(self, z: PhasePoint):
        if self._dpi is not None:
            return np.asarray(self._dpi(z.x, z.pi))
        return np.real(engine.cs_grad(lambda p: self.fn(z.x, p), z.pi))

    def __repr__(self):
        return f"Observable({self.name!r}, degree={self.momentum_degree})"


def hamiltonian(metric, cfg=engine.DEFAULT_CFG) -> Observable:
    """Geodesic Hamiltonian H = (1/2) g^{ij} pi_i pi_j of a metric model.

    The coordinate gradient uses the closed identity
    d(g^{-1}) = -g^{-1} (dg) g^{-1} on the metric's partials, so both
    gradients are exact whenever the metric's derivative route is.
    """

    def fn(x, pi):
        g = np.asarray(metric.components(x))
        return 0.5 * pi @ np.linalg.inv(g) @ pi

    def dx(x, pi):
        gi = metric.ginv(x)
        dg = metric.partials(x, cfg)
        u = gi @ pi
        return -0.5 * np.einsum("i,kij,j->k", u, dg, u)

    def dpi(x, pi):
        return metric.ginv(x) @ pi

    return Observable(f"H[{metric.name}]", fn, momentum_degree=2,
                      dx=dx, dpi=dpi)


def momentum_observable(name, index) -> Observable:
    def fn(x, pi, _i=index):
        return pi[_i]

    def dx(x, pi):
        return np.zeros(x.shape[0])

    def dpi(x, pi, _i=index):
        e = np.zeros(pi.shape[0])
        e[_i] = 1.0
        return e

    return Observable(name, fn, momentum_degree=1, dx=dx, dpi=dpi)


@dataclass
class FlowTrajectory:
    """An integrated orbit: strictly increasing times and phase samples."""

    times: np.ndarray
    samples: list
    integrator: str
    step: float
    newton_tol: float = 1e-12
    newton_max_iter: int = 50
    metric_name: str = ""
    params: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.samples)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["time", "x0", "x1", "x2", "x3",
                        "pi0", "pi1", "pi2", "pi3"])
            for t, z in zip(self.times, self.samples):
                w.writerow([f"{t:.12g}"] + [f"{v:.17g}" for v in z.flat()])

    def manifest(self):
        return {
            "metric": self.metric_name,
            "params": dict(self.params),
            "integrator": self.integrator,
            "step": self.step,
            "n_samples": len(self.samples),
            "newton_tol": self.newton_tol,
            "newton_max_iter": self.newton_max_iter,
        }

    def write_manifest(self, path):
        with open(path, "w") as fh:
            json.dump(self.manifest(), fh, indent=2)


def hamiltonian_field(H: Observable, z: PhasePoint):
    """Canonical vector field: xdot = dH/dpi, pidot = -dH/dx."""
    return np.concatenate([H.grad_pi(z), -H.grad_x(z)])


def _midpoint_step(H, z, dt, tol, max_iter, step_index):
    w = hamiltonian_field(H, z)
    z0 = z.flat()
    residual = np.inf
    for _ in range(max_iter):
        mid = PhasePoint.from_flat(z0 + 0.5 * dt * w)
        w_new = hamiltonian_field(H, mid)
        residual = dt * float(np.max(np.abs(w_new - w)))
        w = w_new
        if residual < tol:
            return PhasePoint.from_flat(z0 + dt * w), residual
    raise StepFailureError(step_index, residual)


def _rk4_step(H, z, dt):
    z0 = z.flat()

    def f(w):
        return hamiltonian_field(H, PhasePoint.from_flat(w))

    k1 = f(z0)
    k2 = f(z0 + 0.5 * dt * k1)
    k3 = f(z0 + 0.5 * dt * k2)
    k4 = f(z0 + dt * k3)
    return PhasePoint.from_flat(z0 + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4))


def integrate(H: Observable, z0: PhasePoint, dt, n_steps,
              method="implicit-midpoint", newton_tol=1e-12,
              newton_max_iter=50, keep_every=1, metric_name="",
              params=None) -> FlowTrajectory:
    """Integrate the canonical flow of ``H`` from ``z0``.

    ``implicit-midpoint`` solves each step to residual ``newton_tol`` (or
    raises ``StepFailureError``); ``rk4-reference`` is the explicit check
    integrator.  Every ``keep_every``-th sample is stored, plus the endpoint.
    """
    if method not in ("implicit-midpoint", "rk4-reference"):
        raise RegistryError(f"unknown integrator {method!r}")
    times, samples = [0.0], [z0]
    z = z0
    for n in range(1, n_steps + 1):
        if method == "implicit-midpoint":
            z, _ = _midpoint_step(H, z, dt, newton_tol, newton_max_iter, n)
        else:
            z = _rk4_step(H, z, dt)
        if n % keep_every == 0 or n == n_steps:
            times.append(n * dt)
            samples.append(z)
    return FlowTrajectory(np.asarray(times), samples, method, dt,
                          newton_tol, newton_max_iter, metric_name,
                          dict(params or {}))


def conservation_report(traj: FlowTrajectory, observables) -> dict:
    """Relative drift max |O(t) - O(0)| / max(1, |O(0)|) per observable."""
    out = {}
    for obs in observables:
        vals = np.array([obs(z) for z in traj.samples])
        out[obs.name] = float(np.max(np.abs(vals - vals[0]))
                              / max(1.0, abs(vals[0])))
    return out


def degree_scaling_residual(obs: Observable, z: PhasePoint, scale=1.7):
    """Residual of eval(x, t pi) = t^degree eval(x, pi) for homogeneous
    observables; None when no degree is declared."""
    if obs.momentum_degree is None:
        return None
    a = obs.fn(z.x, scale * z.pi)
    b = scale**obs.momentum_degree * obs.fn(z.x, z.pi)
    return float(abs(a - b) / max(1.0, abs(b)))


# ---------------------------------------------------------------------------
# Observable registry: the closed-form first integrals per catalog entry
# ---------------------------------------------------------------------------

def _half_flat_registry(metric):
    """First-integral set of the half-flat metric on the chart (t, s, y, z):
    the Hamiltonian, four momenta linear in pi, and four quadratic ones."""

    def H(x, pi):
        t, s, y, z = x
        pt, ps, py, pz = pi
        return ((pz - y * pt)**2 + s**2 * pt**2 + ps**2 + py**2) / (2 * s)

    def K2(x, pi):
        return pi[2] - x[3] * pi[0]

    def K4(x, pi):
        t, s, y, z = x
        pt, ps, py, pz = pi
        return y * pz - z * py - 0.5 * (y**2 - z**2) * pt

    def L1(x, pi):
        return pi[2]**2 + (pi[3] - x[2] * pi[0])**2

    def L2(x, pi):
        t, s, y, z = x
        pt, ps, py, pz = pi
        return ps * py - s * pt * (pz - y * pt) - y * H(x, pi)

    def L3(x, pi):
        t, s, y, z = x
        pt, ps, py, pz = pi
        return ps * (pz - y * pt) + s * pt * py - z * H(x, pi)

    def L4(x, pi):
        t, s, y, z = x
        return (s * L1(x, pi) - y * L2(x, pi) - z * L3(x, pi)
                - 0.5 * (y**2 + z**2) * H(x, pi))

    return {
        "H": hamiltonian(metric),
        "K1": momentum_observable("K1", 0),
        "K2": Observable("K2", K2, momentum_degree=1),
        "K3": momentum_observable("K3", 3),
        "K4": Observable("K4", K4, momentum_degree=1),
        "L1": Observable("L1", L1, momentum_degree=2),
        "L2": Observable("L2", L2, momentum_degree=2),
        "L3": Observable("L3", L3, momentum_degree=2),
        "L4": Observable("L4", L4, momentum_degree=2),
    }


def _parabolic_registry(metric):
    """Separation set of the parabolic three-parameter family on the chart
    (t, xi, eta, z): Hamiltonian, two momenta, and the quadratic constant."""
    v0, a, b = metric.params["v0"], metric.params["a"], metric.params["b"]
    H = hamiltonian(metric)

    def S(x, pi):
        xi = x[1]
        pt, pxi = pi[0], pi[1]
        return (pxi**2 + (xi * pi[3] - b * pt)**2
                + v0 * (v0 * xi**2 + 2 * a * xi) * pt**2
                - 2 * (v0 * xi**2 + a * xi) * H.value(x, pi))

    return {
        "H": H,
        "Pi_t": momentum_observable("Pi_t", 0),
        "Pi_z": momentum_observable("Pi_z", 3),
        "S": Observable("S", S, momentum_degree=2),
    }


def _biaxial_registry(metric):
    """Separation constant of the diagonal bi-axial family on (t, s, y, z)."""

    def L(x, pi):
        return pi[2]**2 + (pi[3] - x[2] * pi[0])**2

    return {
        "H": hamiltonian(metric),
        "Pi_t": momentum_observable("Pi_t", 0),
        "Pi_z": momentum_observable("Pi_z", 3),
        "L": Observable("L", L, momentum_degree=2),
    }


_REGISTRY_BUILDERS = {
    "g_II": _half_flat_registry,
    "nd1": _parabolic_registry,
    "hj1-generic": _biaxial_registry,
}


def observable_registry(metric) -> dict:
    """Named first integrals for a catalog metric; always includes H and the
    coordinate momenta, plus the metric's documented conserved set."""
    base = {f"Pi_{i}": momentum_observable(f"Pi_{i}", i) for i in range(4)}
    builder = _REGISTRY_BUILDERS.get(metric.name)
    if builder is not None:
        base.update(builder(metric))
    else:
        base["H"] = hamiltonian(metric)
    return base


def resolve_observable(registry, name) -> Observable:
    if name not in registry:
        raise RegistryError(
            f"observable {name!r} not registered "
            f"(have: {', '.join(sorted(registry))})")
    return registry[name]
