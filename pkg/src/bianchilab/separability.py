"""Separability diagnostics: Levi-Civita conditions, Hamilton-Jacobi
separation constants, and the minimal-quantization obstruction tensor."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import engine
from .curvature import christoffel, ricci
from .errors import FormError, PreconditionError
from .flow import Observable, PhasePoint, hamiltonian
from .poisson import poisson_bracket
from .symmetry import killing_stackel_residual


# ---------------------------------------------------------------------------
# Levi-Civita conditions
# ---------------------------------------------------------------------------

def _second_mixed(H: Observable, z: PhasePoint, grad, slot, index, cfg):
    """Derivative of a first-derivative component along one phase slot.

    ``grad`` is "x" or "pi" (which gradient to read), ``slot`` is "x" or
    "pi" (which variable to move).  The inner gradient is exact where the
    observable provides one, so only the outer central difference matters.
    """

    def read(zz):
        g = H.grad_x(zz) if grad == "x" else H.grad_pi(zz)
        return g

    if slot == "x":
        def f(u):
            return read(PhasePoint(u, z.pi))
        base = z.x
    else:
        def f(u):
            return read(PhasePoint(z.x, u))
        base = z.pi
    return np.asarray(engine.fd_partial(f, base, index, cfg))


def levi_civita_residual(H: Observable, z: PhasePoint, pair, cfg=engine.FD_CFG):
    """Four-term necessary condition for additive separation in the chart.

    For the fixed pair (i, j), i != j (no summation):

        H_{pi_i} H_{pi_j} H_{x^i x^j} - H_{pi_i} H_{x^j} H_{x^i pi_j}
        - H_{x^i} H_{pi_j} H_{pi_i x^j} + H_{x^i} H_{x^j} H_{pi_i pi_j}.
    """
    i, j = pair
    if i == j:
        raise PreconditionError("separability pair must have distinct indices")
    Hx, Hp = H.grad_x(z), H.grad_pi(z)
    Hxx_ij = _second_mixed(H, z, "x", "x", i, cfg)[j]
    Hxp_ij = _second_mixed(H, z, "pi", "x", i, cfg)[j]   # d2H / dx^i dpi_j
    Hpx_ij = _second_mixed(H, z, "pi", "x", j, cfg)[i]   # d2H / dpi_i dx^j
    Hpp_ij = _second_mixed(H, z, "pi", "pi", i, cfg)[j]
    return float(Hp[i] * Hp[j] * Hxx_ij - Hp[i] * Hx[j] * Hxp_ij
                 - Hx[i] * Hp[j] * Hpx_ij + Hx[i] * Hx[j] * Hpp_ij)


@dataclass
class SeparabilityReport:
    metric_name: str
    chart_id: str
    pair_residuals: dict = field(default_factory=dict)  # (q, i, j) -> max res
    q_values: tuple = ()
    verdict: str = ""
    failing_pairs: list = field(default_factory=list)
    conclusion: str = ""

    def to_json(self):
        return json.dumps({
            "metric": self.metric_name,
            "chart": self.chart_id,
            "q_values": list(self.q_values),
            "residuals": [
                {"q": q, "pair": [i, j], "max_residual": r}
                for (q, i, j), r in sorted(self.pair_residuals.items())
            ],
            "verdict": self.verdict,
            "failing_pairs": [list(p) for p in self.failing_pairs],
            "conclusion": self.conclusion,
        }, indent=2)

    def summary(self):
        lines = [f"{self.metric_name} ({self.chart_id}): {self.verdict}"]
        for (q, i, j), r in sorted(self.pair_residuals.items()):
            lines.append(f"  q={q:g} pair=({i},{j}) residual={r:.3e}")
        if self.conclusion:
            lines.append(f"  {self.conclusion}")
        return "\n".join(lines)


def lc_scan(metric, q_values, points, rng, pairs=None, n_momenta=6,
            momentum_scale=1.0, tol=1e-6) -> SeparabilityReport:
    """Levi-Civita scan of a metric's geodesic Hamiltonian in its own chart.

    The first coordinate is treated as the cyclic one carrying the charge q
    (its momentum is pinned to q); the remaining momenta are sampled.  The
    verdict is "separating" only when every pair passes at every q.
    """
    H = hamiltonian(metric)
    if pairs is None:
        pairs = [(i, j) for i in range(1, 4) for j in range(i + 1, 4)]
    report = SeparabilityReport(metric.name, metric.chart_id,
                                q_values=tuple(q_values))
    for q in q_values:
        for (i, j) in pairs:
            worst = 0.0
            for x in points:
                for _ in range(n_momenta):
                    pi = rng.uniform(-momentum_scale, momentum_scale, size=4)
                    pi[0] = q
                    z = PhasePoint(np.asarray(x, dtype=float), pi)
                    worst = max(worst, abs(levi_civita_residual(H, z, (i, j))))
            report.pair_residuals[(float(q), i, j)] = worst
    failing = sorted({(i, j) for (q, i, j), r in report.pair_residuals.items()
                      if r > tol})
    report.failing_pairs = failing
    report.verdict = "separating" if not failing else "not separating"
    if failing:
        report.conclusion = (
            "these are not separation coordinates for the "
            "Hamilton-Jacobi equation (failing pairs: "
            + ", ".join(map(str, failing)) + ")")
    return report


_CUBIC_MONOS = [(a, b, c) for a in range(4) for b in range(a, 4)
                for c in range(b, 4) if a > 0]


def fit_lc_constraint(metric, x, pair, q, rng, n_momenta=40,
                      momentum_scale=1.0):
    """Cubic-in-momenta structure of the first-order-in-q Levi-Civita defect.

    At a fixed spatial point, the odd-in-q part of the pair residual is
    fitted over all cubic monomials in the spatial momenta; returns the
    monomial -> coefficient map (keys are index triples).
    """
    H = hamiltonian(metric)
    rows, rhs = [], []
    for _ in range(n_momenta):
        pi = rng.uniform(-momentum_scale, momentum_scale, size=4)
        pi_p, pi_m = pi.copy(), pi.copy()
        pi_p[0], pi_m[0] = q, -q
        rp = levi_civita_residual(H, PhasePoint(x, pi_p), pair)
        rm = levi_civita_residual(H, PhasePoint(x, pi_m), pair)
        rhs.append((rp - rm) / (2 * q))
        rows.append([pi[a] * pi[b] * pi[c] for (a, b, c) in _CUBIC_MONOS])
    coeffs, _, _, _ = np.linalg.lstsq(np.asarray(rows), np.asarray(rhs),
                                      rcond=None)
    fit = np.asarray(rows) @ coeffs
    resid = float(np.sqrt(np.mean((fit - np.asarray(rhs)) ** 2)))
    return dict(zip(_CUBIC_MONOS, coeffs)), resid


# ---------------------------------------------------------------------------
# Bi-axial separation constant
# ---------------------------------------------------------------------------

def _check_biaxial_form(metric, x, tol=1e-10):
    """The chart must carry A^2 ds^2 + B^2 (dt + y dz)^2 + C^2 (dy^2 + dz^2)
    in the coordinate order (t, s, y, z)."""
    g = metric.g(np.asarray(x, dtype=float))
    y = float(x[2])
    off = [g[0, 1], g[0, 2], g[1, 2], g[1, 3], g[2, 3]]
    checks = [
        abs(g[0, 3] - g[0, 0] * y),
        abs((g[3, 3] - g[0, 0] * y**2) - g[2, 2]),
        max(abs(v) for v in off),
    ]
    if max(checks) > tol * max(1.0, float(np.abs(g).max())):
        raise FormError(
            f"{metric.name}: not of diagonal bi-axial form at {np.asarray(x)}")


def hj_separation_constant(metric, z: PhasePoint, tol=1e-8):
    """Value of the separation constant L = pi_y^2 + (pi_z - y pi_t)^2 and
    the conservation cross-check {H, L} at the phase point."""
    _check_biaxial_form(metric, z.x)

    def L_fn(x, pi):
        return pi[2] ** 2 + (pi[3] - x[2] * pi[0]) ** 2

    L = Observable("L", L_fn, momentum_degree=2)
    H = hamiltonian(metric)
    bracket = poisson_bracket(H, L, z)
    if abs(bracket) > tol:
        raise PreconditionError(
            f"{metric.name}: separation constant not conserved "
            f"({{H,L}} = {bracket:.3e})")
    return L(z), bracket


# ---------------------------------------------------------------------------
# Quantization obstruction
# ---------------------------------------------------------------------------

@dataclass
class AnomalyTensor:
    """Obstruction to minimal quantization of a quadratic integral: the
    antisymmetric pairing of the tensor with the Ricci endomorphism, and
    its covariant divergence current."""

    B: np.ndarray  # B^{ij}, antisymmetric
    A: np.ndarray  # (2/3) nabla_i B^{ij}


def quantum_anomaly(metric, K_lower, x, cfg=engine.DEFAULT_CFG,
                    check=True, check_tol=1e-6) -> AnomalyTensor:
    """Anomaly tensor B^{ij} = -K^{l[i} Ric_l^{j]} and its current.

    ``K_lower`` maps coords -> lowered symmetric tensor; with ``check`` the
    tensor must satisfy the Killing-Stackel equation at the point.
    """
    x = np.asarray(x, dtype=float)
    if check:
        res = killing_stackel_residual(metric, K_lower, x, cfg)
        if float(np.max(np.abs(res))) > check_tol:
            raise PreconditionError(
                f"{metric.name}: tensor fails the Killing-Stackel "
                f"equation at {x}")

    def B_field(y):
        gi = metric.ginv(y)
        K_up = gi @ np.asarray(K_lower(y)) @ gi
        ric_mixed = np.asarray(ricci(metric, y, cfg)[0]) @ gi  # Ric_l^j
        M = K_up.T @ ric_mixed                              # K^{li} Ric_l^j
        return -0.5 * (M - M.T)

    B = B_field(x)
    gamma = christoffel(metric, x, cfg)
    dB = engine.array_partials(B_field, x, engine.FD_CFG, domain=metric.domain)
    # divergence of an antisymmetric (2,0) tensor: the second connection
    # term cancels, leaving the trace of the first
    div = np.einsum("iij->j", dB) + np.einsum("iil,lj->j", gamma, B)
    return AnomalyTensor(B=B, A=(2.0 / 3.0) * div)
