"""Phase-space Poisson brackets and verification of closed bracket tables."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import engine
from .errors import RegistryError
from .flow import Observable, PhasePoint, resolve_observable


def poisson_bracket(A: Observable, B: Observable, z: PhasePoint) -> float:
    """Bracket with the sign convention {A, B} = A_pi B_x - A_x B_pi,
    so the canonical pair gives {x^i, pi_i} = -1."""
    return float(A.grad_pi(z) @ B.grad_x(z) - A.grad_x(z) @ B.grad_pi(z))


def bracket_function(A: Observable, B: Observable):
    """The bracket as a plain function of a phase point (for nesting)."""

    def fn(z):
        return poisson_bracket(A, B, z)

    return fn


def _fd_phase_grad(fn, z: PhasePoint, cfg=engine.FD_CFG):
    """Central-difference gradient of a phase-space scalar in all 8 slots."""
    w = z.flat()

    def f(u):
        return fn(PhasePoint.from_flat(u))

    return np.array([engine.fd_partial(f, w, i, cfg) for i in range(w.size)])


def nested_bracket(A: Observable, inner_fn, z: PhasePoint, cfg=engine.FD_CFG):
    """{A, F} where F is only available as a black-box phase function.

    The inner function is differentiated by real central differences, so the
    result carries FD error (use wider tolerances than for direct brackets).
    """
    n = z.x.size
    dF = _fd_phase_grad(inner_fn, z, cfg)
    return float(A.grad_pi(z) @ dF[:n] - A.grad_x(z) @ dF[n:])


def jacobi_residual(A, B, C, z, cfg=engine.FD_CFG):
    """Cyclic sum {A,{B,C}} + {B,{C,A}} + {C,{A,B}} at a phase point."""
    return (nested_bracket(A, bracket_function(B, C), z, cfg)
            + nested_bracket(B, bracket_function(C, A), z, cfg)
            + nested_bracket(C, bracket_function(A, B), z, cfg))


def leibniz_residual(A, B, C, z):
    """{A, BC} - B{A,C} - {A,B}C at a phase point."""
    BC = Observable(f"{B.name}*{C.name}",
                    lambda x, pi: B.fn(x, pi) * C.fn(x, pi))
    return (poisson_bracket(A, BC, z)
            - B(z) * poisson_bracket(A, C, z)
            - poisson_bracket(A, B, z) * C(z))


# ---------------------------------------------------------------------------
# Bracket tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BracketEntry:
    """One closed bracket: {a, b} equals a polynomial in registry names,
    stored as monomial-tuple -> coefficient (empty dict means zero)."""

    a: str
    b: str
    rhs: dict


@dataclass
class BracketTable:
    name: str
    entries: list = field(default_factory=list)


def evaluate_polynomial(rhs, registry, z: PhasePoint) -> float:
    total = 0.0
    for names, coeff in rhs.items():
        term = coeff
        for nm in names:
            term *= resolve_observable(registry, nm)(z)
        total += term
    return total


def verify_bracket_table(table: BracketTable, registry, points, tol=1e-8):
    """Max residual |{A,B}(z) - rhs(z)| per entry over the sampled points."""
    rows = []
    for e in table.entries:
        A = resolve_observable(registry, e.a)
        B = resolve_observable(registry, e.b)
        res = 0.0
        for z in points:
            res = max(res, abs(poisson_bracket(A, B, z)
                               - evaluate_polynomial(e.rhs, registry, z)))
        rows.append({"a": e.a, "b": e.b, "residual": res,
                     "passed": bool(res < tol)})
    return rows


def involution_check(names, registry, points, tol=1e-8):
    """All pairwise brackets of the named set vanish at the sampled points."""
    k = len(names)
    residuals = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            A = resolve_observable(registry, names[i])
            B = resolve_observable(registry, names[j])
            r = max(abs(poisson_bracket(A, B, z)) for z in points)
            residuals[i, j] = residuals[j, i] = r
    return bool(residuals.max() < tol), residuals


def _listed_half_flat_entries():
    """The displayed closed brackets of the nine-observable algebra."""
    E = BracketEntry
    return [
        # momenta algebra and the action of the planar rotation charge
        E("K1", "K2", {}),
        E("K2", "K3", {("K1",): 1.0}),
        E("K3", "K1", {}),
        E("K4", "K1", {}),
        E("K4", "K2", {("K3",): -1.0}),
        E("K4", "K3", {("K2",): 1.0}),
        # action of the isometry charges on the quadratic integrals
        E("K2", "L2", {("H",): -1.0}),
        E("K2", "L4", {("L2",): -1.0}),
        E("K3", "L3", {("H",): -1.0}),
        E("K3", "L4", {("L3",): -1.0}),
        E("K4", "L2", {("L3",): -1.0}),
        E("K4", "L3", {("L2",): 1.0}),
        # closure of the quadratic integrals on cubic combinations
        E("L1", "L2", {("K2", "H"): -2.0, ("K1", "L3"): 2.0}),
        E("L1", "L3", {("K3", "H"): -2.0, ("K1", "L2"): -2.0}),
        E("L1", "L4", {("K2", "L2"): -2.0, ("K3", "L3"): -2.0}),
        E("L2", "L3", {("K1", "L1"): 2.0}),
        E("L2", "L4", {("K2", "L1"): 2.0}),
        E("L3", "L4", {("K3", "L1"): 2.0}),
    ]


def w_algebra_table() -> BracketTable:
    """Complete table over {H, K1..K4, L1..L4}: the displayed closed
    brackets plus every omitted pair, which must bracket to zero."""
    names = ["H", "K1", "K2", "K3", "K4", "L1", "L2", "L3", "L4"]
    entries = _listed_half_flat_entries()
    listed = {frozenset((e.a, e.b)) for e in entries}
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            key = frozenset((names[i], names[j]))
            if key not in listed:
                entries.append(BracketEntry(names[i], names[j], {}))
    return BracketTable("w-algebra", entries)


# Default fit bases for the nine-observable algebra.  The full monomial
# lists are rank-deficient because of two identities that hold for any
# metric on this chart,
#     L1 = K2^2 + K3^2 - 2 K1 K4,
#     K4 H + K1 L4 - K2 L3 + K3 L2 = 0,
# so the bases below exclude one representative of each relation while
# keeping every monomial that appears in the closed tables.
DEGREE2_BASIS = (
    ("H",), ("L1",), ("L2",), ("L3",), ("L4",),
    ("K1", "K1"), ("K1", "K2"), ("K1", "K3"), ("K2", "K3"),
)
DEGREE3_BASIS = tuple(
    [(k, "H") for k in ("K1", "K2", "K3")]
    + [(k, l) for k in ("K1", "K2", "K3", "K4")
       for l in ("L1", "L2", "L3", "L4")]
)


def fit_structure_coefficients(a, b, basis, registry, points):
    """Least-squares expansion of {a, b} over monomials of registry names.

    ``basis`` is a list of monomial tuples; returns the fitted coefficient
    per monomial and the fit residual (rms of the unexplained part).
    """
    A = resolve_observable(registry, a)
    B = resolve_observable(registry, b)
    rhs = np.array([poisson_bracket(A, B, z) for z in points])
    M = np.column_stack([
        [evaluate_polynomial({mono: 1.0}, registry, z) for z in points]
        for mono in basis
    ])
    coeffs, _, rank, _ = np.linalg.lstsq(M, rhs, rcond=None)
    if rank < len(basis):
        raise RegistryError(
            f"fit basis for {{{a},{b}}} is degenerate on the sample "
            f"(rank {rank} < {len(basis)})")
    resid = float(np.sqrt(np.mean((M @ coeffs - rhs) ** 2)))
    return dict(zip(basis, coeffs)), resid


def phase_samples(entry, n, rng, momentum_scale=1.0):
    """Random phase points in a catalog entry's coordinate box with momenta
    uniform in [-momentum_scale, momentum_scale]."""
    xs = entry.sample_points(n, rng)
    return [PhasePoint(x, rng.uniform(-momentum_scale, momentum_scale, size=4))
            for x in xs]
