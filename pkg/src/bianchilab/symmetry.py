"""Residual checkers for isometries, Killing-Yano/Stackel tensors,
complex-structure triplets, holomorphy types, and moment maps."""

from __future__ import annotations

import numpy as np

from . import engine
from .curvature import christoffel
from .errors import PreconditionError
from .forms import KForm
from .metric import MetricModel, VectorField

_EPS3 = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS3[_i, _j, _k] = 1.0
    _EPS3[_i, _k, _j] = -1.0

# 2-forms and symmetric tensors are often assembled through non-analytic
# steps (real/imag parts of phases), so their derivatives default to
# central differences; vector fields and metrics use the exact scheme.
_FORM_CFG = engine.FD_CFG


def _dfield(f, x, cfg):
    """d_k T[...] for an array-valued field, with the given scheme."""
    return engine.array_partials(f, np.asarray(x, dtype=float), cfg)


# ---------------------------------------------------------------------------
# Killing vectors
# ---------------------------------------------------------------------------

def lie_derivative_metric(metric: MetricModel, xi: VectorField, x,
                          cfg=engine.DEFAULT_CFG):
    """(Lie_xi g)_ij from the definition; no connection required."""
    x = np.asarray(x, dtype=float)
    dg = metric.partials(x, cfg)  # dg[k, i, j]
    dxi = _dfield(xi.components, x, cfg)  # dxi[k, m] = d_k xi^m
    g = metric.g(x)
    v = np.asarray(xi.components(x))
    return (np.einsum("k,kij->ij", v, dg)
            + np.einsum("im,mj->ij", dxi, g)
            + np.einsum("jm,im->ij", dxi, g))


def lie_bracket(xi: VectorField, eta: VectorField, x, cfg=engine.DEFAULT_CFG):
    """Commutator [xi, eta]^m = xi^k d_k eta^m - eta^k d_k xi^m."""
    x = np.asarray(x, dtype=float)
    dxi = _dfield(xi.components, x, cfg)
    deta = _dfield(eta.components, x, cfg)
    return (np.asarray(xi.components(x)) @ deta
            - np.asarray(eta.components(x)) @ dxi)


def bracket_table_residual(fields, algebra, x, cfg=engine.DEFAULT_CFG):
    """Worst deviation of [L_i, L_j] from the declared structure constants."""
    worst = 0.0
    for (i, j), coeffs in algebra:
        lhs = lie_bracket(fields[i], fields[j], x, cfg)
        rhs = sum((c * np.asarray(fields[k].components(x))
                   for k, c in coeffs.items()), np.zeros(4))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def killing_residual(metric: MetricModel, xi: VectorField, x,
                     cfg=engine.DEFAULT_CFG):
    """Symmetrized covariant derivative of the lowered field."""
    x = np.asarray(x, dtype=float)
    g = metric.g(x)
    dg = metric.partials(x, cfg)
    dxi = _dfield(xi.components, x, cfg)
    v = np.asarray(xi.components(x))
    # d_i xi_j for the lowered field, then subtract the connection term
    dlow = np.einsum("ijk,k->ij", dg, v) + np.einsum("im,jm->ij", dxi, g)
    gam = christoffel(metric, x, cfg)
    low = g @ v
    nabla = dlow - np.einsum("kij,k->ij", gam, low)
    return 0.5 * (nabla + nabla.T)


def is_killing(metric, xi, points, tol=1e-8, cfg=engine.DEFAULT_CFG):
    return all(
        float(np.max(np.abs(killing_residual(metric, xi, p, cfg)))) < tol
        for p in points
    )


# ---------------------------------------------------------------------------
# Killing-Yano and Killing-Stackel tensors
# ---------------------------------------------------------------------------

def _covariant_rank2(metric, comps, x, cfg):
    """nabla_i T_jk for a rank-2 field given by ``comps``."""
    x = np.asarray(x, dtype=float)
    dT = _dfield(comps, x, cfg)  # dT[i, j, k]
    gam = christoffel(metric, x, cfg)
    T = np.asarray(comps(x))
    return (dT
            - np.einsum("lij,lk->ijk", gam, T)
            - np.einsum("lik,jl->ijk", gam, T))


def killing_yano_residual(metric: MetricModel, Y: KForm, x, cfg=_FORM_CFG):
    """Symmetrization nabla_(i Y_j)k; zero iff Y is Killing-Yano at x."""
    T = np.asarray(Y.comps(np.asarray(x, dtype=float)))
    if np.max(np.abs(T + T.T)) > 1e-10 * max(1.0, np.max(np.abs(T))):
        raise PreconditionError("Killing-Yano candidate is not antisymmetric")
    nab = _covariant_rank2(metric, Y.comps, x, cfg)
    return 0.5 * (nab + np.einsum("ijk->jik", nab))


def killing_stackel_residual(metric: MetricModel, comps, x, cfg=_FORM_CFG):
    """Full symmetrization nabla_(i S_jk); zero iff S is Killing-Stackel."""
    T = np.asarray(comps(np.asarray(x, dtype=float)))
    if np.max(np.abs(T - T.T)) > 1e-10 * max(1.0, np.max(np.abs(T))):
        raise PreconditionError("Killing-Stackel candidate is not symmetric")
    nab = _covariant_rank2(metric, comps, x, cfg)
    out = np.zeros_like(nab)
    for perm in ("ijk", "jik", "kji", "ikj", "jki", "kij"):
        out = out + np.einsum(f"ijk->{perm}", nab)
    return out / 6.0


def ks_from_ky(metric: MetricModel, Y: KForm, x):
    """Square of a Killing-Yano 2-form as a symmetric tensor at ``x``."""
    x = np.asarray(x, dtype=float)
    T = np.asarray(Y.comps(x))
    gi = metric.ginv(x)
    return T @ gi @ T.T


# ---------------------------------------------------------------------------
# complex structures
# ---------------------------------------------------------------------------

def complex_structure_check(metric: MetricModel, Js, x, cfg=_FORM_CFG):
    """Residual report for a triplet (or single Kahler form).

    Keys: closure, quaternion, compatibility, covariant; plus the detected
    ``orientation`` sign of the epsilon in the quaternion algebra.
    """
    x = np.asarray(x, dtype=float)
    g = metric.g(x)
    gi = metric.ginv(x)

    closure = 0.0
    for J in Js:
        dT = _dfield(J.comps, x, cfg)  # dT[i, j, k]
        dJ = (np.einsum("ijk->ijk", dT) + np.einsum("jki->ijk", dT)
              + np.einsum("kij->ijk", dT))
        closure = max(closure, float(np.max(np.abs(dJ))))

    E = [gi @ np.asarray(J.comps(x)) for J in Js]

    compat = max(
        float(np.max(np.abs(e.T @ g @ e - g))) for e in E
    )

    orientation = 1.0
    quaternion = 0.0
    if len(Js) == 3:
        def quat_res(sign):
            r = 0.0
            for a in range(3):
                for b in range(3):
                    target = -np.eye(4) if a == b else 0.0
                    target = target + sum(
                        sign * _EPS3[a, b, c] * E[c] for c in range(3)
                    )
                    r = max(r, float(np.max(np.abs(E[a] @ E[b] - target))))
            return r

        rp, rm = quat_res(+1.0), quat_res(-1.0)
        orientation, quaternion = (1.0, rp) if rp <= rm else (-1.0, rm)
    else:
        quaternion = float(np.max(np.abs(E[0] @ E[0] + np.eye(4))))

    covariant = max(
        float(np.max(np.abs(_covariant_rank2(metric, J.comps, x, cfg))))
        for J in Js
    )
    return {
        "closure": closure,
        "quaternion": quaternion,
        "compatibility": compat,
        "covariant": covariant,
        "orientation": orientation,
    }


def lie_derivative_form2(xi: VectorField, J: KForm, x, cfg=_FORM_CFG):
    x = np.asarray(x, dtype=float)
    dT = _dfield(J.comps, x, cfg)
    dxi = _dfield(xi.components, x, cfg)
    T = np.asarray(J.comps(x))
    v = np.asarray(xi.components(x))
    return (np.einsum("m,mjk->jk", v, dT)
            + np.einsum("jm,mk->jk", dxi, T)
            + np.einsum("km,jm->jk", dxi, T))


def holomorphy_type(metric: MetricModel, Js, xi: VectorField, points,
                    tol=1e-7, cfg=_FORM_CFG):
    """Classify a Killing field against a triplet of complex structures."""
    for p in points:
        if float(np.max(np.abs(killing_residual(metric, xi, p)))) > 100 * tol:
            raise PreconditionError(f"{xi.name} is not Killing at {p}")

    lie = [[lie_derivative_form2(xi, J, p, cfg) for J in Js] for p in points]
    scale = max(1.0, max(float(np.max(np.abs(np.asarray(J.comps(p))))) for p in points for J in Js))
    flat = [max(float(np.max(np.abs(lie[ip][a]))) for ip in range(len(points)))
            for a in range(3)]
    if max(flat) < tol * scale:
        return {"type": "tri-holomorphic", "axis": None, "residual": max(flat)}

    for axis in range(3):
        b, c = (axis + 1) % 3, (axis + 2) % 3
        if flat[axis] >= tol * scale:
            continue
        # doublet rotation: Lie_xi J_b = r J_c and Lie_xi J_c = -r J_b
        worst = 0.0
        for ip, p in enumerate(points):
            Jb = np.asarray(Js[b].comps(p))
            Jc = np.asarray(Js[c].comps(p))
            r = float(np.sum(lie[ip][b] * Jc) / np.sum(Jc * Jc))
            worst = max(worst,
                        float(np.max(np.abs(lie[ip][b] - r * Jc))),
                        float(np.max(np.abs(lie[ip][c] + r * Jb))))
        if worst < tol * scale:
            return {"type": "holomorphic", "axis": axis, "residual": worst}
    return {"type": "neither", "axis": None, "residual": max(flat)}


# ---------------------------------------------------------------------------
# moment maps
# ---------------------------------------------------------------------------

def hitchin_moment_residual(metric: MetricModel, K: VectorField, Js,
                            cart_fields, x, cfg=engine.DEFAULT_CFG,
                            align=None):
    """Residual of dX_a - i(K)J_a at ``x``; optional constant alignment.

    ``align`` is a 3x3 matrix applied to the interior-product triplet; use
    :func:`hitchin_alignment` to fit it when the candidate coordinates are
    labeled in a rotated or reflected frame.
    """
    x = np.asarray(x, dtype=float)
    dX = np.array([
        engine.fd_grad(lambda y, _a=a: cart_fields(y)[_a], x, engine.FD_CFG)
        for a in range(3)
    ])
    v = np.asarray(K.components(x))
    iKJ = np.array([v @ np.asarray(J.comps(x)) for J in Js])
    if align is not None:
        iKJ = np.asarray(align) @ iKJ
    return dX - iKJ


def hitchin_alignment(metric: MetricModel, K: VectorField, Js, cart_fields,
                      points, cfg=engine.DEFAULT_CFG):
    """Best constant matrix R with dX_a = R_ab i(K)J_b over sample points."""
    lhs, rhs = [], []
    for p in points:
        p = np.asarray(p, dtype=float)
        v = np.asarray(K.components(p))
        iKJ = np.array([v @ np.asarray(J.comps(p)) for J in Js])
        dX = np.array([
            engine.fd_grad(lambda y, _a=a: cart_fields(y)[_a], p,
                           engine.FD_CFG)
            for a in range(3)
        ])
        lhs.append(iKJ.T)  # rows indexed by coordinate component
        rhs.append(dX.T)
    Ls = np.vstack(lhs)
    Rs = np.vstack(rhs)
    sol, *_ = np.linalg.lstsq(Ls, Rs, rcond=None)
    return sol.T


# ---------------------------------------------------------------------------
# bi-axial Killing-Yano builder
# ---------------------------------------------------------------------------

def build_ky_biaxial(A, B, C, chart_id="hj1", s_index=1):
    """Candidate Y = e0 ^ e1 + mu e2 ^ e3 for a diagonal bi-axial metric.

    Returns (Y, mu, condition) where ``condition(s)`` is the residual of
    A B - mu (C^2)' + 2 C^2 mu' ; Y is Killing-Yano iff it vanishes.
    """

    def dC2(s):
        return engine.cs_partial(lambda v: C(v[0]) ** 2, np.array([s]), 0)

    def mu(s):
        return dC2(s) / (A(s) * B(s))

    def dmu(s):
        # quotient rule over exact first derivatives; only the second
        # derivative of C^2 needs an outer finite difference
        ab = A(s) * B(s)
        dab = engine.cs_partial(lambda v: A(v[0]) * B(v[0]), np.array([s]), 0)
        d2c2 = engine.fd_partial(lambda v: dC2(v[0]), np.array([s]), 0)
        return (d2c2 * ab - dC2(s) * dab) / ab**2

    def condition(s):
        return A(s) * B(s) - mu(s) * dC2(s) + 2 * C(s) ** 2 * dmu(s)

    def comps(x):
        s = x[s_index]
        from .catalog.bianchi import bianchi_ii
        model = bianchi_ii(chart_id=chart_id)
        ds = np.zeros(4, dtype=np.result_type(np.asarray(x)))
        ds[s_index] = 1.0
        s1, s2, s3 = (np.asarray(f.comps(x)) for f in model.sigma)
        e0, e1 = A(s) * ds, B(s) * s1
        e2, e3 = C(s) * s2, C(s) * s3
        return (np.outer(e0, e1) - np.outer(e1, e0)
                + mu(s) * (np.outer(e2, e3) - np.outer(e3, e2)))

    return KForm(2, chart_id, comps), mu, condition
