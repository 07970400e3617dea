"""Curvature: Christoffel/Riemann route, orthonormal frames, self-dual
two-form decomposition, spin connection, and Petrov classification."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import engine
from .errors import FrameRankError, NotWeylError
from .metric import MetricModel

_EPS3 = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS3[_i, _j, _k] = 1.0
    _EPS3[_i, _k, _j] = -1.0


# ---------------------------------------------------------------------------
# coordinate-basis curvature
# ---------------------------------------------------------------------------

def christoffel(metric: MetricModel, x, cfg=engine.DEFAULT_CFG):
    """Gamma^a_{bc} at ``x``."""
    P = metric.partials(x, cfg)  # P[k, a, b] = d_k g_ab
    ginv = metric.ginv(np.asarray(x, dtype=float))
    low = 0.5 * (
        np.einsum("bac->abc", P) + np.einsum("cab->abc", P) - np.einsum("abc->abc", P)
    )
    return np.einsum("ad,dbc->abc", ginv, low)


def riemann(metric: MetricModel, x, cfg=engine.DEFAULT_CFG):
    """Fully lowered curvature tensor R_{abcd} at ``x``.

    The Christoffel field is exact at every stencil node; only the outer
    derivative is a finite difference, taken with the widened step.
    """
    x = np.asarray(x, dtype=float)
    gamma = christoffel(metric, x, cfg)
    steps = cfg.steps(x) if cfg.scheme == engine.EXACT else cfg.second_steps(x)
    dG = np.array(
        [
            engine.fd_partial(
                lambda y: christoffel(metric, y, cfg),
                x,
                k,
                cfg,
                step=steps[k],
                domain=metric.domain,
            )
            for k in range(4)
        ]
    )  # dG[k, a, b, c] = d_k Gamma^a_{bc}
    Rup = (
        np.einsum("cadb->abcd", dG)
        - np.einsum("dacb->abcd", dG)
        + np.einsum("ace,edb->abcd", gamma, gamma)
        - np.einsum("ade,ecb->abcd", gamma, gamma)
    )
    g = metric.g(x)
    return np.einsum("ae,ebcd->abcd", g, Rup)


def ricci(metric: MetricModel, x, cfg=engine.DEFAULT_CFG):
    R = riemann(metric, x, cfg)
    ginv = metric.ginv(np.asarray(x, dtype=float))
    # Ric_{bd} = g^{ac} R_{abcd}
    ric = np.einsum("ac,abcd->bd", ginv, R)
    scal = np.einsum("bd,bd->", ginv, ric)
    return ric, scal


# ---------------------------------------------------------------------------
# orthonormal frames
# ---------------------------------------------------------------------------

@dataclass
class Frame:
    """An orthonormal coframe field: rows of ``matrix(x)`` are e^a_mu."""

    chart_id: str
    coframe: object  # coords -> 4x4, rows e^a
    signature: tuple = (1, 1, 1, 1)
    complex_safe: bool = True

    def matrix(self, x):
        E = np.asarray(self.coframe(x))
        if not np.iscomplexobj(E) and abs(np.linalg.det(E)) < 1e-12:
            raise FrameRankError(f"coframe degenerate at {np.asarray(x)}")
        return E

    def vectors(self, x):
        """Columns are the frame vectors e_a (duals of the coframe rows)."""
        return np.linalg.inv(self.matrix(x))

    def reconstruction_residual(self, metric: MetricModel, x):
        E = self.matrix(x)
        eta = np.diag(np.asarray(self.signature, dtype=float))
        return float(np.max(np.abs(E.T @ eta @ E - metric.g(x))))


def natural_frame(metric: MetricModel) -> Frame:
    """Frame from the metric's hint, else a Cholesky (Gram-Schmidt) coframe."""
    if metric.frame_hint is not None:
        safe = bool(metric.metadata.get("frame_complex_safe", True))
        return Frame(metric.chart_id, metric.frame_hint, complex_safe=safe)

    def coframe(x):
        g = metric.g(np.real(np.asarray(x, dtype=float)))
        try:
            L = np.linalg.cholesky(g)
        except np.linalg.LinAlgError as exc:
            raise FrameRankError(str(exc))
        return L.T

    return Frame(metric.chart_id, coframe, complex_safe=False)


def frame_riemann(metric: MetricModel, frame: Frame, x, cfg=engine.DEFAULT_CFG):
    """Riemann tensor with all four indices in the orthonormal frame."""
    R = riemann(metric, x, cfg)
    M = frame.vectors(x)  # M[mu, a] = e_a^mu
    return np.einsum("ma,nb,pc,qd,mnpq->abcd", M, M, M, M, R)


# ---------------------------------------------------------------------------
# self-dual / anti-self-dual two-form basis and curvature blocks
# ---------------------------------------------------------------------------

def sd_basis(sign):
    """The three (anti-)self-dual basis 2-forms as frame component matrices."""
    out = []
    for i in range(1, 4):
        F = np.zeros((4, 4))
        F[0, i], F[i, 0] = 1.0, -1.0
        jk = [(2, 3), (3, 1), (1, 2)][i - 1]
        F[jk] += sign * 1.0
        F[jk[::-1]] += -sign * 1.0
        out.append(F)
    return out


_F_PLUS = sd_basis(+1)
_F_MINUS = sd_basis(-1)


def _pair_project(Rf, basis):
    """Project the first index pair of R_{abcd} onto a 2-form triplet."""
    return np.array([0.5 * np.einsum("ab,abcd->cd", F, Rf) for F in basis])


def _second_project(forms, basis):
    return np.array(
        [[0.25 * np.einsum("cd,cd->", F, forms[i]) for F in basis] for i in range(3)]
    )


@dataclass
class CurvaturePackage:
    """Curvature of a 4-metric organized by duality blocks.

    ``A`` multiplies the self-dual basis in the self-dual curvature triplet,
    ``C`` the anti-self-dual basis in the anti-self-dual triplet, and ``B``
    is the mixed (traceless Ricci) block.
    """

    point: np.ndarray
    christoffel: np.ndarray
    riemann: np.ndarray  # fully lowered, coordinate basis
    ricci: np.ndarray
    scalar: float
    omega_plus: np.ndarray  # 3 one-forms, frame components
    omega_minus: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    weyl_plus: np.ndarray
    weyl_minus: np.ndarray
    petrov_plus: str
    petrov_minus: str
    frame_residual: float

    def is_ricci_flat(self, tol=1e-8):
        return float(np.max(np.abs(self.ricci))) < tol

    def is_half_flat(self, tol=1e-8):
        return float(np.max(np.abs(self.weyl_plus))) < tol and self.is_ricci_flat(tol)


def curvature_package(metric: MetricModel, x, frame: Frame = None,
                      cfg=engine.DEFAULT_CFG) -> CurvaturePackage:
    x = np.asarray(x, dtype=float)
    frame = frame or natural_frame(metric)
    gamma = christoffel(metric, x, cfg)
    R = riemann(metric, x, cfg)
    M = frame.vectors(x)
    Rf = np.einsum("ma,nb,pc,qd,mnpq->abcd", M, M, M, M, R)
    ginv = metric.ginv(x)
    ric = np.einsum("ac,abcd->bd", ginv, R)
    scal = np.einsum("bd,bd->", ginv, ric)
    wp_omega, wm_omega = sd_connection(frame, x, cfg)

    plus_forms = _pair_project(Rf, _F_PLUS)
    minus_forms = _pair_project(Rf, _F_MINUS)
    A = _second_project(plus_forms, _F_PLUS)
    B = _second_project(plus_forms, _F_MINUS)
    C = _second_project(minus_forms, _F_MINUS)

    wp = A - (np.trace(A) / 3.0) * np.eye(3)
    wm = C - (np.trace(C) / 3.0) * np.eye(3)
    wp = 0.5 * (wp + wp.T)
    wm = 0.5 * (wm + wm.T)
    return CurvaturePackage(
        point=x,
        christoffel=gamma,
        riemann=R,
        ricci=ric,
        scalar=float(scal),
        omega_plus=wp_omega,
        omega_minus=wm_omega,
        A=A,
        B=B,
        C=C,
        weyl_plus=wp,
        weyl_minus=wm,
        petrov_plus=petrov_classify(wp)[0],
        petrov_minus=petrov_classify(wm)[0],
        frame_residual=frame.reconstruction_residual(metric, x),
    )


def petrov_classify(W, tol=1e-6):
    """Petrov type (O, D, or I) of a trace-free symmetric Weyl block."""
    W = np.asarray(W, dtype=float)
    scale = max(1.0, float(np.max(np.abs(W))))
    if abs(np.trace(W)) > 1e-8 * scale:
        raise NotWeylError(f"matrix has trace {np.trace(W):.3e}; not a Weyl block")
    ev = np.sort(np.linalg.eigvalsh(0.5 * (W + W.T)))
    rho = max(1.0, float(np.max(np.abs(ev))))
    gaps = [abs(ev[1] - ev[0]), abs(ev[2] - ev[1]), abs(ev[2] - ev[0])]
    distinct = sum(1 for gap in (gaps[0], gaps[1]) if gap > tol * rho)
    if distinct == 0:
        kind = "O"
    elif distinct == 1:
        kind = "D"
    else:
        kind = "I"
    return kind, ev


# ---------------------------------------------------------------------------
# spin connection (torsion-free, metric): linear solve per point
# ---------------------------------------------------------------------------

_AB_PAIRS = [(a, b) for a in range(4) for b in range(a + 1, 4)]
_CD_PAIRS = _AB_PAIRS


def _torsion_matrix():
    # unknowns w[(a,b), c] for a<b; equations over (a, (d,e)) with d<e:
    #   D_{a,de} + lam_{ae,d} - lam_{ad,e} = 0
    n = len(_AB_PAIRS) * 4
    M = np.zeros((n, n))

    def col(a, b, c):
        # lam_{ab,c} with sign for ordering of (a, b)
        if a == b:
            return None, 0.0
        if a < b:
            return _AB_PAIRS.index((a, b)) * 4 + c, 1.0
        return _AB_PAIRS.index((b, a)) * 4 + c, -1.0

    row = 0
    for a in range(4):
        for d, e in _CD_PAIRS:
            idx, s = col(a, e, d)
            if idx is not None:
                M[row, idx] += s
            idx, s = col(a, d, e)
            if idx is not None:
                M[row, idx] -= s
            row += 1
    return M


_TORSION_LU = np.linalg.inv(_torsion_matrix())


def coframe_exterior_derivatives(frame: Frame, x, cfg=engine.DEFAULT_CFG):
    """D[a, b, c] with de^a = (1/2) D_{a,bc} e^b wedge e^c."""
    x = np.asarray(x, dtype=float)
    if frame.complex_safe and cfg.scheme == engine.EXACT:
        dE = engine.array_partials(frame.coframe, x, cfg)
    else:
        dE = engine.fd_grad(frame.coframe, x, engine.FD_CFG)
    # coordinate components of de^a: (de^a)_{k mu} = d_k E_{a mu} - d_mu E_{a k}
    dcoord = np.einsum("kam->akm", dE) - np.einsum("mak->akm", dE)
    M = frame.vectors(x)
    return np.einsum("kb,mc,akm->abc", M, M, dcoord)


def spin_connection(frame: Frame, x, cfg=engine.DEFAULT_CFG):
    """Frame components lam[a, b, c] of the connection 1-forms omega_{ab}.

    omega_{ab} = lam[a, b, c] e^c, antisymmetric in (a, b), determined by the
    torsion-free condition de^a + omega_{ab} wedge e^b = 0.
    """
    D = coframe_exterior_derivatives(frame, x, cfg)
    rhs = np.array([-D[a, d, e] for a in range(4) for d, e in _CD_PAIRS])
    sol = _TORSION_LU @ rhs
    lam = np.zeros((4, 4, 4))
    for idx, (a, b) in enumerate(_AB_PAIRS):
        lam[a, b] = sol[idx * 4:(idx + 1) * 4]
        lam[b, a] = -lam[a, b]
    return lam


def torsion_residual(frame: Frame, x, cfg=engine.DEFAULT_CFG):
    """Max-norm of de^a + omega_{ab} wedge e^b in frame components."""
    D = coframe_exterior_derivatives(frame, x, cfg)
    lam = spin_connection(frame, x, cfg)
    res = 0.0
    for a in range(4):
        for d, e in _CD_PAIRS:
            res = max(res, abs(D[a, d, e] + lam[a, e, d] - lam[a, d, e]))
    return res


def sd_connection(frame: Frame, x, cfg=engine.DEFAULT_CFG):
    """(omega^+_i, omega^-_i): frame components of the duality halves."""
    lam = spin_connection(frame, x, cfg)
    plus = np.zeros((3, 4))
    minus = np.zeros((3, 4))
    for i in range(1, 4):
        j, k = [(2, 3), (3, 1), (1, 2)][i - 1]
        plus[i - 1] = lam[0, i] + lam[j, k]
        minus[i - 1] = lam[0, i] - lam[j, k]
    return plus, minus


def sd_curvature_from_connection(frame: Frame, x, cfg=engine.DEFAULT_CFG):
    """(A, B, C) blocks recomputed from the spin connection route.

    R_{ab} = d omega_{ab} + omega_{ac} wedge omega_{cb}; the outer exterior
    derivative is a finite difference of the per-point connection solve.
    """
    x = np.asarray(x, dtype=float)
    steps = cfg.steps(x) if (frame.complex_safe and cfg.scheme == engine.EXACT) \
        else cfg.second_steps(x)

    def lam_coord(y):
        # connection forms in *coordinate* components: omega_{ab,mu}
        lam = spin_connection(frame, y, cfg)
        E = frame.matrix(y)
        return np.einsum("abc,cm->abm", lam, E)

    lam0 = lam_coord(x)
    dlam = np.array(
        [
            engine.fd_partial(lam_coord, x, k, cfg, step=steps[k])
            for k in range(4)
        ]
    )  # dlam[k, a, b, m]
    # (d omega_{ab})_{k m} = d_k omega_{ab,m} - d_m omega_{ab,k}
    dw = np.einsum("kabm->abkm", dlam) - np.einsum("mabk->abkm", dlam)
    quad = np.einsum("acm,cbn->abmn", lam0, lam0)
    Rcoord = dw + quad - np.einsum("abmn->abnm", quad)
    M = frame.vectors(x)
    Rf = np.einsum("km,qn,abkq->abmn", M, M, Rcoord)
    plus_forms = _pair_project(Rf, _F_PLUS)
    minus_forms = _pair_project(Rf, _F_MINUS)
    return (
        _second_project(plus_forms, _F_PLUS),
        _second_project(plus_forms, _F_MINUS),
        _second_project(minus_forms, _F_MINUS),
    )


# ---------------------------------------------------------------------------
# invariant-connection ansatz on unimodular structure triplets
# ---------------------------------------------------------------------------

def ansatz_residual(n, lam):
    """Residuals of the cyclic system n_i lam_i = lam_j lam_k."""
    n = np.asarray(n, dtype=float)
    lam = np.asarray(lam, dtype=float)
    return np.array(
        [n[i] * lam[i] - lam[(i + 1) % 3] * lam[(i + 2) % 3] for i in range(3)]
    )


def solve_connection_ansatz(n):
    """Nontrivial solution families of n_i lam_i = lam_j lam_k (cyclic).

    Returns a list of families, each either ``{"kind": "line", "direction": v}``
    (all multiples of ``v`` solve the system) or ``{"kind": "point",
    "value": v}`` (an isolated solution, up to double sign flips).
    """
    n = tuple(int(v) for v in n)
    key = tuple(sorted(np.abs(n), reverse=True))
    axes = [np.eye(3)[i] for i in range(3)]
    zeros = [i for i in range(3) if n[i] == 0]

    if key == (0, 0, 0):
        return [{"kind": "line", "direction": a} for a in axes]
    if key == (1, 0, 0):
        i = next(i for i in range(3) if n[i] != 0)
        return [{"kind": "line", "direction": axes[j]} for j in zeros]
    if key == (1, 1, 0):
        return [{"kind": "line", "direction": axes[zeros[0]]}]
    if key == (1, 1, 1):
        if all(v == n[0] for v in n):
            return [{"kind": "point", "value": float(n[0]) * np.ones(3)}]
        return []  # mixed signs admit only the trivial solution
    raise ValueError(f"structure triplet {n} outside the unimodular table")
