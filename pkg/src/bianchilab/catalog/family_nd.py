"""Non-diagonal solvable-group geometries and the parabolic three-parameter family."""

from __future__ import annotations

import numpy as np

from ..curvature import natural_frame
from ..engine import cs_partial
from ..errors import ParameterRangeError, PreconditionError
from ..forms import KForm
from ..metric import MetricModel
from .bianchi import bianchi_vi, bianchi_vii, nd_parabolic_model
from .records import Bundle, CatalogEntry, metric_from_coframe


def _wedge2(u, v):
    return np.outer(u, v) - np.outer(v, u)


# -- three-parameter family in squared-parabolic coordinates ------------------

def build_nd_parabolic(p):
    v0, a, b = p["v0"], p["a"], p["b"]

    def V(c):
        xi, eta = c[1], c[2]
        return v0 + (a * xi + b * eta) / (xi**2 + eta**2)

    def G(c):
        xi, eta = c[1], c[2]
        return (b * xi - a * eta) / (xi**2 + eta**2)

    def coframe(c):
        xi, eta = c[1], c[2]
        v = V(c)
        w = np.sqrt(v * (xi**2 + eta**2))
        E = np.zeros((4, 4), dtype=np.result_type(np.asarray(c), v))
        E[0, 0], E[0, 3] = 1.0 / np.sqrt(v), G(c) / np.sqrt(v)
        # eta leg before xi leg: keeps the curvature in the same duality
        # block as the rest of the catalog
        E[1, 2] = w
        E[2, 1] = w
        E[3, 3] = np.sqrt(v)
        return E

    metric = metric_from_coframe(
        "nd1", "nd1", coframe, dict(p),
        {"family": "nd-parabolic", "hyperkahler": True, "ricci_flat": True,
         "frame_complex_safe": True},
        domain=lambda c: np.real(V(c)) > 0,
    )

    # planar cartesian differentials of X = (xi^2 - eta^2)/2, Y = -xi eta,
    # Z = z; the reflected Y orients the triple so the structures close
    def _dX(c):
        return (
            np.array([0.0, c[1], -c[2], 0.0], dtype=np.result_type(np.asarray(c))),
            np.array([0.0, -c[2], -c[1], 0.0], dtype=np.result_type(np.asarray(c))),
            np.array([0.0, 0.0, 0.0, 1.0]),
        )

    def J(c, i):
        u = np.zeros(4, dtype=np.result_type(np.asarray(c)))
        u[0], u[3] = 1.0, G(c)
        dX = _dX(c)
        j, k = (i + 1) % 3, (i + 2) % 3
        return _wedge2(u, dX[i]) + V(c) * _wedge2(dX[j], dX[k])

    def S_lower(c):
        xi = c[1]
        g = metric.g(c)
        gi = np.linalg.inv(g)
        e_t = np.array([1.0, 0.0, 0.0, 0.0])
        e_xi = np.array([0.0, 1.0, 0.0, 0.0])
        e_z = np.array([0.0, 0.0, 0.0, 1.0])
        u = xi * e_z - b * e_t
        S_up = (np.outer(e_xi, e_xi) + np.outer(u, u)
                + v0 * (v0 * xi**2 + 2 * a * xi) * np.outer(e_t, e_t)
                - (v0 * xi**2 + a * xi) * gi)
        return g @ S_up @ g

    return Bundle(
        metric,
        frame=natural_frame(metric),
        bianchi=nd_parabolic_model(v0, a, b),
        complex_structures=[KForm(2, "nd1", lambda c, _i=i: J(c, _i))
                            for i in range(3)],
        ks_tensors={"parabolic": S_lower},
        notes={"potential": "nd-parabolic"},
    )


# -- non-diagonal metrics on the planar-rotation groups -----------------------

def _nd_frame(model, alpha, beta, lam, mu, nu):
    """Vierbein rows (alpha dr, lam s1, mu s1 + nu s2, beta s3)."""

    def coframe(c):
        r = c[0]
        s1, s2, s3 = (np.asarray(f.comps(c)) for f in model.sigma)
        dr = np.zeros(4, dtype=np.result_type(np.asarray(c)))
        dr[0] = 1.0
        E = np.zeros((4, 4), dtype=np.result_type(np.asarray(c), alpha(r)))
        E[0] = alpha(r) * dr
        E[1] = lam(r) * s1
        E[2] = mu(r) * s1 + nu(r) * s2
        E[3] = beta(r) * s3
        return E

    return coframe


def _nd_structures(model, coframe, phi):
    """Closed triplet obtained by unwinding the residual connection angle."""

    def F(c):
        E = coframe(c)
        return [_wedge2(E[0], E[i]) + _wedge2(E[j], E[k])
                for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2))]

    def J(c, i):
        F1, F2, F3 = F(c)
        if i == 2:
            return F3
        w = np.exp(-2j * phi(c)) * (F1 + 1j * F2)
        return np.real(w) if i == 0 else np.imag(w)

    return [KForm(2, model.chart_id, lambda c, _i=i: J(c, _i))
            for i in range(3)]


def build_nds_vii(p, name="nds5"):
    v0, a, b, ce = p["v0"], p["a"], p["b"], p.get("c_exp", 0.0)
    model = bianchi_vii(chart_id="bianchi7nd")

    def f(r):
        return r**2 - a**2 - b**2

    def g_(r):
        return (r - a) ** 2 + b**2

    profile = {
        "alpha": lambda r: v0 * r**ce * np.sqrt(f(r)),
        "beta": lambda r: 2 * v0 * r ** (ce + 1) * np.sqrt(f(r)),
        "lam": lambda r: np.sqrt(f(r) / g_(r)),
        "mu": lambda r: 2 * b * r / np.sqrt(f(r) * g_(r)),
        "nu": lambda r: np.sqrt(g_(r) / f(r)),
    }
    coframe = _nd_frame(model, **profile)
    metric = metric_from_coframe(
        name, "bianchi7nd", coframe, dict(p),
        {"family": "bianchi-vii0-nd", "hyperkahler": True, "ricci_flat": True,
         "frame_complex_safe": True},
        domain=lambda c: np.real(f(c[0])) > 0,
    )
    C = -3.0 - 2.0 * ce

    def phi(c):
        return 0.5 * (-np.arctan((c[0] - a) / b) + C * c[1])

    return Bundle(
        metric,
        frame=natural_frame(metric),
        bianchi=model,
        complex_structures=_nd_structures(model, coframe, phi),
        notes={
            "potential": "potnd-cartesian",
            "triholomorphic": ["L2", "L3"],
            "frame_profile": profile,
            "sd_connection": {"A": lambda r: -b / g_(r), "C": C},
            "nd_profile": {"G": lambda r: g_(r) / r, "eps": 1.0,
                           "L": 4.0 * a, "ktil": 2.0 * b},
        },
    )


def build_nds_vi(p):
    v0, a, r0, ce = p["v0"], p["a"], p["r0"], p.get("c_exp", 0.0)
    if a <= 1:
        raise ParameterRangeError("nds6: a must exceed 1")
    model = bianchi_vi(chart_id="bianchi6nd")
    root = np.sqrt(a**2 - 1)

    def rho(r):
        return np.log(r / r0)

    def nu(r):
        return np.sqrt((a + np.sin(rho(r))) / np.cos(rho(r)))

    profile = {
        "alpha": lambda r: v0 * r**ce * np.sqrt(np.cos(rho(r))),
        "beta": lambda r: 2 * v0 * r ** (ce + 1) * np.sqrt(np.cos(rho(r))),
        "lam": lambda r: 1.0 / nu(r),
        "mu": lambda r: root / (nu(r) * np.cos(rho(r))),
        "nu": nu,
    }
    coframe = _nd_frame(model, **profile)
    metric = metric_from_coframe(
        "nds6", "bianchi6nd", coframe, dict(p),
        {"family": "bianchi-vi0-nd", "hyperkahler": True, "ricci_flat": True,
         "frame_complex_safe": True},
        domain=lambda c: np.abs(np.real(rho(c[0]))) < np.pi / 2,
    )
    C = -2.0 - 2.0 * ce

    def phi(c):
        t = np.tan(0.5 * rho(c[0]))
        return 0.5 * (-np.arctan((a * t + 1.0) / root) + C * c[1])

    return Bundle(
        metric,
        frame=natural_frame(metric),
        bianchi=model,
        complex_structures=_nd_structures(model, coframe, phi),
        notes={
            "potential": "potc2",
            "triholomorphic": ["L2", "L3"],
            "frame_profile": profile,
            "sd_connection": {
                "A": lambda r: -root / (2 * r * (a + np.sin(rho(r)))),
                "C": C,
            },
            "nd_profile": {"G": lambda r: a + np.sin(rho(r)), "eps": -1.0,
                           "L": 2.0 * a, "ktil": root},
        },
    )


def nd_system_residual(bundle, radii):
    """Residuals of the first-order system that the non-diagonal vierbein
    profiles must satisfy, together with the first integral of its reduction.

    With vierbein rows (alpha dr, lam s1, mu s1 + nu s2, beta s3) and the
    residual connection one-form A dr + C s3, hyperkahlerity requires

        (beta lam)'/alpha = eps nu + lam mu^2 - C lam,
        (beta mu)'/alpha  = -mu lam^2 - C mu,
        (beta nu)'/alpha  = lam - C nu,          lam nu = 1,

    and the squared-profile combination G obeys the elementary first integral
    (r G')^2 = eps G^2 + L G - ktil^2.  Returns per-equation max residuals
    over ``radii``.
    """
    notes = bundle.notes or {}
    if "frame_profile" not in notes or "nd_profile" not in notes:
        raise PreconditionError(
            f"{bundle.metric.name}: missing frame/system profile notes")
    fp, ndp = notes["frame_profile"], notes["nd_profile"]
    C = notes["sd_connection"]["C"]
    alpha, beta = fp["alpha"], fp["beta"]
    lam, mu, nu = fp["lam"], fp["mu"], fp["nu"]
    G, eps, L, ktil = ndp["G"], ndp["eps"], ndp["L"], ndp["ktil"]

    def d(f, r):
        return cs_partial(lambda x: f(x[0]), np.array([r]), 0)

    out = {"eq_a": 0.0, "eq_b": 0.0, "eq_c": 0.0, "unit": 0.0,
           "first_integral": 0.0}
    for r in np.asarray(radii, dtype=float):
        a_, la, m, n = alpha(r), lam(r), mu(r), nu(r)
        out["eq_a"] = max(out["eq_a"], abs(
            d(lambda s: beta(s) * lam(s), r) / a_ - (eps * n + la * m**2 - C * la)))
        out["eq_b"] = max(out["eq_b"], abs(
            d(lambda s: beta(s) * mu(s), r) / a_ - (-m * la**2 - C * m)))
        out["eq_c"] = max(out["eq_c"], abs(
            d(lambda s: beta(s) * nu(s), r) / a_ - (la - C * n)))
        out["unit"] = max(out["unit"], abs(la * n - 1.0))
        out["first_integral"] = max(out["first_integral"], abs(
            (r * d(G, r))**2 - (eps * G(r)**2 + L * G(r) - ktil**2)))
    return out


# -- degenerate member of the same system; secretly tri-axial -----------------

def build_nd_degenerate(p):
    v0, L, ktil = p["v0"], p["L"], p["ktil"]
    r0 = 1.0 / (2.0 * v0)

    def u_of(r):
        return np.log(r / r0)

    def comps(c):
        r, th = c[0], c[1]
        u = u_of(r)
        G = ktil**2 / L + 0.25 * L * u**2
        dt = np.result_type(np.asarray(c))
        dr = np.zeros(4, dtype=dt); dr[0] = 1.0
        dth = np.zeros(4, dtype=dt); dth[1] = 1.0
        s1 = np.zeros(4, dtype=dt); s1[2], s1[3] = 1.0, -th
        s2 = np.zeros(4, dtype=dt); s2[3] = 1.0
        rad = v0**2 * 0.5 * L * u
        base = rad * (np.outer(dr, dr) + 4 * r**2 * np.outer(dth, dth))
        blk = (L * np.outer(s1, s1)
               + ktil * (np.outer(s1, s2) + np.outer(s2, s1))
               + G * np.outer(s2, s2))
        return base + blk / (0.5 * L * u)

    metric = MetricModel(
        "nd-degenerate", "bianchi6nd", comps, params=dict(p),
        domain=lambda c: np.real(u_of(c[0])) > 0,
        metadata={"family": "fixture", "ricci_flat": True,
                  "frame_complex_safe": False},
    )
    return Bundle(
        metric,
        frame=natural_frame(metric),
        notes={"equivalent": ("G_II", {"lam": -2.0}),
               "conformal_scale": L,
               "equivalence_map": ("degenerate-to-halfflat",
                                   {"v0": v0, "L": L, "ktil": ktil}),
               "r0": r0},
    )


ENTRIES = (
    CatalogEntry(
        "nd1", "nd-parabolic", "parabolic-three-parameter",
        "Three-parameter family in squared-parabolic coordinates",
        {"v0": 1.0, "a": 1.0, "b": 1.0}, {"v0": (0.0, None)},
        {"chart": "nd1", "hyperkahler": True, "ricci_flat": True,
         "potential": "nd-parabolic"},
        build_nd_parabolic,
        ((-1.0, 1.0), (0.5, 2.0), (0.5, 2.0), (-1.0, 1.0)),
    ),
    CatalogEntry(
        "g_ND", "bianchi-vii0-nd", "nd-vii",
        "Non-diagonal metric on the euclidean-rotation group",
        {"v0": 1.0, "a": 1.0, "b": 1.0},
        {"v0": (0.0, None), "b": (0.0, None)},
        {"chart": "bianchi7nd", "hyperkahler": True, "ricci_flat": True,
         "potential": "potnd-cartesian"},
        lambda p: build_nds_vii({**p, "c_exp": 0.0}, name="g_ND"),
        ((1.8, 3.5), (-0.8, 0.8), (-1.0, 1.0), (-1.0, 1.0)),
    ),
    CatalogEntry(
        "nds5", "bianchi-vii0-nd", "nd-vii-exponent",
        "Non-diagonal euclidean-rotation metric with free radial exponent",
        {"v0": 1.0, "a": 1.0, "b": 1.0, "c_exp": 0.0},
        {"v0": (0.0, None), "b": (0.0, None)},
        {"chart": "bianchi7nd", "hyperkahler": True, "ricci_flat": True},
        build_nds_vii,
        ((1.8, 3.5), (-0.8, 0.8), (-1.0, 1.0), (-1.0, 1.0)),
    ),
    CatalogEntry(
        "nds6", "bianchi-vi0-nd", "nd-vi",
        "Non-diagonal metric on the hyperbolic-rotation group",
        {"v0": 1.0, "a": 2.0, "r0": 1.0, "c_exp": 0.0},
        {"v0": (0.0, None), "a": (1.0, None), "r0": (0.0, None)},
        {"chart": "bianchi6nd", "hyperkahler": True, "ricci_flat": True,
         "potential": "potc2"},
        build_nds_vi,
        ((0.6, 1.7), (-0.8, 0.8), (-1.0, 1.0), (-1.0, 1.0)),
    ),
    CatalogEntry(
        "nd-degenerate", "fixture", "nd-degenerate",
        "Degenerate member of the non-diagonal system; tri-axial in disguise",
        {"v0": 1.0, "L": 4.0, "ktil": 2.0},
        {"v0": (0.0, None), "L": (0.0, None)},
        {"chart": "bianchi6nd", "ricci_flat": True},
        build_nd_degenerate,
        ((0.7, 2.0), (-0.8, 0.8), (-1.0, 1.0), (-1.0, 1.0)),
    ),
)
