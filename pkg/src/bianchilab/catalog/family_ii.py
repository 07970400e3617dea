"""Bianchi II geometries: half-flat, scalar-flat Kahler, Einstein, Kahler-Einstein."""

from __future__ import annotations

import numpy as np

from ..curvature import Frame, natural_frame
from ..errors import ParameterRangeError
from ..forms import KForm
from .bianchi import bianchi_ii
from .records import (Bundle, CatalogEntry, diagonal_coframe,
                      metric_from_coframe, rotated_parallel_structures)

_CHART = "bianchi2"


def _frame(metric):
    return natural_frame(metric)


def _wedge2(u, v):
    return np.outer(u, v) - np.outer(v, u)


def _ds_row(x, dtype=float):
    out = np.zeros(4, dtype=dtype)
    out[1] = 1.0
    return out


def _complex_structures_ii(model):
    """J1 = ds ^ s1 + s s2 ^ s3 and cyclic companions weighted by s."""

    def comps(x, i):
        s = x[1]
        ds = _ds_row(x, np.result_type(np.asarray(x)))
        sig = [np.asarray(f.comps(x)) for f in model.sigma]
        j, k = (i + 1) % 3, (i + 2) % 3
        if i == 0:
            return _wedge2(ds, sig[0]) + s * _wedge2(sig[1], sig[2])
        return s * _wedge2(ds, sig[i]) + _wedge2(sig[j], sig[k])

    return [KForm(2, _CHART, lambda x, _i=i: comps(x, _i)) for i in range(3)]



def _axial_ks(coframe, weights):
    """Symmetric tensor sum_a w_a(x) e^a x e^a in coordinate components."""

    def comps(x):
        E = coframe(x)
        w = weights(x)
        return sum(w[a] * np.outer(E[a], E[a]) for a in range(4))

    return comps


# -- half-flat metric with translational planar symmetry ----------------------

def build_g_ii(p):
    m = p["m"]
    model = bianchi_ii()

    def coefs(x):
        s = x[1]
        return (np.sqrt(m * s), 1.0 / np.sqrt(m * s), np.sqrt(s), np.sqrt(s))

    metric = metric_from_coframe(
        "g_II", _CHART, diagonal_coframe(model, coefs, 1), dict(p),
        {"family": "bianchi-ii", "hyperkahler": True, "ricci_flat": True,
         "frame_complex_safe": True},
    )

    def ky_comps(x):
        s, y, z = x[1], x[2], x[3]
        ds = _ds_row(x, np.result_type(np.asarray(x)))
        s1, s2, s3 = (np.asarray(f.comps(x)) for f in model.sigma)
        return (s * _wedge2(ds, -z * s2 + y * s3)
                + _wedge2(s1, y * s2 + z * s3)
                - 2 * s**2 * _wedge2(s2, s3))

    def ks_planar(x):
        # lowered tensor of the quadratic integral pi_y^2 + (pi_z - y pi_t)^2
        y = x[2]
        u = np.array([-y, 0.0, 0.0, 1.0])
        e_y = np.array([0.0, 0.0, 1.0, 0.0])
        g = metric.g(x)
        K_up = np.outer(e_y, e_y) + np.outer(u, u)
        return g @ K_up @ g

    bundle = Bundle(
        metric,
        frame=_frame(metric),
        bianchi=model,
        complex_structures=_complex_structures_ii(model),
        ky_tensors={"planar": KForm(2, _CHART, ky_comps)},
        ks_tensors={"planar": ks_planar},
        notes={
            "triholomorphic": ["L1", "L2", "L3"],
            "holomorphic_doublet": {"L4": (1, 2)},  # rotates (J2, J3)
            "potential": "mc-linear",
            "cartesian_fields": lambda x: (x[1], x[2], x[3]),
            "moment_killing": "L1",
        },
    )
    return bundle


# -- tri-axial half-flat deformation ------------------------------------------

def build_G_ii(p):
    lam = p["lam"]
    if lam == 0:
        raise ParameterRangeError("G_II: lam must be nonzero")
    model = bianchi_ii()
    model.extra_killing = None  # tri-axial: the planar rotation is broken
    model.algebra = [row for row in model.algebra if 3 not in row[0]]

    def coefs(x):
        s = x[1]
        w = np.sqrt(s) * np.exp(-lam * s)
        return (w, 1.0 / np.sqrt(s), w, np.sqrt(s))

    metric = metric_from_coframe(
        "G_II", _CHART, diagonal_coframe(model, coefs, 1), dict(p),
        {"family": "bianchi-ii", "hyperkahler": True, "ricci_flat": True,
         "frame_complex_safe": True},
    )
    return Bundle(
        metric,
        frame=_frame(metric),
        bianchi=model,
        complex_structures=rotated_parallel_structures(
            metric, _CHART, 1, lambda x: lam * x[2]),
        notes={
            "triholomorphic": ["L1", "L3"],
            "holomorphic_doublet": {"L2": (0, 2)},
            "cartesian_fields": lambda x, _l=lam: (
                np.real((np.exp(-_l * x[1] + 1j * _l * x[2]) - 1.0) / _l),
                np.imag((np.exp(-_l * x[1] + 1j * _l * x[2]) - 1.0) / _l),
                x[3],
            ),
            "moment_killing": "L1",
        },
    )


# -- two-exponent vacuum family ----------------------------------------------

def build_g_taub(p):
    a, b = p["a"], p["b"]
    if b < 0 or a < 0:
        raise ParameterRangeError("g_T: exponents must be nonnegative")
    model = bianchi_ii(chart_id="taub")
    if a != b:
        model.extra_killing = None  # the planar rotation needs equal exponents
        model.algebra = [row for row in model.algebra if 3 not in row[0]]
    root = np.sqrt(a * b)

    def coefs(x):
        s = x[1]
        X = s if root == 0 else np.sinh(root * s) / root
        return (
            np.sqrt(X) * np.exp(0.5 * (a + b) * s),
            1.0 / np.sqrt(X),
            np.sqrt(X) * np.exp(0.5 * a * s),
            np.sqrt(X) * np.exp(0.5 * b * s),
        )

    metric = metric_from_coframe(
        "g_T", "taub", diagonal_coframe(model, coefs, 1), dict(p),
        {"family": "bianchi-ii", "hyperkahler": True, "ricci_flat": True,
         "frame_complex_safe": True},
    )
    return Bundle(metric, frame=_frame(metric), bianchi=model)


# -- scalar-flat Kahler metric ------------------------------------------------

def build_g_k(p):
    model = bianchi_ii(chart_id="kahler2")

    def coefs(x):
        s = x[1]
        return (np.sqrt(s / (s - 1)), np.sqrt((s - 1) / s),
                np.sqrt(s), np.sqrt(s))

    metric = metric_from_coframe(
        "g_K", "kahler2", diagonal_coframe(model, coefs, 1), dict(p),
        {"family": "bianchi-ii", "kahler": True, "scalar_flat": True,
         "frame_complex_safe": True},
    )
    coframe = metric.frame_hint

    def kahler_form(x):
        s = x[1]
        ds = _ds_row(x, np.result_type(np.asarray(x)))
        s1, s2, s3 = (np.asarray(f.comps(x)) for f in model.sigma)
        return _wedge2(ds, s1) + s * _wedge2(s2, s3)

    def weights(x, beta=p["beta"], gamma=p["gamma"]):
        s = x[1]
        return (1.0, 1.0 + beta * (s - 1) / s,
                1.0 + gamma * s, 1.0 + gamma * s)

    return Bundle(
        metric,
        frame=_frame(metric),
        bianchi=model,
        complex_structures=[KForm(2, "kahler2", kahler_form)],
        ks_tensors={"axial": _axial_ks(coframe, weights)},
    )


# -- Einstein metric with one-sided Weyl curvature ----------------------------

def build_g_e(p):
    lam = p["lam"]
    model = bianchi_ii(chart_id="einstein2")

    def coefs(x):
        r = x[1]
        f = 3.0 / (2 * lam * (1 - r) ** 2)
        return (
            np.sqrt(f * (r + 1) / r),
            np.sqrt(f * r / (r + 1)),
            np.sqrt(f * (r + 1)),
            np.sqrt(f * (r + 1)),
        )

    metric = metric_from_coframe(
        "g_E", "einstein2", diagonal_coframe(model, coefs, 1), dict(p),
        {"family": "bianchi-ii", "einstein": True, "einstein_constant": lam,
         "frame_complex_safe": True},
    )
    coframe = metric.frame_hint

    def ky_comps(x):
        # axial pairing with profile (2b - a s)/(2b + a s) for a = -b = 1
        s = x[1] + 1.0
        E = coframe(x)
        mu = (-2.0 - s) / (-2.0 + s)
        return _wedge2(E[0], E[1]) + mu * _wedge2(E[2], E[3])

    def weights(x, beta=p["beta"], gamma=p["gamma"]):
        r = x[1]
        s = r + 1.0
        rho = 3.0 / (2 * lam * (1 - r) ** 2)
        return (1.0, 1.0 + beta * ((s - 1) / s) * rho,
                1.0 + gamma * s * rho, 1.0 + gamma * s * rho)

    return Bundle(
        metric,
        frame=_frame(metric),
        bianchi=model,
        ky_tensors={"axial": KForm(2, "einstein2", ky_comps)},
        ks_tensors={"axial": _axial_ks(coframe, weights)},
    )


# -- Kahler-Einstein metric ---------------------------------------------------

def build_g_ke(p):
    lam, delta = p["lam"], p["delta"]
    model = bianchi_ii(chart_id="ke2")

    def _cap(s):
        return delta / s - (2.0 * lam / 3.0) * s**2

    def coefs(x):
        s = x[1]
        D = _cap(s)
        return (1.0 / np.sqrt(D), np.sqrt(D), np.sqrt(s), np.sqrt(s))

    metric = metric_from_coframe(
        "g_KE", "ke2", diagonal_coframe(model, coefs, 1), dict(p),
        {"family": "bianchi-ii", "einstein": True, "kahler": True,
         "einstein_constant": lam, "frame_complex_safe": True},
        domain=lambda c: np.real(_cap(c[1])) > 0,
    )
    coframe = metric.frame_hint

    def kahler_form(x):
        s = x[1]
        ds = _ds_row(x, np.result_type(np.asarray(x)))
        s1, s2, s3 = (np.asarray(f.comps(x)) for f in model.sigma)
        return _wedge2(ds, s1) + s * _wedge2(s2, s3)

    def weights(x, beta=p["beta"], gamma=p["gamma"]):
        s = x[1]
        return (1.0, 1.0 + beta * _cap(s), 1.0 + gamma * s, 1.0 + gamma * s)

    return Bundle(
        metric,
        frame=_frame(metric),
        bianchi=model,
        complex_structures=[KForm(2, "ke2", kahler_form)],
        ks_tensors={"axial": _axial_ks(coframe, weights)},
    )


# -- generic bi-axial family --------------------------------------------------

def _poly(c0, c1, c2):
    return lambda s: c0 + c1 * s + c2 * s**2


def build_hj_biaxial(p):
    model = bianchi_ii(chart_id="hj1")
    A = _poly(p["a0"], p["a1"], p["a2"])
    B = _poly(p["b0"], p["b1"], p["b2"])
    C = _poly(p["c0"], p["c1"], p["c2"])

    def coefs(x):
        s = x[1]
        return (A(s), B(s), C(s), C(s))

    metric = metric_from_coframe(
        "hj1-generic", "hj1", diagonal_coframe(model, coefs, 1), dict(p),
        {"family": "biaxial", "frame_complex_safe": True},
    )
    coframe = metric.frame_hint

    def weights(x, beta=p["beta"], gamma=p["gamma"]):
        s = x[1]
        return (1.0, 1.0 + beta * B(s) ** 2,
                1.0 + gamma * C(s) ** 2, 1.0 + gamma * C(s) ** 2)

    return Bundle(
        metric,
        frame=_frame(metric),
        bianchi=model,
        ks_tensors={"axial": _axial_ks(coframe, weights)},
        notes={"profiles": (A, B, C)},
    )


# -- non-Einstein fixture: conformal rescaling of the half-flat metric --------

def build_conformal_ii(p):
    inner = build_g_ii({"m": p["m"]})

    def omega(s):
        return 1.0 + p["k"] * s**2

    base_coframe = inner.metric.frame_hint

    def coframe(x):
        return omega(x[1]) * base_coframe(x)

    metric = metric_from_coframe(
        "conformal-ii", _CHART, coframe, dict(p),
        {"family": "fixture", "frame_complex_safe": True},
    )
    ky = inner.ky_tensors["planar"]

    def anomaly_probe(x):
        # squared antisymmetric tensor, lowered with this metric: not a
        # conserved-quantity tensor here, but the natural diagnostic shape
        Y = np.asarray(ky.comps(x))
        xr = np.real(np.asarray(x)).astype(float)
        return Y @ metric.ginv(xr) @ Y.T

    return Bundle(metric, frame=_frame(metric), bianchi=inner.bianchi,
                  notes={"base": "g_II", "anomaly_probe": anomaly_probe})


_BOX2 = ((-1.0, 1.0), (0.8, 3.0), (-1.0, 1.0), (-1.0, 1.0))

ENTRIES = (
    CatalogEntry(
        "g_II", "bianchi-ii", "half-flat-planar",
        "Half-flat metric with a planar translational pair of symmetries",
        {"m": 1.0}, {"m": (0.0, None)},
        {"chart": _CHART, "petrov_minus": "D", "hyperkahler": True,
         "ricci_flat": True, "potential": "mc-linear"},
        build_g_ii, _BOX2,
    ),
    CatalogEntry(
        "G_II", "bianchi-ii", "half-flat-triaxial",
        "Tri-axial half-flat deformation with exponential profile",
        {"lam": -0.5}, {},
        {"chart": _CHART, "petrov_minus": "I", "hyperkahler": True,
         "ricci_flat": True},
        build_G_ii, _BOX2,
    ),
    CatalogEntry(
        "g_T", "bianchi-ii", "vacuum-two-exponent",
        "Two-exponent Ricci-flat family; the default closes the half-flat limit",
        {"a": 1.0, "b": 0.0}, {},
        {"chart": "taub", "hyperkahler": True, "ricci_flat": True},
        build_g_taub, ((-1.0, 1.0), (0.3, 1.5), (-1.0, 1.0), (-1.0, 1.0)),
    ),
    CatalogEntry(
        "g_K", "bianchi-ii", "kahler-scalar-flat",
        "Scalar-flat Kahler metric with rational profile",
        {"beta": 1.0, "gamma": 1.0}, {},
        {"chart": "kahler2", "petrov_minus": "D", "kahler": True,
         "scalar_flat": True},
        build_g_k, ((-1.0, 1.0), (1.5, 4.0), (-1.0, 1.0), (-1.0, 1.0)),
    ),
    CatalogEntry(
        "g_E", "bianchi-ii", "einstein-one-sided-weyl",
        "Einstein metric whose Weyl tensor lives in a single duality block",
        {"lam": 1.0, "beta": 1.0, "gamma": 1.0}, {"lam": (0.0, None)},
        {"chart": "einstein2", "petrov_minus": "D", "einstein": True},
        build_g_e, ((-1.0, 1.0), (0.2, 0.8), (-1.0, 1.0), (-1.0, 1.0)),
    ),
    CatalogEntry(
        "g_KE", "bianchi-ii", "kahler-einstein",
        "Kahler-Einstein metric with cubic-profile potential",
        {"lam": -1.5, "delta": 1.0, "beta": 1.0, "gamma": 1.0},
        {"delta": (0.0, None)},
        {"chart": "ke2", "einstein": True, "kahler": True},
        build_g_ke, ((-1.0, 1.0), (0.5, 2.0), (-1.0, 1.0), (-1.0, 1.0)),
    ),
    CatalogEntry(
        "hj1-generic", "biaxial", "biaxial-generic",
        "Generic diagonal bi-axial metric with polynomial profiles",
        {"a0": 1.0, "a1": 0.3, "a2": 0.05,
         "b0": 0.8, "b1": 0.1, "b2": 0.02,
         "c0": 1.2, "c1": 0.2, "c2": 0.03,
         "beta": 1.0, "gamma": 1.0},
        {},
        {"chart": "hj1"},
        build_hj_biaxial, ((-1.0, 1.0), (0.5, 2.5), (-1.0, 1.0), (-1.0, 1.0)),
    ),
    CatalogEntry(
        "conformal-ii", "fixture", "conformal-fixture",
        "Conformally rescaled half-flat metric; deliberately not Einstein",
        {"m": 1.0, "k": 0.125}, {"k": (0.0, None)},
        {"chart": _CHART},
        build_conformal_ii, _BOX2,
    ),
)
