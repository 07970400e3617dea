"""Diagonal half-flat geometries with solvable planar symmetry groups."""

from __future__ import annotations

import numpy as np

from ..curvature import natural_frame
from ..errors import ParameterRangeError
from ..forms import KForm
from .bianchi import bianchi_vi, bianchi_vii
from .records import (Bundle, CatalogEntry, diagonal_coframe,
                      metric_from_coframe, rotated_parallel_structures)


def _wedge2(u, v):
    return np.outer(u, v) - np.outer(v, u)


def _dchi_row(x):
    out = np.zeros(4, dtype=np.result_type(np.asarray(x)))
    out[0] = 1.0
    return out


def _structures(model, c, pair):
    """Triplet J_i built from the radial profile pair (p, q) = pair(chi).

    J1 = c (p' dchi ^ s1 + p s2 ^ s3), J2 = c (q' dchi ^ s2 + q s3 ^ s1),
    J3 = c^2 p q dchi ^ s3 + s1 ^ s2, with (p, q) = (sin, cos) or (cosh, sinh).
    """

    n2 = model.structure_constants[1]

    def comps(x, i):
        chi = x[0]
        p, q, dp, dq = pair(chi)
        dchi = _dchi_row(x)
        s1, s2, s3 = (np.asarray(f.comps(x)) for f in model.sigma)
        if i == 0:
            return c * (dp * _wedge2(dchi, s1) + p * _wedge2(s2, s3))
        if i == 1:
            return c * (dq * _wedge2(dchi, s2) + n2 * q * _wedge2(s3, s1))
        return c**2 * p * q * _wedge2(dchi, s3) + _wedge2(s1, s2)

    return [KForm(2, model.chart_id, lambda x, _i=i: comps(x, _i))
            for i in range(3)]



def _vi_pair(chi):
    return np.sin(chi), np.cos(chi), np.cos(chi), -np.sin(chi)


def _vii_pair(chi):
    return np.cosh(chi), np.sinh(chi), np.sinh(chi), np.cosh(chi)


def _build(label, p, model_fn, pair, beta_gamma, lam_key=None):
    c = p["c"]
    lam = p.get(lam_key, 0.0) if lam_key else 0.0
    if lam_key and lam == 0:
        raise ParameterRangeError(f"{label}: lam must be nonzero")
    model = model_fn()

    def coefs(x):
        chi = x[0]
        pp, qq, _, _ = pair(chi)
        w = np.sqrt(c**2 * pp * qq) * np.exp(-lam * chi)
        b, g = beta_gamma(chi)
        return (w, np.sqrt(b), np.sqrt(g), w)

    metric = metric_from_coframe(
        label, model.chart_id, diagonal_coframe(model, coefs, 0), dict(p),
        {"family": f"bianchi-{model.label.lower()}", "hyperkahler": True,
         "ricci_flat": True, "frame_complex_safe": True},
    )
    return Bundle(
        metric,
        frame=natural_frame(metric),
        bianchi=model,
        complex_structures=(
            rotated_parallel_structures(metric, model.chart_id, 2,
                                        lambda x: lam * x[1])
            if lam_key else _structures(model, c, pair)),
    )


def build_g_vi(p):
    bundle = _build("g_VI", p, bianchi_vi, _vi_pair,
                    lambda chi: (1.0 / np.tan(chi), np.tan(chi)))
    c = p["c"]
    bundle.notes = {
        "triholomorphic": ["L1", "L2", "L3"],
        "potential": "mc-vi",
        "cartesian_fields": lambda x: (
            c * np.cosh(x[1]) * np.sin(x[0]),
            c * np.sinh(x[1]) * np.cos(x[0]),
            x[3],
        ),
        "moment_killing": "L2",
    }
    return bundle


def build_G_vi(p):
    bundle = _build("G_VI", p, bianchi_vi, _vi_pair,
                    lambda chi: (1.0 / np.tan(chi), np.tan(chi)),
                    lam_key="lam")
    c, lam = p["c"], p["lam"]

    def cart(x):
        chi, th = x[0], x[1]
        w = chi + 1j * th
        xy = c * np.exp(-lam * w) / (1 + lam**2) * (np.sin(w) - lam * np.cos(w))
        return (np.real(xy), np.imag(xy), x[3])

    bundle.notes = {
        "triholomorphic": ["L2", "L3"],
        "holomorphic_doublet": {"L1": (0, 1)},
        "potential": "mc-vi",
        "cartesian_fields": cart,
        "moment_killing": "L2",
    }
    return bundle


def build_g_vii(p):
    bundle = _build("g_VII", p, bianchi_vii, _vii_pair,
                    lambda chi: (np.tanh(chi), 1.0 / np.tanh(chi)))
    c = p["c"]
    bundle.notes = {
        "triholomorphic": ["L1", "L2", "L3"],
        "potential": "mc-vii",
        "cartesian_fields": lambda x: (
            c * np.cosh(x[0]) * np.cos(x[1]),
            c * np.sinh(x[0]) * np.sin(x[1]),
            x[3],
        ),
        "moment_killing": "L2",
    }
    return bundle


def build_G_vii(p):
    bundle = _build("G_VII", p, bianchi_vii, _vii_pair,
                    lambda chi: (np.tanh(chi), 1.0 / np.tanh(chi)),
                    lam_key="lam")
    c, lam = p["c"], p["lam"]

    def cart(x):
        w = x[0] + 1j * x[1]
        xy = 0.5 * c * (np.exp((1 - lam) * w) / (1 - lam)
                        + np.exp(-(1 + lam) * w) / (1 + lam))
        return (np.real(xy), np.imag(xy), x[3])

    bundle.notes = {
        "triholomorphic": ["L2", "L3"],
        "holomorphic_doublet": {"L1": (0, 1)},
        "potential": "mc-vii",
        "cartesian_fields": cart,
        "moment_killing": "L2",
    }
    return bundle


_BOX_VI = ((0.4, 1.1), (-0.8, 0.8), (-1.0, 1.0), (-1.0, 1.0))
_BOX_VII = ((0.4, 1.6), (-0.8, 0.8), (-1.0, 1.0), (-1.0, 1.0))

ENTRIES = (
    CatalogEntry(
        "g_VI", "bianchi-vi0", "half-flat-vi",
        "Half-flat metric on the hyperbolic-rotation group, trigonometric profile",
        {"c": 1.0}, {"c": (0.0, None)},
        {"chart": "bianchi6", "petrov_minus": "I", "hyperkahler": True,
         "ricci_flat": True, "potential": "mc-vi"},
        build_g_vi, _BOX_VI,
    ),
    CatalogEntry(
        "G_VI", "bianchi-vi0", "half-flat-vi-deformed",
        "Exponentially deformed half-flat metric, hyperbolic-rotation group",
        {"c": 1.0, "lam": 0.5}, {"c": (0.0, None)},
        {"chart": "bianchi6", "petrov_minus": "I", "hyperkahler": True,
         "ricci_flat": True},
        build_G_vi, _BOX_VI,
    ),
    CatalogEntry(
        "g_VII", "bianchi-vii0", "half-flat-vii",
        "Half-flat metric on the euclidean-rotation group, hyperbolic profile",
        {"c": 1.0}, {"c": (0.0, None)},
        {"chart": "bianchi7", "petrov_minus": "I", "hyperkahler": True,
         "ricci_flat": True, "potential": "mc-vii"},
        build_g_vii, _BOX_VII,
    ),
    CatalogEntry(
        "G_VII", "bianchi-vii0", "half-flat-vii-deformed",
        "Exponentially deformed half-flat metric, euclidean-rotation group",
        {"c": 1.0, "lam": 0.5}, {"c": (0.0, None)},
        {"chart": "bianchi7", "petrov_minus": "I", "hyperkahler": True,
         "ricci_flat": True},
        build_G_vii, _BOX_VII,
    ),
)
