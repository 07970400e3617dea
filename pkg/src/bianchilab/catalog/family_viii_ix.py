"""Rotation-group geometries: tri-axial vacua and their bi-axial limits."""

from __future__ import annotations

import numpy as np

from ..curvature import natural_frame
from ..errors import ParameterRangeError
from ..forms import KForm, exterior_derivative
from ..metric import VectorField
from .bianchi import bianchi_ix, bianchi_viii
from .records import Bundle, CatalogEntry, diagonal_coframe, metric_from_coframe


def _closed_structures(model, profiles):
    """Triplet Omega_i = d(w_i(x0) sigma_i); closedness holds by construction."""

    out = []
    for i, (w, sign) in enumerate(profiles):
        def comps(x, _i=i, _w=w):
            return _w(x[0]) * np.asarray(model.sigma[_i].comps(x))

        out.append(exterior_derivative(KForm(1, model.chart_id, comps)))
        if sign < 0:
            base = out[-1]
            out[-1] = KForm(2, model.chart_id,
                            lambda x, _b=base: -np.asarray(_b.comps(x)))
    return out


def _dpsi(chart_id):
    return VectorField("dpsi", chart_id, lambda c: np.array([0.0, 0.0, 0.0, 1.0]))


def build_ix_triaxial(p):
    l1, l2, l3 = p["lam1"], p["lam2"], p["lam3"]
    if not l1 < l2 < l3:
        raise ParameterRangeError("ix-triaxial: need lam1 < lam2 < lam3")
    model = bianchi_ix()

    def roots(lam):
        return np.sqrt(lam - l1), np.sqrt(lam - l2), np.sqrt(lam - l3)

    def coefs(x):
        A, B, C = roots(x[0])
        return (1.0 / (2.0 * np.sqrt(A * B * C)),
                np.sqrt(B * C / A), np.sqrt(C * A / B), np.sqrt(A * B / C))

    metric = metric_from_coframe(
        "ix-triaxial", "bianchi9", diagonal_coframe(model, coefs, 0), dict(p),
        {"family": "bianchi-ix", "hyperkahler": True, "ricci_flat": True,
         "frame_complex_safe": True},
        domain=lambda c: np.real(c[0]) > l3,
    )

    def cart(x):
        A, B, C = roots(x[0])
        th, ph = x[1], x[2]
        return (A * np.sin(th) * np.cos(ph), B * np.sin(th) * np.sin(ph),
                C * np.cos(th))

    return Bundle(
        metric,
        frame=natural_frame(metric),
        bianchi=model,
        complex_structures=_closed_structures(
            model,
            [(lambda s, _l=_l: np.sqrt(s - _l), +1) for _l in (l1, l2, l3)],
        ),
        notes={
            "potential": "pot-ix",
            "triholomorphic": ["R1", "R2", "R3"],
            "cartesian_fields": cart,
            "moment_killing_vector": _dpsi("bianchi9"),
        },
    )


def build_viii_triaxial(p):
    m1, m2, m3 = p["mu1"], p["mu2"], p["mu3"]
    if not (max(m1, m2) < m3):
        raise ParameterRangeError("viii-triaxial: need max(mu1, mu2) < mu3")
    model = bianchi_viii()

    def roots(mu):
        return np.sqrt(mu - m1), np.sqrt(mu - m2), np.sqrt(m3 - mu)

    def coefs(x):
        A, B, C = roots(x[0])
        return (1.0 / (2.0 * np.sqrt(A * B * C)),
                np.sqrt(B * C / A), np.sqrt(C * A / B), np.sqrt(A * B / C))

    metric = metric_from_coframe(
        "viii-triaxial", "bianchi8", diagonal_coframe(model, coefs, 0), dict(p),
        {"family": "bianchi-viii", "hyperkahler": True, "ricci_flat": True,
         "frame_complex_safe": True},
        domain=lambda c: max(m1, m2) < np.real(c[0]) < m3,
    )

    def cart(x):
        A, B, C = roots(x[0])
        tau, ph = x[1], x[2]
        return (A * np.sinh(tau) * np.cos(ph), B * np.sinh(tau) * np.sin(ph),
                C * np.cosh(tau))

    return Bundle(
        metric,
        frame=natural_frame(metric),
        bianchi=model,
        complex_structures=_closed_structures(
            model,
            [(lambda s: np.sqrt(s - m1), +1),
             (lambda s: np.sqrt(s - m2), +1),
             (lambda s: np.sqrt(m3 - s), -1)],
        ),
        notes={
            "triholomorphic": ["R1", "R2", "R3"],
            "cartesian_fields": cart,
            "moment_killing_vector": _dpsi("bianchi8"),
        },
    )


def _biaxial(name, p, model_fn, chart_id, axial_sq, family, extra_notes,
             flip=False):
    """Shared layout: g = s/axial * ds^2 + axial/s * s3^2 + s (s1^2 + s2^2)."""
    model = model_fn(chart_id=chart_id)
    s3_sign = -1.0 if flip else 1.0

    def coefs(x):
        s = x[0]
        w = axial_sq(s)
        return (np.sqrt(s / w), np.sqrt(s), np.sqrt(s),
                s3_sign * np.sqrt(w / s))

    metric = metric_from_coframe(
        name, chart_id, diagonal_coframe(model, coefs, 0), dict(p),
        {"family": family, "hyperkahler": True, "ricci_flat": True,
         "frame_complex_safe": True},
        domain=lambda c: np.real(axial_sq(c[0])) > 0,
    )
    sign3 = -1 if model.label == "VIII" else +1
    bundle = Bundle(
        metric,
        frame=natural_frame(metric),
        bianchi=model,
        complex_structures=_closed_structures(
            model,
            [(lambda s: np.sqrt(axial_sq(s)), +1),
             (lambda s: np.sqrt(axial_sq(s)), +1),
             (lambda s: s, sign3)],
        ),
        notes={"triholomorphic": ["R1", "R2", "R3"],
               "moment_killing_vector": _dpsi(chart_id), **extra_notes},
    )
    return bundle


def build_eh1(p):
    c = p["c"]
    return _biaxial("eh-singular", p, bianchi_ix, "biaxial9",
                    lambda s: s**2 + c**2, "bianchi-ix", {})


def build_eh2(p):
    c = p["c"]

    def cart(x):
        s, th, ph = x[0], x[1], x[2]
        w = np.sqrt(s**2 - c**2)
        return (w * np.sin(th) * np.cos(ph), w * np.sin(th) * np.sin(ph),
                s * np.cos(th))

    return _biaxial(
        "eh", p, bianchi_ix, "biaxial9", lambda s: s**2 - c**2, "bianchi-ix",
        {"potential": "two-centre", "cartesian_fields": cart},
    )


def build_gd(p):
    c = p["c"]

    def cart(x):
        s, tau, ph = x[0], x[1], x[2]
        w = np.sqrt(c**2 - s**2)
        return (w * np.sinh(tau) * np.cos(ph), w * np.sinh(tau) * np.sin(ph),
                s * np.cosh(tau))

    return _biaxial(
        "gd-biaxial", p, bianchi_viii, "biaxial8", lambda s: c**2 - s**2,
        "bianchi-viii",
        {"potential": "gd-mc", "cartesian_fields": cart},
        # the radial coordinate here runs against the tri-axial one, so one
        # frame leg is reflected to keep the orientation of the family
        flip=True,
    )


_ANG = ((0.3, 2.8), (-2.8, 2.8), (-2.8, 2.8))

ENTRIES = (
    CatalogEntry(
        "ix-triaxial", "bianchi-ix", "triaxial-rotation",
        "Tri-axial vacuum metric on the rotation group",
        {"lam1": 1.0, "lam2": 2.0, "lam3": 3.0}, {},
        {"chart": "bianchi9", "hyperkahler": True, "ricci_flat": True,
         "potential": "pot-ix"},
        build_ix_triaxial, ((3.6, 6.0),) + _ANG,
    ),
    CatalogEntry(
        "viii-triaxial", "bianchi-viii", "triaxial-lorentz-rotation",
        "Tri-axial vacuum metric on the split rotation group",
        {"mu1": 1.0, "mu2": 2.0, "mu3": 5.0}, {},
        {"chart": "bianchi8", "hyperkahler": True, "ricci_flat": True},
        build_viii_triaxial,
        ((2.6, 4.4), (0.3, 1.5), (-2.8, 2.8), (-2.8, 2.8)),
    ),
    CatalogEntry(
        "eh-singular", "bianchi-ix", "biaxial-singular",
        "Bi-axial limit with the singular sign of the axial profile",
        {"c": 1.0}, {"c": (0.0, None)},
        {"chart": "biaxial9", "petrov_minus": "D", "hyperkahler": True,
         "ricci_flat": True},
        build_eh1, ((0.6, 2.4),) + _ANG,
    ),
    CatalogEntry(
        "eh", "bianchi-ix", "biaxial-complete",
        "Complete bi-axial limit; a two-centre geometry in disguise",
        {"c": 1.0}, {"c": (0.0, None)},
        {"chart": "biaxial9", "petrov_minus": "D", "hyperkahler": True,
         "ricci_flat": True, "potential": "two-centre"},
        build_eh2, ((1.4, 3.0),) + _ANG,
    ),
    CatalogEntry(
        "gd-biaxial", "bianchi-viii", "biaxial-split",
        "Bi-axial metric on the split rotation group",
        {"c": 2.0}, {"c": (0.0, None)},
        {"chart": "biaxial8", "petrov_minus": "D", "hyperkahler": True,
         "ricci_flat": True, "potential": "gd-mc"},
        build_gd, ((0.5, 1.7), (0.3, 1.5), (-2.8, 2.8), (-2.8, 2.8)),
    ),
)
