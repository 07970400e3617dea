"""Unimodular homogeneity models: invariant 1-forms and their generators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..forms import KForm
from ..metric import VectorField

STRUCTURE_TRIPLETS = {
    "II": (1, 0, 0),
    "VI0": (1, -1, 0),
    "VII0": (1, 1, 0),
    "VIII": (1, 1, -1),
    "IX": (1, 1, 1),
}


@dataclass
class BianchiModel:
    """Invariant 1-forms sigma_i and the generators L_i on a 4-chart.

    ``algebra`` lists the expected Lie brackets as ((i, j), {k: coeff})
    meaning [L_i, L_j] = sum_k coeff * L_k, indices 0-based into
    ``killing_fields`` (+ ``extra_killing`` as index 3 when present).
    """

    label: str
    structure_constants: tuple
    chart_id: str
    sigma: list
    killing_fields: list
    extra_killing: VectorField = None
    algebra: list = field(default_factory=list)

    def __post_init__(self):
        if not self.algebra:
            n1, n2, n3 = self.structure_constants
            self.algebra = [
                ((0, 1), {2: n3}),
                ((1, 2), {0: n1}),
                ((2, 0), {1: n2}),
            ]


def _one_form(chart_id, comps):
    return KForm(1, chart_id, comps)


def _vf(name, chart_id, comps):
    return VectorField(name, chart_id, comps)


def bianchi_ii(chart_id="bianchi2") -> BianchiModel:
    """Coordinates (t, s, y, z): sigma1 = dt + y dz, sigma2 = dy, sigma3 = dz."""

    def s1(c):
        out = np.zeros(4, dtype=np.result_type(c))
        out[0], out[3] = 1.0, c[2]
        return out

    model = BianchiModel(
        "II",
        STRUCTURE_TRIPLETS["II"],
        chart_id,
        [
            _one_form(chart_id, s1),
            _one_form(chart_id, lambda c: np.array([0.0, 0.0, 1.0, 0.0])),
            _one_form(chart_id, lambda c: np.array([0.0, 0.0, 0.0, 1.0])),
        ],
        [
            _vf("L1", chart_id, lambda c: np.array([1.0, 0.0, 0.0, 0.0])),
            _vf("L2", chart_id,
                lambda c: np.array([-c[3], 0.0, 1.0, 0.0], dtype=np.result_type(c))),
            _vf("L3", chart_id, lambda c: np.array([0.0, 0.0, 0.0, 1.0])),
        ],
        extra_killing=_vf(
            "L4", chart_id,
            lambda c: np.array(
                [-0.5 * (c[2] ** 2 - c[3] ** 2), 0.0, -c[3], c[2]],
                dtype=np.result_type(c),
            ),
        ),
    )
    model.algebra += [((3, 0), {}), ((3, 1), {2: -1}), ((3, 2), {1: 1})]
    return model


def _planar_model(label, chart_id, rot, drot):
    """Shared layout for the two solvable types on (x0, theta, y, z) charts.

    ``rot(theta)`` returns the 2x2 matrix M with (sigma1, sigma2) = M (dy, dz);
    ``drot`` marks the hyperbolic (+1) or elliptic (-1) rotation used by L1.
    """

    def s(c, row):
        M = rot(c[1])
        out = np.zeros(4, dtype=np.result_type(c))
        out[2], out[3] = M[row]
        return out

    return BianchiModel(
        label,
        STRUCTURE_TRIPLETS[label],
        chart_id,
        [
            _one_form(chart_id, lambda c: s(c, 0)),
            _one_form(chart_id, lambda c: s(c, 1)),
            _one_form(chart_id, lambda c: np.array([0.0, 1.0, 0.0, 0.0])),
        ],
        [
            _vf("L1", chart_id,
                lambda c: np.array([0.0, 1.0, c[3], drot * c[2]],
                                   dtype=np.result_type(c))),
            _vf("L2", chart_id, lambda c: np.array([0.0, 0.0, 1.0, 0.0])),
            _vf("L3", chart_id, lambda c: np.array([0.0, 0.0, 0.0, 1.0])),
        ],
        # the generators close on the mirrored table, not on the constants
        # of the invariant coframe
        algebra=[((0, 1), {2: -drot}), ((0, 2), {1: -1.0}), ((1, 2), {})],
    )


def bianchi_vi(chart_id="bianchi6") -> BianchiModel:
    """sigma1 = cosh(th) dy - sinh(th) dz, sigma2 = -sinh(th) dy + cosh(th) dz."""
    return _planar_model(
        "VI0", chart_id,
        lambda th: np.array([[np.cosh(th), -np.sinh(th)],
                             [-np.sinh(th), np.cosh(th)]]),
        drot=+1,
    )


def bianchi_vii(chart_id="bianchi7") -> BianchiModel:
    """sigma1 = cos(th) dy - sin(th) dz, sigma2 = sin(th) dy + cos(th) dz."""
    return _planar_model(
        "VII0", chart_id,
        lambda th: np.array([[np.cos(th), -np.sin(th)],
                             [np.sin(th), np.cos(th)]]),
        drot=-1,
    )


def _su2_like(label, chart_id, sin_, cos_):
    """Types with angular Maurer-Cartan forms on (x0, t1, phi, psi) charts."""

    def s1(c):
        return np.array([0.0, -np.sin(c[2]), 0.0, -np.cos(c[2]) * sin_(c[1])],
                        dtype=np.result_type(c))

    def s2(c):
        return np.array([0.0, np.cos(c[2]), 0.0, -np.sin(c[2]) * sin_(c[1])],
                        dtype=np.result_type(c))

    def s3(c):
        return np.array([0.0, 0.0, 1.0, -cos_(c[1])], dtype=np.result_type(c))

    def r1(c):
        return np.array(
            [0.0, np.sin(c[3]), np.cos(c[3]) / sin_(c[1]),
             np.cos(c[3]) * cos_(c[1]) / sin_(c[1])],
            dtype=np.result_type(c),
        )

    def r2(c):
        return np.array(
            [0.0, -np.cos(c[3]), np.sin(c[3]) / sin_(c[1]),
             np.sin(c[3]) * cos_(c[1]) / sin_(c[1])],
            dtype=np.result_type(c),
        )

    return BianchiModel(
        label,
        STRUCTURE_TRIPLETS[label],
        chart_id,
        [_one_form(chart_id, s1), _one_form(chart_id, s2), _one_form(chart_id, s3)],
        [
            _vf("R1", chart_id, r1),
            _vf("R2", chart_id, r2),
            _vf("R3", chart_id,
                lambda c: np.array([0.0, 0.0, 0.0, -1.0])),
        ],
    )


def bianchi_ix(chart_id="bianchi9") -> BianchiModel:
    return _su2_like("IX", chart_id, np.sin, np.cos)


def bianchi_viii(chart_id="bianchi8") -> BianchiModel:
    return _su2_like("VIII", chart_id, np.sinh, np.cosh)


def nd_parabolic_model(v0, a, b, chart_id="nd1") -> BianchiModel:
    """Generators of the three-parameter family on the (t, xi, eta, z) chart."""

    def l1(c):
        return np.array(
            [-v0**2 * c[3], -(b + 2 * v0 * c[2]), a + 2 * v0 * c[1], c[0]],
            dtype=np.result_type(c),
        )

    model = BianchiModel(
        "VII0" if v0 != 0 else "II",
        (0, 0, 0),  # bracket table supplied explicitly below
        chart_id,
        [],
        [
            _vf("L1", chart_id, l1),
            _vf("L2", chart_id, lambda c: np.array([0.0, 0.0, 0.0, 1.0])),
            _vf("L3", chart_id, lambda c: np.array([1.0, 0.0, 0.0, 0.0])),
        ],
        algebra=[((0, 1), {2: v0**2}), ((1, 2), {}), ((2, 0), {1: 1})],
    )
    return model
