"""Differential forms in coordinate components.

A degree-k form is stored as a fully antisymmetric rank-k component array,
with the convention  omega = (1/k!) A[i1..ik] dx^i1 ^ ... ^ dx^ik,  so for a
1-form A[i] are the plain coefficients and for a 2-form A[i,j] carries
(dx^i^dx^j)[i,j] = +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial

import numpy as np

from . import engine
from .errors import DegreeOverflowError

_PERM_CACHE = {}


def _perms(k):
    if k not in _PERM_CACHE:
        out = []
        for p in permutations(range(k)):
            sign = 1
            seen = list(p)
            # parity via inversion count
            inv = sum(
                1
                for a in range(k)
                for b in range(a + 1, k)
                if seen[a] > seen[b]
            )
            sign = -1 if inv % 2 else 1
            out.append((p, sign))
        _PERM_CACHE[k] = out
    return _PERM_CACHE[k]


def antisymmetrize(T):
    """Full antisymmetrization (projection) of a rank-k array."""
    T = np.asarray(T)
    k = T.ndim
    if k <= 1:
        return T
    acc = np.zeros_like(T)
    for p, sign in _perms(k):
        acc = acc + sign * np.transpose(T, p)
    return acc / factorial(k)


@dataclass
class KForm:
    """A differential form given by a component-array field on a chart."""

    degree: int
    chart_id: str
    comps: object  # callable coords -> antisymmetric array of rank ``degree``

    def __call__(self, coords):
        return np.asarray(self.comps(coords))


def form_from_covector(chart_id, comps):
    return KForm(1, chart_id, comps)


def wedge(a: KForm, b: KForm) -> KForm:
    """Wedge product in the component convention above."""
    if a.chart_id != b.chart_id:
        raise ValueError("wedge of forms on different charts")
    p, q = a.degree, b.degree
    if p + q > 4:
        raise DegreeOverflowError("wedge exceeds top degree")
    coeff = factorial(p + q) / (factorial(p) * factorial(q))

    def comps(x):
        A, B = np.asarray(a.comps(x)), np.asarray(b.comps(x))
        if p == 0:
            return A * B
        if q == 0:
            return B * A
        T = np.tensordot(A, B, axes=0)
        return coeff * antisymmetrize(T)

    return KForm(p + q, a.chart_id, comps)


def exterior_derivative(omega: KForm, cfg=engine.DEFAULT_CFG, domain=None) -> KForm:
    """d(omega); components computed pointwise with the active scheme."""
    if omega.degree >= 4:
        raise DegreeOverflowError("cannot take d of a top-degree form")
    k = omega.degree

    def comps(x):
        P = engine.array_partials(omega.comps, x, cfg, domain=domain)
        return (k + 1) * antisymmetrize(P)

    return KForm(k + 1, omega.chart_id, comps)


def interior_product(K, omega: KForm) -> KForm:
    """i(K) omega, contracting the first slot: (i_K w)(...) = w(K, ...)."""
    if omega.degree == 0:
        raise ValueError("cannot contract a 0-form")

    def comps(x):
        A = np.asarray(omega.comps(x))
        Kv = np.asarray(K(x))
        return np.tensordot(Kv, A, axes=(0, 0))

    return KForm(omega.degree - 1, omega.chart_id, comps)


def constant_form(chart_id, array):
    array = antisymmetrize(np.asarray(array, dtype=float))
    deg = array.ndim
    return KForm(deg, chart_id, lambda x, _a=array: _a)


def coordinate_differential(chart_id, i, dim=4):
    e = np.zeros(dim)
    e[i] = 1.0
    return constant_form(chart_id, e)
