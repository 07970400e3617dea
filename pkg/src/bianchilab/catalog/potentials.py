"""Harmonic potentials, connection 1-forms, and flat 3-metrics by name."""

from __future__ import annotations

import numpy as np

from ..errors import CatalogMissError, ParameterRangeError
from ..flat3 import Flat3Metric, pullback_flat3
from ..forms import KForm
from ..multicentre import MultiCentreData

__all__ = ["potential_library", "POTENTIALS", "flat3_by_chart"]


# ---------------------------------------------------------------------------
# flat 3-metrics in the curvilinear charts
# ---------------------------------------------------------------------------

def flat_cart3():
    return Flat3Metric(lambda x: np.eye(3), 1.0, "cart3")


def flat_ell3(c):
    """Planar elliptic coordinates (xi, eta, z), xi > c > eta > 0."""

    def comps(x):
        xi, eta = x[0], x[1]
        d = xi**2 - eta**2
        return np.diag(
            [d / (xi**2 - c**2), d / (c**2 - eta**2), 1.0 + 0.0 * xi]
        )

    # (xi, eta, z) is a left-handed chart of flat space: orientation -1
    return Flat3Metric(comps, -1.0, "ell3")


def flat_parab3():
    """Squared-parabolic coordinates: X=(xi^2-eta^2)/2, Y=xi eta."""

    def comps(x):
        r2 = x[0] ** 2 + x[1] ** 2
        return np.diag([r2, r2, 1.0 + 0.0 * r2])

    return Flat3Metric(comps, 1.0, "parab3")


def flat_vi3(c):
    def comps(x):
        f = c**2 * (np.cosh(x[1]) ** 2 - np.sin(x[0]) ** 2)
        return np.diag([f, f, 1.0 + 0.0 * f])

    return Flat3Metric(comps, 1.0, "vi3")


def flat_vii3(c):
    def comps(x):
        f = c**2 * (np.cosh(x[0]) ** 2 - np.cos(x[1]) ** 2)
        return np.diag([f, f, 1.0 + 0.0 * f])

    return Flat3Metric(comps, 1.0, "vii3")


def flat_ell9(lams):
    """Confocal elliptic coordinates (lam, mu, nu) of the 3-space."""
    l1, l2, l3 = lams

    def R(u):
        return (u - l1) * (u - l2) * (u - l3)

    def comps(x):
        lam, mu, nu = x
        g1 = (lam - mu) * (lam - nu) / (4 * R(lam))
        g2 = (mu - lam) * (mu - nu) / (4 * R(mu))
        g3 = -(nu - lam) * (nu - mu) / (4 * (-R(nu)))
        return np.diag([g1, g2, g3])

    return Flat3Metric(comps, 1.0, "ell9")


def flat_ix3(lams):
    l1, l2, l3 = lams

    def to_cart(x):
        lam, th, ph = x
        return np.array(
            [
                np.sqrt(lam - l1) * np.sin(th) * np.cos(ph),
                np.sqrt(lam - l2) * np.sin(th) * np.sin(ph),
                np.sqrt(lam - l3) * np.cos(th),
            ]
        )

    return pullback_flat3("ix3", to_cart)


def flat_biax3(c):
    def to_cart(x):
        s, th, ph = x
        rad = np.sqrt(s**2 - c**2)
        return np.array(
            [rad * np.sin(th) * np.cos(ph), rad * np.sin(th) * np.sin(ph),
             s * np.cos(th)]
        )

    return pullback_flat3("biax3", to_cart)


def flat_gd3(c):
    def to_cart(x):
        s, tau, ph = x
        rad = np.sqrt(c**2 - s**2)
        return np.array(
            [rad * np.sinh(tau) * np.cos(ph), rad * np.sinh(tau) * np.sin(ph),
             s * np.cosh(tau)]
        )

    return pullback_flat3("gd3", to_cart)


def flat_vi_nd3(v0, a, r0=1.0):
    def comps(x):
        r, th = x[0], x[1]
        rho = np.log(r / r0)
        D = (a * np.cosh(2 * th) - np.sqrt(a**2 - 1) * np.sinh(2 * th)
             - np.sin(rho))
        f = v0**2 * D
        return np.diag([f, 4 * r**2 * f, 1.0 + 0.0 * f])

    return Flat3Metric(comps, 1.0, "vi-nd3")


# ---------------------------------------------------------------------------
# potentials
# ---------------------------------------------------------------------------

def _theta(chart_id, comps):
    return KForm(1, chart_id, comps)


def _z_form(chart_id, fz):
    return _theta(chart_id, lambda x: np.array([0.0 * x[0], 0.0 * x[0], fz(x)]))


def _mc_linear(params):
    theta = _theta("cart3", lambda x: np.array([0.0 * x[0], 0.0 * x[0], x[1]]))
    return MultiCentreData(
        "mc-linear", lambda x: x[0], theta, +1, flat_cart3(),
        cartesian_map=lambda x: np.asarray(x),
    )


def _mc_vi(params):
    c = params["c"]

    def V(x):
        return (np.sin(x[0]) * np.cos(x[0])
                / (np.cosh(x[1]) ** 2 - np.sin(x[0]) ** 2))

    def thz(x):
        return -np.sinh(x[1]) * np.cosh(x[1]) / (np.cosh(x[1]) ** 2
                                                 - np.sin(x[0]) ** 2)

    def cart(x):
        return np.array(
            [c * np.cosh(x[1]) * np.sin(x[0]), c * np.sinh(x[1]) * np.cos(x[0]),
             x[2]]
        )

    return MultiCentreData("mc-vi", V, _z_form("vi3", thz), -1, flat_vi3(c),
                           cartesian_map=cart, params={"c": c})


def _mc_vii(params):
    c = params["c"]

    def V(x):
        return (np.sinh(x[0]) * np.cosh(x[0])
                / (np.cosh(x[0]) ** 2 - np.cos(x[1]) ** 2))

    def thz(x):
        return -np.sin(x[1]) * np.cos(x[1]) / (np.cosh(x[0]) ** 2
                                               - np.cos(x[1]) ** 2)

    def cart(x):
        return np.array(
            [c * np.cosh(x[0]) * np.cos(x[1]), c * np.sinh(x[0]) * np.sin(x[1]),
             x[2]]
        )

    return MultiCentreData("mc-vii", V, _z_form("vii3", thz), +1, flat_vii3(c),
                           cartesian_map=cart, params={"c": c})


def _v6_elliptic(c):
    return lambda x: x[1] * np.sqrt(c**2 - x[1] ** 2) / (x[0] ** 2 - x[1] ** 2)


def _v7_elliptic(c):
    return lambda x: x[0] * np.sqrt(x[0] ** 2 - c**2) / (x[0] ** 2 - x[1] ** 2)


def _th6_elliptic(c):
    return lambda x: -x[0] * np.sqrt(x[0] ** 2 - c**2) / (x[0] ** 2 - x[1] ** 2)


def _th7_elliptic(c):
    return lambda x: -x[1] * np.sqrt(c**2 - x[1] ** 2) / (x[0] ** 2 - x[1] ** 2)


def _ell_cart(c):
    def cart(x):
        xi, eta = x[0], x[1]
        return np.array(
            [xi * eta / c,
             np.sqrt(xi**2 - c**2) * np.sqrt(c**2 - eta**2) / c,
             x[2]]
        )

    return cart


def _elliptic_vi(params):
    c = params["c"]
    return MultiCentreData("elliptic-vi", _v6_elliptic(c),
                           _z_form("ell3", _th6_elliptic(c)), -1, flat_ell3(c),
                           cartesian_map=_ell_cart(c), params={"c": c})


def _elliptic_vii(params):
    c = params["c"]
    return MultiCentreData("elliptic-vii", _v7_elliptic(c),
                           _z_form("ell3", _th7_elliptic(c)), +1, flat_ell3(c),
                           cartesian_map=_ell_cart(c), params={"c": c})


def _potva(params):
    c, v0, a, b = params["c"], params["v0"], params["a"], params["b"]
    v6, v7 = _v6_elliptic(c), _v7_elliptic(c)
    t6, t7 = _th6_elliptic(c), _th7_elliptic(c)

    def V(x):
        return v0 + a * v7(x) + b * v6(x)

    def thz(x):
        return a * t7(x) - b * t6(x)

    return MultiCentreData("potva", V, _z_form("ell3", thz), +1, flat_ell3(c),
                           cartesian_map=_ell_cart(c),
                           params={"c": c, "v0": v0, "a": a, "b": b})


def _nd_parabolic(params):
    v0, a, b = params["v0"], params["a"], params["b"]

    def V(x):
        return v0 + (a * x[0] + b * x[1]) / (x[0] ** 2 + x[1] ** 2)

    def G(x):
        return (b * x[0] - a * x[1]) / (x[0] ** 2 + x[1] ** 2)

    def cart(x):
        return np.array([0.5 * (x[0] ** 2 - x[1] ** 2), x[0] * x[1], x[2]])

    return MultiCentreData("nd-parabolic", V, _z_form("parab3", G), +1,
                           flat_parab3(), cartesian_map=cart,
                           params={"v0": v0, "a": a, "b": b})


def _potnd_cartesian(params):
    v0, a, b = params["v0"], params["a"], params["b"]

    def V(x):
        R = np.sqrt(x[0] ** 2 + x[1] ** 2)
        return v0 + (a * np.sqrt(R + x[0]) + b * np.sqrt(R - x[0])) / (2 * R)

    def thz(x):
        R = np.sqrt(x[0] ** 2 + x[1] ** 2)
        xi = np.sqrt(R + x[0])
        eta = x[1] / xi  # xi*eta = Y fixes the branch
        return (b * xi - a * eta) / (2 * R)

    return MultiCentreData("potnd-cartesian", V, _z_form("cart3", thz), +1,
                           flat_cart3(), cartesian_map=lambda x: np.asarray(x),
                           params={"v0": v0, "a": a, "b": b})


def _ix_elliptic_pair(lams):
    l1, l2, l3 = lams

    def A(lam):
        return np.sqrt(lam - l1)

    def B(lam):
        return np.sqrt(lam - l2)

    def C(lam):
        return np.sqrt(lam - l3)

    return A, B, C


def _pot_ix(params):
    lams = (params["lam1"], params["lam2"], params["lam3"])
    A, B, C = _ix_elliptic_pair(lams)

    def V(x):
        lam, th, ph = x
        a, b, c = A(lam), B(lam), C(lam)
        inv = (a * b / c) * np.cos(th) ** 2 + (c / (a * b)) * (
            a**2 * np.sin(ph) ** 2 + b**2 * np.cos(ph) ** 2
        ) * np.sin(th) ** 2
        return 1.0 / inv

    def theta_comps(x):
        lam, th, ph = x
        a, b, c = A(lam), B(lam), C(lam)
        v = V(x)
        th_theta = -v * (c / (a * b)) * (a**2 - b**2) * np.sin(th) \
            * np.sin(ph) * np.cos(ph)
        th_phi = -v * (a * b / c) * np.cos(th)
        return np.array([0.0 * lam, th_theta, th_phi])

    return MultiCentreData("pot-ix", V, _theta("ix3", theta_comps), -1,
                           flat_ix3(lams),
                           cartesian_map=flat_ix3(lams).cartesian_map,
                           params=dict(zip(("lam1", "lam2", "lam3"), lams)))


def _pot_ix_elliptic(params):
    lams = (params["lam1"], params["lam2"], params["lam3"])
    l1, l2, l3 = lams

    def R(u):
        return (u - l1) * (u - l2) * (u - l3)

    def N(x, y):
        return (x - l3) * (y - l3) - (l3 - l1) * (l3 - l2)

    def V(x):
        lam, mu, nu = x
        return np.sqrt(R(lam)) / ((lam - mu) * (lam - nu))

    def theta_comps(x):
        lam, mu, nu = x
        S = R(mu)
        T = -R(nu)
        pref = 1.0 / (2 * N(mu, nu))
        t_mu = pref * np.sqrt(T / S) * N(lam, mu) / (lam - nu)
        t_nu = -pref * np.sqrt(S / T) * N(lam, nu) / (lam - mu)
        return np.array([0.0 * lam, t_mu, t_nu])

    return MultiCentreData("pot-ix-elliptic", V, _theta("ell9", theta_comps),
                           -1, flat_ell9(lams),
                           params=dict(zip(("lam1", "lam2", "lam3"), lams)))


def _dphi_comps(x):
    rho2 = x[0] ** 2 + x[1] ** 2
    return np.array([-x[1] / rho2, x[0] / rho2, 0.0 * x[0]])


def _two_centre(params):
    c, m_plus, m_minus = params["c"], params["m_plus"], params["m_minus"]

    def r_pm(x, sgn):
        return np.sqrt(x[0] ** 2 + x[1] ** 2 + (x[2] + sgn * c) ** 2)

    def V(x):
        return m_plus / r_pm(x, +1) + m_minus / r_pm(x, -1)

    def theta_comps(x):
        f = (m_plus * (x[2] + c) / r_pm(x, +1)
             + m_minus * (x[2] - c) / r_pm(x, -1))
        return f * _dphi_comps(x)

    name = "two-centre" if m_plus >= 0 else "two-centre-dipole"
    return MultiCentreData(name, V, _theta("cart3", theta_comps), +1,
                           flat_cart3(), cartesian_map=lambda x: np.asarray(x),
                           params=dict(params))


def _gd_mc(params):
    c = params["c"]

    def V(x):
        s, tau = x[0], x[1]
        return s / (c**2 * np.cosh(tau) ** 2 - s**2)

    def theta_comps(x):
        s, tau = x[0], x[1]
        f = -(c**2 - s**2) * np.cosh(tau) / (c**2 * np.cosh(tau) ** 2 - s**2)
        return np.array([0.0 * s, 0.0 * s, f])

    gamma = flat_gd3(c)
    return MultiCentreData("gd-mc", V, _theta("gd3", theta_comps), +1, gamma,
                           cartesian_map=gamma.cartesian_map, params={"c": c})


def _potc2(params):
    v0, a, r0 = params["v0"], params["a"], params.get("r0", 1.0)
    k = np.sqrt(a**2 - 1)

    def D(x):
        rho = np.log(x[0] / r0)
        return a * np.cosh(2 * x[1]) - k * np.sinh(2 * x[1]) - np.sin(rho)

    def V(x):
        return np.cos(np.log(x[0] / r0)) / D(x)

    def G(x):
        return (-a * np.sinh(2 * x[1]) + k * np.cosh(2 * x[1])) / D(x)

    return MultiCentreData("potc2", V, _z_form("vi-nd3", G), -1,
                           flat_vi_nd3(v0, a, r0),
                           params={"v0": v0, "a": a, "r0": r0})


_BUILDERS = {
    "mc-linear": (_mc_linear, {}),
    "mc-vi": (_mc_vi, {"c": 1.0}),
    "mc-vii": (_mc_vii, {"c": 1.0}),
    "elliptic-vi": (_elliptic_vi, {"c": 1.0}),
    "elliptic-vii": (_elliptic_vii, {"c": 1.0}),
    "potva": (_potva, {"c": 1.0, "v0": 0.0, "a": 1.0, "b": 1.0}),
    "nd-parabolic": (_nd_parabolic, {"v0": 1.0, "a": 1.0, "b": 1.0}),
    "potnd-cartesian": (_potnd_cartesian, {"v0": 1.0, "a": 1.0, "b": 1.0}),
    "pot-ix": (_pot_ix, {"lam1": 1.0, "lam2": 2.0, "lam3": 3.0}),
    "pot-ix-elliptic": (_pot_ix_elliptic, {"lam1": 1.0, "lam2": 2.0, "lam3": 3.0}),
    "two-centre": (_two_centre, {"c": 1.0, "m_plus": 0.5, "m_minus": 0.5}),
    "two-centre-dipole": (_two_centre,
                          {"c": 1.0, "m_plus": -0.5, "m_minus": 0.5}),
    "gd-mc": (_gd_mc, {"c": 2.0}),
    "potc2": (_potc2, {"v0": 1.0, "a": 2.0, "r0": 1.0}),
}

POTENTIALS = tuple(sorted(_BUILDERS))


def potential_library(name, **params) -> MultiCentreData:
    """Named (V, theta, gamma0) data with defaults filled in."""
    if name not in _BUILDERS:
        import difflib

        close = difflib.get_close_matches(name, _BUILDERS, n=3, cutoff=0.4)
        raise CatalogMissError(name, close)
    builder, defaults = _BUILDERS[name]
    merged = dict(defaults)
    unknown = set(params) - set(defaults)
    if unknown:
        raise ParameterRangeError(
            f"{name}: unknown parameters {sorted(unknown)}"
        )
    merged.update(params)
    return builder(merged)
