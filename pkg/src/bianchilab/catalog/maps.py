"""Named coordinate maps between the catalog charts, with inverses."""

from __future__ import annotations

import difflib

import numpy as np

from ..errors import CatalogMissError, MapDomainError
from ..metric import CoordinateMap


def _real(x):
    return np.real(np.asarray(x))


# ---------------------------------------------------------------------------
# 4-chart maps
# ---------------------------------------------------------------------------

def _linear_to_halfflat(p):
    """Fiber/cartesian chart of the linear potential read as (t, s, y, z)."""
    return CoordinateMap(
        "mc-cart3", "bianchi2",
        forward=lambda x: np.asarray(x),
        inverse=lambda x: np.asarray(x),
        name="linear-to-halfflat",
    )


def _deformed_ii_cartesian(p):
    """Moment-map coordinates of the deformed half-flat metric."""
    lam = p["lam"]

    def forward(x):
        t, s, y, z = x
        r = np.exp(-lam * s)
        return np.array([t, (r * np.cos(lam * y) - 1.0) / lam,
                         r * np.sin(lam * y) / lam, z])

    def inverse(x):
        t, X, Y, z = x
        s = -np.log((1 + lam * X) ** 2 + (lam * Y) ** 2) / (2 * lam)
        y = np.arctan2(lam * Y, 1 + lam * X) / lam
        return np.array([t, s, y, z])

    return CoordinateMap("bianchi2", "mc-cart3", forward, inverse,
                         name="deformed-ii-cartesian")


def _parabolic_degenerate_to_linear(p):
    """Parabolic chart at vanishing rotation parameter as a linear-potential
    chart: the pulled-back metric is (a^2 + b^2) times the half-flat one."""
    a, b = p["a"], p["b"]
    n = a**2 + b**2

    def forward(x):
        t, xi, eta, z = x
        return np.array([n * z, a * xi + b * eta, b * xi - a * eta, t])

    def inverse(x):
        T, X, Y, Z = x
        return np.array([Z, (a * X + b * Y) / n, (b * X - a * Y) / n, T / n])

    return CoordinateMap("nd1", "mc-cart3", forward, inverse,
                         name="parabolic-degenerate-to-linear")


def _polar_nd_to_parabolic(p):
    """Polar chart of the non-diagonal family back to the parabolic one.

    The radial/angular pair winds twice; the parabolic centre shifts by the
    rescaled dipole parameters.
    """
    v0, a, b = p["v0"], p["a"], p["b"]

    def forward(x):
        r, th, y, z = x
        return np.array([z, -a + r * np.cos(2 * th), -b + r * np.sin(2 * th),
                         y / v0])

    def inverse(x):
        t, xi, eta, zz = x
        u, v = xi + a, eta + b
        return np.array([np.hypot(u, v), 0.5 * np.arctan2(v, u), v0 * zz, t])

    return CoordinateMap("bianchi7nd", "nd1", forward, inverse,
                         name="polar-nd-to-parabolic")


def _degenerate_to_halfflat(p):
    """Chart change exhibiting the degenerate non-diagonal metric as a
    constant multiple of the deformed half-flat one."""
    v0, L, ktil = p["v0"], p["L"], p["ktil"]
    r0 = 1.0 / (2.0 * v0)
    rL = np.sqrt(L)

    def forward(x):
        r, th, y, z = x
        if _real(r) <= 0:
            raise MapDomainError(f"degenerate-to-halfflat: r={r} must be > 0")
        return np.array([(y + (ktil / L) * z) / rL, 0.5 * np.log(r / r0),
                         -th, z / rL])

    def inverse(x):
        t, s, yy, zz = x
        return np.array([r0 * np.exp(2 * s), -yy,
                         rL * t - (ktil / L) * rL * zz, rL * zz])

    return CoordinateMap("bianchi6nd", "bianchi2", forward, inverse,
                         name="degenerate-to-halfflat")


# ---------------------------------------------------------------------------
# 3-space maps
# ---------------------------------------------------------------------------

def _cart_from_parabolic2(p):
    def forward(x):
        xi, eta, z = x
        return np.array([0.5 * (xi**2 - eta**2), xi * eta, z])

    def inverse(x):
        X, Y, z = x
        R = np.hypot(X, Y)
        xi = np.sqrt(R + X)
        return np.array([xi, Y / xi, z])

    return CoordinateMap("parab3", "cart3", forward, inverse,
                         name="cart-from-parabolic2")


def _cart_from_elliptic2(p):
    c = p["c"]

    def forward(x):
        xi, eta, z = x
        if not (_real(xi) > c > _real(eta) > -c):
            raise MapDomainError(
                f"cart-from-elliptic2: need xi > {c} > eta > {-c}, "
                f"got xi={xi}, eta={eta}"
            )
        return np.array([
            xi * eta / c,
            np.sqrt(xi**2 - c**2) * np.sqrt(c**2 - eta**2) / c,
            z,
        ])

    def inverse(x):
        X, Y, z = x
        ssum = X**2 + Y**2 + c**2
        disc = np.sqrt(ssum**2 - 4 * c**2 * X**2)
        xi2 = 0.5 * (ssum + disc)
        xi = np.sqrt(xi2)
        return np.array([xi, c * X / xi, z])

    return CoordinateMap("ell3", "cart3", forward, inverse,
                         name="cart-from-elliptic2")


def _cart_from_vi(p):
    c = p["c"]

    def forward(x):
        chi, th, z = x
        return np.array([c * np.cosh(th) * np.sin(chi),
                         c * np.sinh(th) * np.cos(chi), z])

    return CoordinateMap("vi3", "cart3", forward, name="cart-from-vi")


def _cart_from_vii(p):
    c = p["c"]

    def forward(x):
        chi, th, z = x
        return np.array([c * np.cosh(chi) * np.cos(th),
                         c * np.sinh(chi) * np.sin(th), z])

    return CoordinateMap("vii3", "cart3", forward, name="cart-from-vii")


def _cart_from_polar9(p):
    l1, l2, l3 = p["lam1"], p["lam2"], p["lam3"]

    def forward(x):
        lam, th, ph = x
        if not (_real(lam) > max(l1, l2, l3)):
            raise MapDomainError(
                f"cart-from-polar9: lam={lam} must exceed {max(l1, l2, l3)}"
            )
        return np.array([
            np.sqrt(lam - l1) * np.sin(th) * np.cos(ph),
            np.sqrt(lam - l2) * np.sin(th) * np.sin(ph),
            np.sqrt(lam - l3) * np.cos(th),
        ])

    return CoordinateMap("ix3", "cart3", forward, name="cart-from-polar9")


def _cart_from_polar8(p):
    m1, m2, m3 = p["mu1"], p["mu2"], p["mu3"]

    def forward(x):
        mu, tau, ph = x
        if not (max(m1, m2) < _real(mu) < m3):
            raise MapDomainError(
                f"cart-from-polar8: need {max(m1, m2)} < mu < {m3}, got {mu}"
            )
        return np.array([
            np.sqrt(mu - m1) * np.sinh(tau) * np.cos(ph),
            np.sqrt(mu - m2) * np.sinh(tau) * np.sin(ph),
            np.sqrt(m3 - mu) * np.cosh(tau),
        ])

    return CoordinateMap("biax8-3", "cart3", forward, name="cart-from-polar8")


def _cart_from_elliptic3(p):
    """Confocal elliptic coordinates of 3-space, positive-octant branch."""
    ls = (p["lam1"], p["lam2"], p["lam3"])
    l1, l2, l3 = ls

    def forward(x):
        lam, mu, nu = x
        if not (l1 < _real(mu) < l2 < _real(nu) < l3 < _real(lam)):
            raise MapDomainError(
                "cart-from-elliptic3: ordering lam1 < mu < lam2 < nu < lam3 "
                f"< lam violated at (lam, mu, nu)=({lam}, {mu}, {nu})"
            )
        out = []
        for i in range(3):
            j, k = (i + 1) % 3, (i + 2) % 3
            num = (lam - ls[i]) * (mu - ls[i]) * (nu - ls[i])
            den = (ls[i] - ls[j]) * (ls[i] - ls[k])
            out.append(np.sqrt(num / den))
        return np.array(out)

    return CoordinateMap("ell9", "cart3", forward, name="cart-from-elliptic3")


_BUILDERS = {
    "linear-to-halfflat": (_linear_to_halfflat, {}),
    "deformed-ii-cartesian": (_deformed_ii_cartesian, {"lam": -0.5}),
    "parabolic-degenerate-to-linear": (
        _parabolic_degenerate_to_linear, {"a": 1.0, "b": 1.0}),
    "polar-nd-to-parabolic": (
        _polar_nd_to_parabolic, {"v0": 1.0, "a": 1.0, "b": 1.0}),
    "degenerate-to-halfflat": (
        _degenerate_to_halfflat, {"v0": 1.0, "L": 4.0, "ktil": 2.0}),
    "cart-from-parabolic2": (_cart_from_parabolic2, {}),
    "cart-from-elliptic2": (_cart_from_elliptic2, {"c": 1.0}),
    "cart-from-vi": (_cart_from_vi, {"c": 1.0}),
    "cart-from-vii": (_cart_from_vii, {"c": 1.0}),
    "cart-from-polar9": (
        _cart_from_polar9, {"lam1": 1.0, "lam2": 2.0, "lam3": 3.0}),
    "cart-from-polar8": (
        _cart_from_polar8, {"mu1": 1.0, "mu2": 2.0, "mu3": 5.0}),
    "cart-from-elliptic3": (
        _cart_from_elliptic3, {"lam1": 1.0, "lam2": 2.0, "lam3": 3.0}),
}

MAPS = tuple(sorted(_BUILDERS))


def coordinate_map(name, **params) -> CoordinateMap:
    """Named chart-to-chart map with defaults filled in."""
    if name not in _BUILDERS:
        close = difflib.get_close_matches(name, _BUILDERS, n=3, cutoff=0.4)
        raise CatalogMissError(name, close)
    builder, defaults = _BUILDERS[name]
    merged = dict(defaults)
    unknown = set(params) - set(defaults)
    if unknown:
        from ..errors import ParameterRangeError

        raise ParameterRangeError(f"{name}: unknown parameters {sorted(unknown)}")
    merged.update(params)
    return builder(merged)
