"""Differentiation engine.

Two schemes are supported everywhere:

* ``central-fd`` -- central finite differences of order 2/4/6, optionally
  Richardson-extrapolated, with per-coordinate step scaling.
* ``exact-partials`` -- closed-form partials when the target carries them,
  otherwise complex-step differentiation of the (analytic) component
  functions.  Complex-step first derivatives are exact to machine precision
  and serve as the independent cross-check route for the finite-difference
  path.

Second derivatives in ``exact-partials`` mode are hybrid: complex step in
the inner index, central differences in the outer one, so the only
truncation error left is a single well-conditioned first difference of an
exactly-computed gradient component.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import StencilOutOfDomainError

EXACT = "exact-partials"
CENTRAL_FD = "central-fd"

_CS_STEP = 1e-20

# offsets/weights for d/dx, indexed by order
_D1_STENCILS = {
    2: ([-1, 1], [-0.5, 0.5]),
    4: ([-2, -1, 1, 2], [1 / 12, -2 / 3, 2 / 3, -1 / 12]),
    6: ([-3, -2, -1, 1, 2, 3], [-1 / 60, 3 / 20, -3 / 4, 3 / 4, -3 / 20, 1 / 60]),
}

# offsets/weights for d^2/dx^2
_D2_STENCILS = {
    2: ([-1, 0, 1], [1.0, -2.0, 1.0]),
    4: ([-2, -1, 0, 1, 2], [-1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12]),
    6: (
        [-3, -2, -1, 0, 1, 2, 3],
        [1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90],
    ),
}


@dataclass(frozen=True)
class DiffConfig:
    """Differentiation configuration shared by every module."""

    scheme: str = EXACT
    fd_order: int = 4
    base_step: float = 1e-4
    per_coordinate_scale: tuple = ()
    richardson: bool = True

    def __post_init__(self):
        if self.scheme not in (EXACT, CENTRAL_FD):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.fd_order not in (2, 4, 6):
            raise ValueError("fd_order must be one of 2, 4, 6")
        if self.base_step <= 0:
            raise ValueError("base_step must be positive")

    def steps(self, x):
        """Per-coordinate first-derivative steps at the point ``x``."""
        x = np.asarray(x, dtype=float)
        scale = np.ones_like(x)
        if self.per_coordinate_scale:
            scale[: len(self.per_coordinate_scale)] = self.per_coordinate_scale
        return self.base_step * scale * np.maximum(1.0, np.abs(x))

    def second_steps(self, x):
        """Wider steps used for outer differences of second derivatives."""
        x = np.asarray(x, dtype=float)
        scale = np.ones_like(x)
        if self.per_coordinate_scale:
            scale[: len(self.per_coordinate_scale)] = self.per_coordinate_scale
        return np.sqrt(self.base_step) * scale * np.maximum(1.0, np.abs(x))


DEFAULT_CFG = DiffConfig()
FD_CFG = DiffConfig(scheme=CENTRAL_FD)


def _check_domain(domain, x, axis):
    if domain is not None and not domain(np.real(x)):
        raise StencilOutOfDomainError(axis, np.real(x))


def cs_partial(f, x, i, h=_CS_STEP):
    """Complex-step partial derivative along coordinate ``i``.

    Exact to machine precision for functions analytic in each coordinate.
    Works on scalar- or array-valued ``f``.
    """
    x = np.asarray(x, dtype=float)
    xp = x.astype(complex)
    xp[i] += 1j * h
    return np.imag(f(xp)) / h


def cs_grad(f, x, h=_CS_STEP):
    """Full complex-step gradient (stacked along the first axis)."""
    x = np.asarray(x, dtype=float)
    return np.array([cs_partial(f, x, i, h) for i in range(x.size)])


def fd_partial(f, x, i, cfg=FD_CFG, step=None, domain=None):
    """Central-difference partial along coordinate ``i``."""
    x = np.asarray(x, dtype=float)
    h = float(cfg.steps(x)[i] if step is None else step)

    def stencil(hh):
        offs, wts = _D1_STENCILS[cfg.fd_order]
        acc = None
        for o, w in zip(offs, wts):
            xp = x.copy()
            xp[i] += o * hh
            _check_domain(domain, xp, i)
            v = w * np.asarray(f(xp))
            acc = v if acc is None else acc + v
        return acc / hh

    if not cfg.richardson:
        return stencil(h)
    p = 2 ** cfg.fd_order
    return (p * stencil(h / 2) - stencil(h)) / (p - 1)


def fd_grad(f, x, cfg=FD_CFG, domain=None):
    x = np.asarray(x, dtype=float)
    return np.array([fd_partial(f, x, i, cfg, domain=domain) for i in range(x.size)])


def grad(f, x, cfg=DEFAULT_CFG, domain=None):
    """Gradient of a scalar (or array-valued) field.

    In ``exact-partials`` mode closed-form partials attached to ``f`` (a
    ``partials`` attribute) win; otherwise the complex-step route is used.
    """
    if cfg.scheme == EXACT:
        partials = getattr(f, "partials", None)
        if partials is not None:
            return np.asarray(partials(np.asarray(x, dtype=float)))
        _check_domain(domain, np.asarray(x, dtype=float), -1)
        return cs_grad(f, x)
    return fd_grad(f, x, cfg, domain=domain)


def _fd_second_diag(f, x, i, cfg, domain=None):
    x = np.asarray(x, dtype=float)
    h = float(cfg.second_steps(x)[i])
    offs, wts = _D2_STENCILS[cfg.fd_order]

    def stencil(hh):
        acc = 0.0
        for o, w in zip(offs, wts):
            xp = x.copy()
            xp[i] += o * hh
            _check_domain(domain, xp, i)
            acc = acc + w * np.asarray(f(xp))
        return acc / hh**2

    if not cfg.richardson:
        return stencil(h)
    p = 2 ** cfg.fd_order
    return (p * stencil(h / 2) - stencil(h)) / (p - 1)


def _fd_second_mixed(f, x, i, j, cfg, domain=None):
    x = np.asarray(x, dtype=float)
    hs = cfg.second_steps(x)
    hi, hj = float(hs[i]), float(hs[j])
    offs, wts = _D1_STENCILS[cfg.fd_order]

    def stencil(a, b):
        acc = 0.0
        for oi, wi in zip(offs, wts):
            for oj, wj in zip(offs, wts):
                xp = x.copy()
                xp[i] += oi * a
                xp[j] += oj * b
                _check_domain(domain, xp, i if abs(oi) >= abs(oj) else j)
                acc = acc + wi * wj * np.asarray(f(xp))
        return acc / (a * b)

    if not cfg.richardson:
        return stencil(hi, hj)
    p = 2 ** cfg.fd_order
    return (p * stencil(hi / 2, hj / 2) - stencil(hi, hj)) / (p - 1)


def hessian(f, x, cfg=DEFAULT_CFG, domain=None):
    """Symmetrized matrix of second partials of a scalar field."""
    x = np.asarray(x, dtype=float)
    n = x.size
    H = np.empty((n, n))
    if cfg.scheme == EXACT:
        partials = getattr(f, "partials", None)
        for i in range(n):
            if partials is not None:
                gi = lambda xx, _i=i: np.asarray(partials(xx))[_i]
            else:
                gi = lambda xx, _i=i: cs_partial(f, xx, _i)
            for j in range(n):
                H[i, j] = fd_partial(gi, x, j, cfg, step=cfg.second_steps(x)[j], domain=domain)
    else:
        for i in range(n):
            H[i, i] = _fd_second_diag(f, x, i, cfg, domain=domain)
            for j in range(i + 1, n):
                H[i, j] = H[j, i] = _fd_second_mixed(f, x, i, j, cfg, domain=domain)
    return 0.5 * (H + H.T)


def jacobian(F, x, cfg=DEFAULT_CFG, domain=None):
    """Jacobian J[a, i] = dF_a/dx_i of a vector-valued map."""
    g = grad(F, x, cfg, domain=domain)  # stacked as [i, a]
    return np.asarray(g).swapaxes(0, 1) if np.ndim(g) > 1 else np.asarray(g)


def array_partials(F, x, cfg=DEFAULT_CFG, domain=None):
    """Stacked partials P[k, ...] = d/dx_k of an array-valued field."""
    return np.asarray(grad(F, x, cfg, domain=domain))


def with_partials(f, partials):
    """Attach closed-form partials to a callable (spec's exact mode)."""
    f.partials = partials
    return f
