import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bianchilab import engine
from bianchilab.errors import StencilOutOfDomainError


def f_scalar(x):
    return np.sin(x[0]) * np.exp(0.3 * x[1]) + x[2] ** 3 - x[1] * x[3]


def grad_exact(x):
    return np.array([
        np.cos(x[0]) * np.exp(0.3 * x[1]),
        0.3 * np.sin(x[0]) * np.exp(0.3 * x[1]) - x[3],
        3 * x[2] ** 2,
        -x[1],
    ])


def test_complex_step_matches_exact_gradient(rng):
    for _ in range(5):
        x = rng.uniform(-1, 1, size=4)
        assert np.max(np.abs(engine.cs_grad(f_scalar, x) - grad_exact(x))) < 1e-12


def test_fd_matches_complex_step(rng):
    for _ in range(5):
        x = rng.uniform(-1, 1, size=4)
        g_fd = engine.fd_grad(f_scalar, x)
        assert np.max(np.abs(g_fd - engine.cs_grad(f_scalar, x))) < 1e-8


def test_grad_dispatches_on_scheme():
    x = np.array([0.4, -0.2, 0.7, 0.1])
    g_cs = engine.grad(f_scalar, x, engine.DEFAULT_CFG)
    g_fd = engine.grad(f_scalar, x, engine.FD_CFG)
    assert np.max(np.abs(g_cs - g_fd)) < 1e-8


def test_hessian_symmetric_and_accurate():
    x = np.array([0.4, -0.2, 0.7, 0.1])
    H = engine.hessian(f_scalar, x)
    assert np.max(np.abs(H - H.T)) < 1e-9
    assert abs(H[2, 2] - 6 * x[2]) < 1e-6
    assert abs(H[1, 3] + 1.0) < 1e-6


def test_jacobian_of_vector_map():
    def F(x):
        return np.array([x[0] * x[1], x[1] ** 2, np.cos(x[2])])

    x = np.array([0.5, 1.2, 0.3])
    J = engine.jacobian(F, x)
    ref = np.array([[1.2, 0.5, 0.0], [0.0, 2.4, 0.0],
                    [0.0, 0.0, -np.sin(0.3)]])
    assert np.max(np.abs(J - ref)) < 1e-9


def test_domain_guard_raises():
    def f(x):
        return np.sqrt(x[0])

    with pytest.raises(StencilOutOfDomainError):
        engine.fd_partial(f, np.array([1e-9]), 0,
                          domain=lambda x: np.real(x[0]) > 0)


def test_with_partials_override_is_used():
    f = engine.with_partials(f_scalar, lambda x: np.zeros(4))
    assert np.max(np.abs(engine.grad(f, np.ones(4)))) == 0.0


@settings(max_examples=25, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
def test_fd_vs_cs_property(a, b, c, d):
    x = np.array([a, b, c, d])
    assert np.max(np.abs(engine.fd_grad(f_scalar, x)
                         - engine.cs_grad(f_scalar, x))) < 1e-6
