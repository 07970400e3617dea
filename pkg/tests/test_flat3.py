import numpy as np
import pytest

from bianchilab import engine
from bianchilab.errors import SingularMetricError
from bianchilab.flat3 import (
    Flat3Metric,
    cartesian3,
    hodge3,
    hodge3_form,
    laplace_beltrami,
    pullback_flat3,
)
from bianchilab.forms import KForm, exterior_derivative


def spherical_map(x):
    r, th, ph = x[0], x[1], x[2]
    return np.array([r * np.sin(th) * np.cos(ph),
                     r * np.sin(th) * np.sin(ph),
                     r * np.cos(th)])


def test_cartesian_hodge_of_coordinate_2form():
    gamma = cartesian3()
    w = KForm(2, "cartesian3",
              lambda x: np.array([[0.0, 1.0, 0.0],
                                  [-1.0, 0.0, 0.0],
                                  [0.0, 0.0, 0.0]]))
    star = hodge3(w, gamma, np.zeros(3))
    # *(dx ^ dy) = dz
    assert np.max(np.abs(star - np.array([0.0, 0.0, 1.0]))) < 1e-14


def test_pullback_spherical_metric_components():
    gamma = pullback_flat3("spherical3", spherical_map)
    x = np.array([2.0, 0.7, 0.4])
    g = gamma.g(x)
    ref = np.diag([1.0, x[0] ** 2, (x[0] * np.sin(x[1])) ** 2])
    assert np.max(np.abs(g - ref)) < 1e-9


def test_laplacian_of_harmonic_function_in_spherical_chart():
    gamma = pullback_flat3("spherical3", spherical_map)

    def V(x):
        return 1.0 / x[0]  # 1/r is harmonic away from the origin

    for x in [np.array([1.5, 0.6, 0.3]), np.array([2.5, 1.2, -0.8])]:
        assert abs(laplace_beltrami(V, gamma, x)) < 1e-8


def test_laplacian_of_nonharmonic_function_is_nonzero():
    gamma = cartesian3()
    assert abs(laplace_beltrami(lambda x: x[0] ** 2, gamma,
                                np.array([0.3, 0.1, 0.2])) - 2.0) < 1e-8


def test_hodge3_form_wraps_pointwise_hodge(rng):
    gamma = cartesian3()
    w = KForm(1, "cartesian3", lambda x: np.array([x[1], -x[0], x[2] ** 2]))
    dw = exterior_derivative(w, engine.FD_CFG)
    star = hodge3_form(dw, gamma)
    x = rng.uniform(0.5, 1.5, size=3)
    assert np.max(np.abs(star(x) - hodge3(dw, gamma, x))) < 1e-12


def test_singular_metric_guard():
    gamma = Flat3Metric(lambda x: np.diag([1.0, 1.0, 0.0]))
    with pytest.raises(SingularMetricError):
        gamma.inv(np.zeros(3))
