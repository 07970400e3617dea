import numpy as np
import pytest

from bianchilab import engine
from bianchilab.errors import DegreeOverflowError
from bianchilab.forms import (
    KForm,
    antisymmetrize,
    constant_form,
    coordinate_differential,
    exterior_derivative,
    interior_product,
    wedge,
)


def test_antisymmetrize_idempotent(rng):
    T = rng.normal(size=(4, 4, 4))
    A = antisymmetrize(T)
    assert np.max(np.abs(antisymmetrize(A) - A)) < 1e-14
    assert np.max(np.abs(A + np.einsum("ijk->jik", A))) < 1e-14


def test_wedge_of_coordinate_differentials():
    dx, dy = coordinate_differential("c", 0), coordinate_differential("c", 1)
    w = wedge(dx, dy)
    W = w(np.zeros(4))
    assert W[0, 1] == 1.0 and W[1, 0] == -1.0
    # graded commutativity for 1-forms: a^b = -b^a
    assert np.max(np.abs(wedge(dy, dx)(np.zeros(4)) + W)) == 0.0


def test_d_squared_is_zero(rng):
    def comps(x):
        v = np.zeros(4)
        v[0] = np.sin(x[1]) * x[2]
        v[2] = x[1] ** 2 * x[3]
        return v

    w = KForm(1, "c", comps)
    ddw = exterior_derivative(exterior_derivative(w, engine.FD_CFG),
                              engine.FD_CFG)
    x = rng.uniform(-1, 1, size=4)
    assert np.max(np.abs(ddw(x))) < 1e-6


def test_exterior_derivative_matches_hand_computation():
    # d(x1 dx0) = dx1 ^ dx0
    w = KForm(1, "c", lambda x: np.array([x[1], 0.0, 0.0, 0.0]))
    dw = exterior_derivative(w)
    ref = wedge(coordinate_differential("c", 1), coordinate_differential("c", 0))
    x = np.array([0.3, 0.7, -0.1, 0.5])
    assert np.max(np.abs(dw(x) - ref(x))) < 1e-10


def test_top_degree_guard():
    top = constant_form("c", antisymmetrize(np.ones((4, 4, 4, 4))))
    with pytest.raises(DegreeOverflowError):
        exterior_derivative(top)


def test_interior_product_contracts_first_slot():
    dx, dy = coordinate_differential("c", 0), coordinate_differential("c", 1)
    w = wedge(dx, dy)
    K = lambda x: np.array([1.0, 0.0, 0.0, 0.0])
    iw = interior_product(K, w)
    assert np.max(np.abs(iw(np.zeros(4)) - dy(np.zeros(4)))) < 1e-14


def test_leibniz_rule_for_d(rng):
    f = KForm(0, "c", lambda x: x[0] * x[1] ** 2)
    w = KForm(1, "c", lambda x: np.array([0.0, x[2], 0.0, x[0]]))
    lhs = exterior_derivative(wedge(f, w), engine.FD_CFG)
    rhs_a = wedge(exterior_derivative(f, engine.FD_CFG), w)
    rhs_b = wedge(f, exterior_derivative(w, engine.FD_CFG))
    x = rng.uniform(-1, 1, size=4)
    assert np.max(np.abs(lhs(x) - rhs_a(x) - rhs_b(x))) < 1e-7
