import numpy as np

from bianchilab import catalog
from bianchilab.curvature import (
    curvature_package,
    petrov_classify,
    ricci,
    riemann,
    sd_curvature_from_connection,
    torsion_residual,
)
from bianchilab.metric import MetricModel


def flat4():
    return MetricModel("flat4", "mc-cart3", lambda x: np.eye(4))


def test_flat_metric_has_zero_riemann(rng):
    m = flat4()
    x = rng.uniform(-1, 1, size=4)
    assert np.max(np.abs(riemann(m, x))) < 1e-10
    ric, scal = ricci(m, x)
    assert np.max(np.abs(ric)) < 1e-10 and abs(scal) < 1e-10


def test_half_flat_block_structure_and_weyl_value():
    b = catalog.instantiate("g_II")
    for s in (1.0, 2.0, 4.0):
        pkg = curvature_package(b.metric, np.array([0.1, s, 0.3, -0.2]),
                                frame=b.frame)
        assert np.max(np.abs(pkg.A)) < 1e-10
        assert np.max(np.abs(pkg.B)) < 1e-10
        ref = np.diag([-2.0, 1.0, 1.0]) / s**3
        assert np.max(np.abs(pkg.weyl_minus - ref)) < 1e-8 * np.max(np.abs(ref))
        assert pkg.petrov_minus == "D"
        assert pkg.is_ricci_flat(1e-8) and pkg.is_half_flat(1e-8)


def test_kahler_scalar_flat_blocks():
    b = catalog.instantiate("g_K")
    for s in (1.5, 2.5):
        pkg = curvature_package(b.metric, np.array([0.0, s, 0.2, 0.4]),
                                frame=b.frame)
        assert np.max(np.abs(pkg.A)) < 1e-10
        assert np.max(np.abs(pkg.B - np.diag([1.0, 0.0, 0.0]) / (2 * s**2))) < 1e-8
        refC = (s - 2) / (2 * s**3) * np.diag([-2.0, 1.0, 1.0])
        assert np.max(np.abs(pkg.C - refC)) < 1e-8
        assert abs(pkg.scalar) < 1e-8  # scalar-flat but not Ricci-flat
        assert not pkg.is_ricci_flat(1e-8)


def test_einstein_one_sided_weyl_blocks():
    b = catalog.instantiate("g_E")
    lam = b.metric.params["lam"]
    for r in (0.3, 0.6):
        pkg = curvature_package(b.metric, np.array([0.0, r, -0.1, 0.2]),
                                frame=b.frame)
        assert np.max(np.abs(pkg.A + (lam / 3) * np.eye(3))) < 1e-7
        assert np.max(np.abs(pkg.weyl_plus)) < 1e-7
        refW = -(lam / 3) * ((1 - r) / (1 + r)) ** 3 * np.diag([-2.0, 1.0, 1.0])
        assert np.max(np.abs(pkg.weyl_minus - refW)) < 1e-7
        assert pkg.petrov_minus == "D"


def test_petrov_classifier_labels():
    assert petrov_classify(np.zeros((3, 3)))[0] == "O"
    assert petrov_classify(np.diag([-2.0, 1.0, 1.0]))[0] == "D"
    assert petrov_classify(np.diag([-3.0, 1.0, 2.0]))[0] == "I"


def test_two_curvature_routes_agree(rng):
    # pairing-projected Riemann vs. curvature of the duality connection
    for name in ("g_II", "g_VI", "eh"):
        e = catalog.entry(name)
        b = e.instantiate()
        for x in e.sample_points(2, rng):
            pkg = curvature_package(b.metric, x, frame=b.frame)
            A2, B2, C2 = sd_curvature_from_connection(b.frame, x)
            assert np.max(np.abs(A2 - pkg.A)) < 1e-6
            assert np.max(np.abs(B2 - pkg.B)) < 1e-6
            assert np.max(np.abs(C2 - pkg.C)) < 1e-6


def test_frames_are_torsion_free(rng):
    for name in ("g_II", "g_K", "nd1"):
        e = catalog.entry(name)
        b = e.instantiate()
        for x in e.sample_points(2, rng):
            assert float(np.max(np.abs(torsion_residual(b.frame, x)))) < 1e-8
            assert pkgless_frame_residual(b, x) < 1e-10


def pkgless_frame_residual(b, x):
    E = np.asarray(b.metric.frame_hint(x))
    return float(np.max(np.abs(E.T @ E - b.metric.g(x))))
