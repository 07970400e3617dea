import numpy as np
import pytest

from bianchilab import catalog, flow, separability as sep
from bianchilab.catalog import potential_library
from bianchilab.errors import FormError, PreconditionError
from bianchilab.flow import PhasePoint
from bianchilab.multicentre import multicentre_build
from bianchilab.reports import potential_sample_points


def elliptic_ix_points(rng, n):
    out = []
    for _ in range(n):
        out.append(np.array([rng.uniform(-1, 1), rng.uniform(3.2, 4.5),
                             rng.uniform(1.1, 1.9), rng.uniform(2.1, 2.9)]))
    return out


def test_levi_civita_vanishes_on_separable_charts(rng):
    for name in ("hj1-generic", "nd1"):
        ent = catalog.entry(name)
        m = ent.instantiate().metric
        rep = sep.lc_scan(m, [0.0, 0.1], ent.sample_points(3, rng), rng)
        assert rep.verdict == "separating", rep.summary()
        assert max(rep.pair_residuals.values()) < 1e-6


def test_triaxial_elliptic_chart_is_not_separating(rng):
    g9 = multicentre_build(potential_library("pot-ix-elliptic"))
    rep = sep.lc_scan(g9, [0.0, 0.1], elliptic_ix_points(rng, 3), rng,
                      n_momenta=5)
    assert rep.verdict == "not separating"
    # neutral geodesics separate: every pair passes at q = 0
    for (q, i, j), r in rep.pair_residuals.items():
        if q == 0.0:
            assert r < 1e-6, (i, j, r)
    # the charge coupling breaks separation, including for the pair of
    # elliptic coordinates
    assert rep.pair_residuals[(0.1, 1, 2)] > 1e-3
    assert (1, 2) in rep.failing_pairs
    assert "not separation coordinates" in rep.conclusion


def test_first_order_constraint_structure(rng):
    # the odd-in-q defect for the elliptic pair is cubic in the spatial
    # momenta with a nonzero pure third-momentum-squared coefficient
    g9 = multicentre_build(potential_library("pot-ix-elliptic"))
    x = np.array([0.3, 3.8, 1.4, 2.5])
    coeffs, resid = sep.fit_lc_constraint(g9, x, (1, 2), 0.05, rng)
    # higher orders in q contaminate the extraction at the percent level
    assert resid < 1e-2 * max(abs(c) for c in coeffs.values())
    # every dominant monomial carries a factor of the first elliptic
    # momentum (index 1)
    big = {m for m, c in coeffs.items() if abs(c) > 1e-2}
    assert big and all(1 in m for m in big)
    beta_analog = coeffs[(1, 3, 3)]
    assert abs(beta_analog) > 0.1


def test_pair_index_guard():
    m = catalog.instantiate("hj1-generic").metric
    H = flow.hamiltonian(m)
    z = PhasePoint(np.array([0.0, 1.5, 0.2, 0.3]), np.ones(4))
    with pytest.raises(PreconditionError):
        sep.levi_civita_residual(H, z, (2, 2))


def test_separation_constant_is_conserved(rng):
    for name in ("g_K", "g_KE", "g_II", "hj1-generic"):
        ent = catalog.entry(name)
        m = ent.instantiate().metric
        for x in ent.sample_points(3, rng):
            z = PhasePoint(x, rng.uniform(-1, 1, 4))
            L, br = sep.hj_separation_constant(m, z)
            assert abs(br) < 1e-8, (name, br)


def test_separation_constant_value():
    m = catalog.instantiate("g_II").metric
    z = PhasePoint(np.array([0.0, 1.5, 0.0, 0.2]),
                   np.array([0.3, 0.7, 0.4, 0.6]))
    L, _ = sep.hj_separation_constant(m, z)
    assert abs(L - (0.4**2 + 0.6**2)) < 1e-12


def test_non_biaxial_chart_rejected():
    m = multicentre_build(potential_library("pot-ix-elliptic"))
    z = PhasePoint(np.array([0.3, 3.8, 1.4, 2.5]), np.ones(4))
    with pytest.raises(FormError):
        sep.hj_separation_constant(m, z)


def test_anomaly_vanishes_on_ricci_flat_entries(rng):
    checked = 0
    for name in catalog.names():
        ent = catalog.entry(name)
        if not ent.labels.get("ricci_flat"):
            continue
        b = ent.instantiate()
        if not b.ks_tensors:
            continue
        checked += 1
        for x in ent.sample_points(3, rng):
            for K in b.ks_tensors.values():
                an = sep.quantum_anomaly(b.metric, K, x)
                assert np.max(np.abs(an.B)) < 1e-7, name
                assert np.max(np.abs(an.A)) < 1e-7, name
    assert checked >= 2


def test_anomaly_nonzero_on_conformal_fixture(rng):
    ent = catalog.entry("conformal-ii")
    fix = ent.instantiate()
    probe = fix.notes["anomaly_probe"]
    x = ent.sample_points(1, rng)[0]
    # the probe is not a Killing-Stackel tensor of the fixture metric
    with pytest.raises(PreconditionError):
        sep.quantum_anomaly(fix.metric, probe, x)
    an = sep.quantum_anomaly(fix.metric, probe, x, check=False)
    assert np.max(np.abs(an.B)) > 1e-4
    assert np.max(np.abs(an.A)) > 1e-4
