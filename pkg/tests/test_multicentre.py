import numpy as np
import pytest

from bianchilab import catalog
from bianchilab.catalog import potential_library
from bianchilab.errors import CatalogMissError, NotHarmonicError
from bianchilab.multicentre import MultiCentreData, multicentre_build
from bianchilab.reports import potential_sample_points

ALL_POTENTIALS = sorted([
    "mc-linear", "mc-vi", "mc-vii", "elliptic-vi", "elliptic-vii", "potva",
    "nd-parabolic", "potnd-cartesian", "pot-ix", "pot-ix-elliptic",
    "two-centre", "two-centre-dipole", "gd-mc", "potc2",
])


@pytest.mark.parametrize("name", ALL_POTENTIALS)
def test_potential_audit(name, rng):
    mc = potential_library(name)
    for p in potential_sample_points(name, 10, rng):
        assert mc.harmonic_residual(p) < 1e-8, name
        assert mc.monopole_residual(p) < 1e-8, name


def test_potential_identity_vi_limit(rng):
    degen = potential_library("potva", v0=0.0, a=0.0, b=1.0)
    ref = potential_library("elliptic-vi")
    for p in potential_sample_points("potva", 8, rng):
        assert abs(degen.V(p) - ref.V(p)) < 1e-10
        # the orientation sign flips, so the monopole forms are opposite
        assert np.max(np.abs(np.asarray(degen.theta.comps(p))
                             + np.asarray(ref.theta.comps(p)))) < 1e-10
    assert degen.sign == -ref.sign


def test_potential_identity_vii_limit(rng):
    degen = potential_library("potva", v0=0.0, b=0.0, a=1.0)
    ref = potential_library("elliptic-vii")
    for p in potential_sample_points("potva", 8, rng):
        assert abs(degen.V(p) - ref.V(p)) < 1e-10
        assert np.max(np.abs(np.asarray(degen.theta.comps(p))
                             - np.asarray(ref.theta.comps(p)))) < 1e-10
    assert degen.sign == ref.sign


def test_entries_with_fibration_data_pass_audit(rng):
    audited = 0
    for name in catalog.names():
        e = catalog.entry(name)
        pot = e.labels.get("potential")
        if not pot:
            continue
        audited += 1
        mc = potential_library(pot)
        for p in potential_sample_points(pot, 5, rng):
            assert mc.harmonic_residual(p) < 1e-8, name
            assert mc.monopole_residual(p) < 1e-8, name
    assert audited >= 5


def test_build_rejects_non_harmonic_potential():
    bad = potential_library("mc-linear")
    data = MultiCentreData("bad", lambda x: x[0] ** 2, bad.theta, bad.sign,
                           bad.gamma0)
    with pytest.raises(NotHarmonicError):
        multicentre_build(data, sample_points=[np.array([1.0, 0.2, 0.3])])


def test_unknown_potential_raises():
    with pytest.raises(CatalogMissError):
        potential_library("no-such-potential")


def test_built_metric_matches_fibred_form(rng):
    mc = potential_library("mc-linear")
    g4 = multicentre_build(mc)
    for p in potential_sample_points("mc-linear", 4, rng):
        x = np.concatenate(([rng.uniform(-1, 1)], p))
        V = mc.V(p)
        th = np.asarray(mc.theta.comps(p))
        u = np.concatenate(([1.0], th))
        ref = np.outer(u, u) / V
        ref[1:, 1:] += V * mc.gamma0.g(p)
        assert np.max(np.abs(g4.g(x) - ref)) < 1e-12
