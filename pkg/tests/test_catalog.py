import numpy as np
import pytest

from bianchilab import catalog
from bianchilab.catalog import nd_system_residual
from bianchilab.errors import CatalogMissError, ParameterRangeError


def test_names_are_sorted_and_stable():
    names = catalog.names()
    assert names == sorted(names)
    assert "g_II" in names and "nd1" in names


def test_family_filter_census():
    ii = [e.name for e in catalog.select("bianchi-ii")]
    assert ii == ["G_II", "g_E", "g_II", "g_K", "g_KE", "g_T"]


def test_label_filter_excludes_non_hyperkahler():
    hk = {e.name for e in catalog.select("hyperkahler")}
    assert {"g_K", "g_E", "g_KE"}.isdisjoint(hk)
    assert {"g_II", "eh", "nd1"} <= hk


def test_empty_filter_returns_full_manifest():
    rows = catalog.manifest()
    assert [r["name"] for r in rows] == catalog.names()
    assert all({"family", "chart", "defaults", "labels"} <= set(r)
               for r in rows)


def test_unknown_entry_raises_with_suggestions():
    with pytest.raises(CatalogMissError) as exc:
        catalog.entry("g_11")
    assert exc.value.suggestions


def test_parameter_range_guard():
    with pytest.raises(ParameterRangeError):
        catalog.instantiate("g_E", lam=-1.0)
    with pytest.raises(ParameterRangeError):
        catalog.instantiate("g_II", no_such_param=1.0)


def test_sample_points_respect_chart(rng):
    e = catalog.entry("g_K")
    pts = e.sample_points(10, rng)
    assert all(e.chart.contains(p) for p in pts)


def test_nd_system_residuals(rng):
    for name in ("nds5", "g_ND", "nds6"):
        bundle = catalog.instantiate(name)
        radii = rng.uniform(*_radial_range(name), size=8)
        res = nd_system_residual(bundle, radii)
        assert set(res) == {"eq_a", "eq_b", "eq_c", "unit", "first_integral"}
        assert max(res.values()) < 1e-10, (name, res)


def _radial_range(name):
    return (2.2, 3.5) if name == "nds5" else (1.5, 2.5)


def test_nd_system_with_radial_exponent(rng):
    bundle = catalog.instantiate("nds5", c_exp=0.7)
    res = nd_system_residual(bundle, rng.uniform(2.2, 3.5, size=6))
    assert max(res.values()) < 1e-10
