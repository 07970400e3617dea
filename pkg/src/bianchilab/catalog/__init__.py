"""Named geometry catalog: entries, potentials, charts, and coordinate maps."""

from __future__ import annotations

import difflib

from ..errors import CatalogMissError
from . import family_ii, family_nd, family_vi_vii, family_viii_ix
from .family_nd import nd_system_residual
from .charts import CHARTS, chart
from .maps import MAPS, coordinate_map
from .potentials import POTENTIALS, potential_library
from .records import Bundle, CatalogEntry

_ALL_ENTRIES = (
    family_ii.ENTRIES
    + family_vi_vii.ENTRIES
    + family_nd.ENTRIES
    + family_viii_ix.ENTRIES
)

CATALOG = {e.name: e for e in _ALL_ENTRIES}


def names():
    return sorted(CATALOG)


def entry(name) -> CatalogEntry:
    if name not in CATALOG:
        close = difflib.get_close_matches(name, CATALOG, n=3, cutoff=0.4)
        raise CatalogMissError(name, close)
    return CATALOG[name]


def instantiate(name, **params) -> Bundle:
    return entry(name).instantiate(**params)


def select(filter_key=None):
    """Entries matching a family name or a truthy label key, stable order."""
    out = []
    for name in names():
        e = CATALOG[name]
        if filter_key in (None, ""):
            out.append(e)
        elif e.family == filter_key or bool(e.labels.get(filter_key)):
            out.append(e)
    return out


def manifest(filter_key=None):
    rows = []
    for e in select(filter_key):
        rows.append({
            "name": e.name,
            "family": e.family,
            "tag": e.tag,
            "description": e.description,
            "chart": e.labels["chart"],
            "defaults": dict(e.defaults),
            "labels": {k: v for k, v in e.labels.items() if k != "chart"},
        })
    return rows
