"""Chart registry: coordinate names and static domain constraints."""

from __future__ import annotations

import numpy as np

from ..charts import Chart

_HALF_PI = np.pi / 2

CHARTS = {}


def _register(chart):
    CHARTS[chart.chart_id] = chart
    return chart


# 4-charts -------------------------------------------------------------------
_register(Chart("bianchi2", ("t", "s", "y", "z"), (lambda c: c[1],)))
_register(Chart("taub", ("t", "s", "y", "z"), (lambda c: c[1],)))
_register(Chart("kahler2", ("t", "s", "y", "z"), (lambda c: c[1] - 1.0,)))
_register(Chart("einstein2", ("t", "r", "y", "z"),
                (lambda c: c[1], lambda c: 1.0 - c[1])))
_register(Chart("ke2", ("t", "s", "y", "z"), (lambda c: c[1],)))
_register(Chart("hj1", ("t", "s", "y", "z"), (lambda c: c[1],)))
_register(Chart("bianchi6", ("chi", "theta", "y", "z"),
                (lambda c: c[0], lambda c: _HALF_PI - c[0])))
_register(Chart("bianchi7", ("chi", "theta", "y", "z"), (lambda c: c[0],)))
_register(Chart("nd1", ("t", "xi", "eta", "z"),
                (lambda c: c[1], lambda c: c[2])))
_register(Chart("bianchi7nd", ("r", "theta", "y", "z"), (lambda c: c[0],)))
_register(Chart("bianchi6nd", ("r", "theta", "y", "z"), (lambda c: c[0],)))
_register(Chart("bianchi9", ("lam", "theta", "phi", "psi"),
                (lambda c: np.sin(c[1]),)))
_register(Chart("biaxial9", ("s", "theta", "phi", "psi"),
                (lambda c: c[0], lambda c: np.sin(c[1]))))
_register(Chart("bianchi8", ("mu", "tau", "phi", "psi"), (lambda c: c[1],)))
_register(Chart("biaxial8", ("s", "tau", "phi", "psi"),
                (lambda c: c[0], lambda c: c[1])))

# 3-charts -------------------------------------------------------------------
def _3(cid, names, cons=()):
    _register(Chart(cid, names, cons))


_3("cart3", ("X", "Y", "Z"))
_3("ell3", ("xi", "eta", "z"), (lambda c: c[0], lambda c: c[1]))
_3("parab3", ("xi", "eta", "z"), (lambda c: c[0], lambda c: c[1]))
_3("vi3", ("chi", "theta", "z"), (lambda c: c[0], lambda c: _HALF_PI - c[0]))
_3("vii3", ("chi", "theta", "z"), (lambda c: c[0],))
_3("ell9", ("lam", "mu", "nu"))
_3("ix3", ("lam", "theta", "phi"), (lambda c: np.sin(c[1]),))
_3("biax3", ("s", "theta", "phi"), (lambda c: c[0], lambda c: np.sin(c[1])))
_3("gd3", ("s", "tau", "phi"), (lambda c: c[0], lambda c: c[1]))
_3("vi-nd3", ("r", "theta", "z"), (lambda c: c[0],))

# 4-charts generated by the Multi-Centre builder over each 3-chart -----------
for _cid, _ch in list(CHARTS.items()):
    if len(_ch.coord_names) == 3:
        _register(
            Chart(
                f"mc-{_cid}",
                ("t",) + _ch.coord_names,
                tuple((lambda c, f=f: f(c[1:])) for f in _ch.constraints),
            )
        )


def chart(chart_id) -> Chart:
    return CHARTS[chart_id]
