"""End-to-end acceptance checks, one per criterion, at pinned tolerances.

Each test appends a single pass/fail line to the terminal summary.
"""

import numpy as np
import pytest

from conftest import ACCEPTANCE_LOG

from bianchilab import catalog, engine, flow, poisson, symmetry
from bianchilab import separability as sep
from bianchilab.catalog import (
    coordinate_map,
    nd_system_residual,
    potential_library,
)
from bianchilab.curvature import curvature_package
from bianchilab.flow import PhasePoint
from bianchilab.metric import MetricModel, pullback_metric
from bianchilab.multicentre import multicentre_build
from bianchilab.reports import potential_sample_points

RNG_SEED = 20260823


def _record(num, description, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    tail = f"  ({detail})" if detail else ""
    ACCEPTANCE_LOG.append(f"criterion {num:2d} [{status}] {description}{tail}")
    assert ok, f"criterion {num}: {description}{tail}"


def _rng():
    return np.random.default_rng(RNG_SEED)


def test_criterion_01_closed_form_curvature():
    worst = 0.0
    b = catalog.instantiate("g_II")
    for s in (1.0, 2.0, 4.0):
        pkg = curvature_package(b.metric, np.array([0.1, s, 0.3, -0.2]),
                                frame=b.frame)
        ref = np.diag([-2.0, 1.0, 1.0]) / s**3
        worst = max(worst, float(np.max(np.abs(pkg.weyl_minus - ref))
                                 / np.max(np.abs(ref))))
    bk = catalog.instantiate("g_K")
    for s in (1.5, 2.5):
        pkg = curvature_package(bk.metric, np.array([0.0, s, 0.2, 0.4]),
                                frame=bk.frame)
        refB = np.diag([1.0, 0.0, 0.0]) / (2 * s**2)
        refC = (s - 2) / (2 * s**3) * np.diag([-2.0, 1.0, 1.0])
        worst = max(worst, float(np.max(np.abs(pkg.A))),
                    float(np.max(np.abs(pkg.B - refB))),
                    float(np.max(np.abs(pkg.C - refC))))
    be = catalog.instantiate("g_E")
    lam = be.metric.params["lam"]
    for r in (0.3, 0.6):
        pkg = curvature_package(be.metric, np.array([0.0, r, -0.1, 0.2]),
                                frame=be.frame)
        refW = -(lam / 3) * ((1 - r) / (1 + r)) ** 3 * np.diag([-2.0, 1, 1])
        worst = max(worst, float(np.max(np.abs(pkg.A + (lam / 3) * np.eye(3)))),
                    float(np.max(np.abs(pkg.weyl_minus - refW))))
    _record(1, "closed-form curvature blocks reproduced", worst < 1e-7,
            f"worst {worst:.2e}")


def test_criterion_02_hyperkahler_audit():
    rng = _rng()
    entries = [e for e in catalog.select("hyperkahler")]
    worst, labels_ok = 0.0, True
    for e in entries:
        b = e.instantiate()
        expect = e.labels.get("petrov_minus")
        for x in e.sample_points(25, rng):
            pkg = curvature_package(b.metric, x, frame=b.frame)
            worst = max(worst, float(np.max(np.abs(pkg.ricci))),
                        float(np.max(np.abs(pkg.A))),
                        float(np.max(np.abs(pkg.B))))
            if expect and pkg.petrov_minus != expect:
                labels_ok = False
    ok = len(entries) >= 14 and worst < 1e-7 and labels_ok
    _record(2, "hyperkahler entries are half-flat with matching labels", ok,
            f"{len(entries)} entries, worst {worst:.2e}")


def test_criterion_03_multicentre_audit():
    rng = _rng()
    worst = 0.0
    for name in sorted([
            "mc-linear", "mc-vi", "mc-vii", "elliptic-vi", "elliptic-vii",
            "potva", "nd-parabolic", "potnd-cartesian", "pot-ix",
            "pot-ix-elliptic", "two-centre", "two-centre-dipole", "gd-mc",
            "potc2"]):
        mc = potential_library(name)
        for p in potential_sample_points(name, 25, rng):
            worst = max(worst, mc.harmonic_residual(p),
                        mc.monopole_residual(p))
    ident = 0.0
    d6 = potential_library("potva", v0=0.0, a=0.0, b=1.0)
    r6 = potential_library("elliptic-vi")
    d7 = potential_library("potva", v0=0.0, b=0.0, a=1.0)
    r7 = potential_library("elliptic-vii")
    for p in potential_sample_points("potva", 10, rng):
        ident = max(ident, abs(d6.V(p) - r6.V(p)), abs(d7.V(p) - r7.V(p)),
                    float(np.max(np.abs(np.asarray(d6.theta.comps(p))
                                        + np.asarray(r6.theta.comps(p))))),
                    float(np.max(np.abs(np.asarray(d7.theta.comps(p))
                                        - np.asarray(r7.theta.comps(p))))))
    ok = worst < 1e-8 and ident < 1e-10
    _record(3, "monopole/harmonicity audit and potential identities", ok,
            f"audit {worst:.2e}, identities {ident:.2e}")


def test_criterion_04_symmetry_audit():
    rng = _rng()
    worst = 0.0
    hitchin = 0
    for name in catalog.names():
        e = catalog.entry(name)
        b = e.instantiate()
        pts = e.sample_points(3, rng)
        if b.bianchi is not None:
            fields = list(b.bianchi.killing_fields)
            if b.bianchi.extra_killing is not None:
                fields.append(b.bianchi.extra_killing)
            for f in fields:
                worst = max(worst, max(float(np.max(np.abs(
                    symmetry.killing_residual(b.metric, f, p))))
                    for p in pts))
        for Y in (b.ky_tensors or {}).values():
            worst = max(worst, max(float(np.max(np.abs(
                symmetry.killing_yano_residual(
                    b.metric, Y, p, cfg=engine.DEFAULT_CFG))))
                for p in pts))
        for S in (b.ks_tensors or {}).values():
            worst = max(worst, max(float(np.max(np.abs(
                symmetry.killing_stackel_residual(
                    b.metric, S, p, cfg=engine.DEFAULT_CFG))))
                for p in pts))
        if b.complex_structures:
            for p in pts:
                chk = symmetry.complex_structure_check(
                    b.metric, b.complex_structures, p)
                worst = max(worst, max(v for k, v in chk.items()
                                       if k != "orientation"))
        cart = (b.notes or {}).get("cartesian_fields")
        if cart is not None:
            hitchin += 1
            fields = {f.name: f for f in b.bianchi.killing_fields}
            if b.bianchi.extra_killing is not None:
                fields[b.bianchi.extra_killing.name] = b.bianchi.extra_killing
            K = (b.notes.get("moment_killing_vector")
                 or fields[b.notes["moment_killing"]])
            mpts = e.sample_points(6, rng)
            R = symmetry.hitchin_alignment(
                b.metric, K, b.complex_structures, cart, mpts)
            worst = max(worst, max(float(np.max(np.abs(
                symmetry.hitchin_moment_residual(
                    b.metric, K, b.complex_structures, cart, p, align=R))))
                for p in mpts))
    ok = worst < 1e-8 and hitchin >= 6
    _record(4, "Killing/KY/KS/complex-structure/moment-map audit", ok,
            f"worst {worst:.2e}, {hitchin} moment-map families")


def test_criterion_05_w_algebra():
    rng = _rng()
    ent = catalog.entry("g_II")
    reg = flow.observable_registry(ent.instantiate().metric)
    pts = poisson.phase_samples(ent, 50, rng)
    rows = poisson.verify_bracket_table(poisson.w_algebra_table(), reg, pts)
    table_worst = max(r["residual"] for r in rows)
    degree = {"H": 2, "K1": 1, "K2": 1, "K3": 1, "K4": 1,
              "L1": 2, "L2": 2, "L3": 2, "L4": 2}
    fit_worst = 0.0
    for e in poisson.w_algebra_table().entries:
        if not e.rhs:
            continue
        d = degree[e.a] + degree[e.b] - 1
        basis = ((("K1",), ("K2",), ("K3",), ("K4",)) if d == 1
                 else poisson.DEGREE2_BASIS if d == 2
                 else poisson.DEGREE3_BASIS)
        coeffs, resid = poisson.fit_structure_coefficients(
            e.a, e.b, basis, reg, pts)
        err = max(abs(coeffs.get(m, 0.0) - v) for m, v in e.rhs.items())
        extras = max((abs(v) for m, v in coeffs.items() if m not in e.rhs),
                     default=0.0)
        fit_worst = max(fit_worst, err, extras, resid)
    ok = table_worst < 1e-8 and fit_worst < 1e-6
    _record(5, "bracket table and structure-coefficient recovery", ok,
            f"table {table_worst:.2e}, fit {fit_worst:.2e}")


def test_criterion_06_conservation_under_flow():
    rng = _rng()
    reg = flow.observable_registry(catalog.instantiate("g_II").metric)
    z0 = PhasePoint(np.array([0.0, 2.0, 0.3, -0.1]),
                    np.array([0.2, 0.5, 0.1, 0.4]))
    traj = flow.integrate(reg["H"], z0, 1e-3, 10000, keep_every=100)
    drift_ii = max(flow.conservation_report(
        traj, [reg[k] for k in
               ("H", "K1", "K2", "K3", "K4", "L1", "L2", "L3", "L4")]
    ).values())
    regn = flow.observable_registry(catalog.instantiate("nd1").metric)
    zn = PhasePoint(np.array([0.1, 1.2, 0.8, -0.2]),
                    np.array([0.3, 0.2, -0.1, 0.25]))
    trajn = flow.integrate(regn["H"], zn, 1e-3, 10000, keep_every=100)
    drift_nd = max(flow.conservation_report(
        trajn, [regn[k] for k in ("H", "Pi_t", "Pi_z", "S")]).values())
    drift_hj = 0.0
    for _ in range(20):
        params = {
            "a0": rng.uniform(0.8, 1.3), "a1": rng.uniform(-0.1, 0.3),
            "a2": rng.uniform(0.0, 0.05), "b0": rng.uniform(0.6, 1.1),
            "b1": rng.uniform(-0.1, 0.2), "b2": rng.uniform(0.0, 0.04),
            "c0": rng.uniform(0.9, 1.4), "c1": rng.uniform(-0.1, 0.25),
            "c2": rng.uniform(0.0, 0.04),
            "beta": rng.uniform(0.5, 1.5), "gamma": rng.uniform(0.5, 1.5)}
        regh = flow.observable_registry(
            catalog.instantiate("hj1-generic", **params).metric)
        zh = PhasePoint(
            np.array([0.0, rng.uniform(1.0, 2.0), rng.uniform(-0.5, 0.5),
                      rng.uniform(-0.5, 0.5)]),
            rng.uniform(-0.4, 0.4, size=4))
        trajh = flow.integrate(regh["H"], zh, 1e-3, 2000, keep_every=100)
        drift_hj = max(drift_hj, flow.conservation_report(
            trajh, [regh["L"]])["L"])
    ok = drift_ii < 1e-7 and drift_nd < 1e-7 and drift_hj < 1e-7
    _record(6, "first integrals conserved along the midpoint flow", ok,
            f"half-flat {drift_ii:.2e}, parabolic {drift_nd:.2e}, "
            f"biaxial {drift_hj:.2e}")


def test_criterion_07_separability():
    rng = _rng()
    g9 = multicentre_build(potential_library("pot-ix-elliptic"))
    pts = [np.array([rng.uniform(-1, 1), rng.uniform(3.2, 4.5),
                     rng.uniform(1.1, 1.9), rng.uniform(2.1, 2.9)])
           for _ in range(3)]
    rep = sep.lc_scan(g9, [0.0, 0.1], pts, rng, n_momenta=5)
    q0_ok = all(r < 1e-6 for (q, i, j), r in rep.pair_residuals.items()
                if q == 0.0)
    charged_fail = rep.pair_residuals[(0.1, 1, 2)] > 1e-3
    sep_ok = True
    for name in ("hj1-generic", "nd1"):
        ent = catalog.entry(name)
        r = sep.lc_scan(ent.instantiate().metric, [0.0, 0.1],
                        ent.sample_points(3, rng), rng)
        sep_ok = sep_ok and r.verdict == "separating"
    ok = (rep.verdict == "not separating" and q0_ok and charged_fail
          and sep_ok)
    _record(7, "Levi-Civita separability verdicts", ok,
            f"elliptic chart {rep.verdict}; charged pair residual "
            f"{rep.pair_residuals[(0.1, 1, 2)]:.2e}")


def test_criterion_08_quantization_anomaly():
    rng = _rng()
    worst = 0.0
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
                worst = max(worst, float(np.max(np.abs(an.B))),
                            float(np.max(np.abs(an.A))))
    fix_ent = catalog.entry("conformal-ii")
    fix = fix_ent.instantiate()
    x = fix_ent.sample_points(1, rng)[0]
    an = sep.quantum_anomaly(fix.metric, fix.notes["anomaly_probe"], x,
                             check=False)
    fix_B = float(np.max(np.abs(an.B)))
    ok = checked >= 1 and worst < 1e-7 and fix_B > 1e-4
    _record(8, "anomaly tensor vanishes iff the geometry allows it", ok,
            f"Ricci-flat worst {worst:.2e}, fixture B {fix_B:.2e}")


def test_criterion_09_nondiagonal_family():
    rng = _rng()
    bundle = catalog.instantiate("nds5")
    res = nd_system_residual(bundle, rng.uniform(2.2, 3.5, size=20))
    sys_worst = max(res.values())
    pull_worst = 0.0
    for L, ktil, v0 in [(4.0, 2.0, 1.0)]:
        deg = catalog.instantiate("nd-degenerate", v0=v0, L=L,
                                  ktil=ktil).metric
        g2 = catalog.instantiate("G_II", lam=-2.0).metric
        scaled = MetricModel("scaled", "bianchi2",
                             lambda x, _g=g2, _L=L: _L * _g.g(x))
        pb = pullback_metric(scaled, coordinate_map(
            "degenerate-to-halfflat", v0=v0, L=L, ktil=ktil))
        for p in catalog.entry("nd-degenerate").sample_points(5, rng):
            pull_worst = max(pull_worst, float(np.max(np.abs(
                pb.g(p) - deg.g(p)))))
    ok = sys_worst < 1e-8 and pull_worst < 1e-8
    _record(9, "non-diagonal profile system and degenerate-member map", ok,
            f"system {sys_worst:.2e}, pullback {pull_worst:.2e}")


def test_criterion_10_engine_integrity():
    rng = _rng()
    fd_worst = 0.0
    for name in catalog.names():
        e = catalog.entry(name)
        m = e.instantiate().metric
        for x in e.sample_points(2, rng):
            d_fd = m.partials(x, engine.FD_CFG)
            d_cs = m.partials(x, engine.DEFAULT_CFG)
            fd_worst = max(fd_worst, float(np.max(np.abs(d_fd - d_cs))))
    ent = catalog.entry("g_II")
    reg = flow.observable_registry(ent.instantiate().metric)
    pts = poisson.phase_samples(ent, 5, rng)
    jac = max(abs(poisson.jacobi_residual(reg[a], reg[b], reg[c], z))
              for z in pts for (a, b, c) in [("K2", "L1", "H")])
    z0 = PhasePoint(np.array([0.0, 2.0, 0.3, -0.1]),
                    np.array([0.2, 0.5, 0.1, 0.4]))
    fwd = flow.integrate(reg["H"], z0, 1e-3, 200)
    back = flow.integrate(reg["H"], fwd.samples[-1], -1e-3, 200)
    rev = float(np.max(np.abs(back.samples[-1].flat() - z0.flat())))
    ok = fd_worst < 1e-6 and jac < 1e-6 and rev < 1e-9
    _record(10, "derivative cross-checks, Jacobi identity, time reversal",
            ok, f"fd {fd_worst:.2e}, jacobi {jac:.2e}, reversal {rev:.2e}")
