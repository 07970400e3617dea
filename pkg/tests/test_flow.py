import numpy as np
import pytest

from bianchilab import catalog, flow
from bianchilab.errors import RegistryError
from bianchilab.flow import PhasePoint
from bianchilab.metric import MetricModel


def flat4():
    return MetricModel("flat4", "mc-cart3", lambda x: np.eye(4))


def test_closed_form_hamiltonian_matches_metric_route(rng):
    gii = catalog.instantiate("g_II").metric
    reg = flow.observable_registry(gii)
    Hm = flow.hamiltonian(gii)
    for _ in range(5):
        z = PhasePoint(
            np.array([rng.uniform(-1, 1), rng.uniform(0.5, 2),
                      rng.uniform(-1, 1), rng.uniform(-1, 1)]),
            rng.normal(size=4))
        assert abs(reg["H"](z) - Hm(z)) < 1e-12


def test_exact_gradients_match_finite_differences(rng):
    for name in ("g_II", "nd1"):
        m = catalog.instantiate(name).metric
        H = flow.hamiltonian(m)
        e = catalog.entry(name)
        x = e.sample_points(1, rng)[0]
        z = PhasePoint(x, rng.normal(size=4))
        from bianchilab import engine
        gx = np.array([engine.fd_partial(
            lambda u: H.fn(u, z.pi), z.x, i) for i in range(4)])
        gp = np.array([engine.fd_partial(
            lambda u: H.fn(z.x, u), z.pi, i) for i in range(4)])
        assert np.max(np.abs(H.grad_x(z) - gx)) < 1e-6
        assert np.max(np.abs(H.grad_pi(z) - gp)) < 1e-6


def test_momentum_degree_scaling(rng):
    reg = flow.observable_registry(catalog.instantiate("g_II").metric)
    z = PhasePoint(np.array([0.2, 1.4, 0.3, -0.5]), rng.normal(size=4))
    for name, obs in reg.items():
        r = flow.degree_scaling_residual(obs, z)
        assert r is None or r < 1e-10, (name, r)


def test_conservation_g_ii_short_run():
    reg = flow.observable_registry(catalog.instantiate("g_II").metric)
    z0 = PhasePoint(np.array([0.0, 2.0, 0.3, -0.1]),
                    np.array([0.2, 0.5, 0.1, 0.4]))
    traj = flow.integrate(reg["H"], z0, 1e-3, 2000, keep_every=20,
                          metric_name="g_II")
    rep = flow.conservation_report(
        traj, [reg[k] for k in
               ("H", "K1", "K2", "K3", "K4", "L1", "L2", "L3", "L4")])
    assert max(rep.values()) < 1e-8, rep


def test_conservation_parabolic_entry():
    reg = flow.observable_registry(catalog.instantiate("nd1").metric)
    z0 = PhasePoint(np.array([0.1, 1.2, 0.8, -0.2]),
                    np.array([0.3, 0.2, -0.1, 0.25]))
    traj = flow.integrate(reg["H"], z0, 1e-3, 2000, keep_every=20)
    rep = flow.conservation_report(
        traj, [reg[k] for k in ("H", "Pi_t", "Pi_z", "S")])
    assert max(rep.values()) < 1e-8, rep


def test_time_reversal():
    reg = flow.observable_registry(catalog.instantiate("g_II").metric)
    z0 = PhasePoint(np.array([0.0, 2.0, 0.3, -0.1]),
                    np.array([0.2, 0.5, 0.1, 0.4]))
    fwd = flow.integrate(reg["H"], z0, 1e-3, 200)
    back = flow.integrate(reg["H"], fwd.samples[-1], -1e-3, 200)
    assert np.max(np.abs(back.samples[-1].flat() - z0.flat())) < 1e-9


def test_midpoint_agrees_with_reference_integrator():
    reg = flow.observable_registry(catalog.instantiate("g_II").metric)
    z0 = PhasePoint(np.array([0.0, 2.0, 0.3, -0.1]),
                    np.array([0.2, 0.5, 0.1, 0.4]))
    mid = flow.integrate(reg["H"], z0, 1e-3, 200)
    ref = flow.integrate(reg["H"], z0, 1e-4, 2000, method="rk4-reference")
    assert np.max(np.abs(ref.samples[-1].flat()
                         - mid.samples[-1].flat())) < 1e-7


def test_flat_metric_straight_lines():
    H = flow.hamiltonian(flat4())
    z0 = PhasePoint(np.zeros(4), np.array([1.0, 2.0, -1.0, 0.5]))
    traj = flow.integrate(H, z0, 0.01, 100)
    assert np.max(np.abs(traj.samples[-1].x - z0.pi)) < 1e-12
    assert np.max(np.abs(traj.samples[-1].pi - z0.pi)) < 1e-12


def test_zero_momentum_is_a_fixed_point():
    reg = flow.observable_registry(catalog.instantiate("g_II").metric)
    z0 = PhasePoint(np.array([0.0, 2.0, 0.3, -0.1]), np.zeros(4))
    traj = flow.integrate(reg["H"], z0, 1e-2, 50)
    assert all(np.max(np.abs(z.flat() - z0.flat())) == 0.0
               for z in traj.samples)


def test_symplectic_two_form_preserved(rng):
    """The step map's Jacobian preserves the canonical two-form."""
    reg = flow.observable_registry(catalog.instantiate("g_II").metric)
    z0 = PhasePoint(np.array([0.1, 1.8, 0.2, -0.3]),
                    np.array([0.2, 0.4, -0.1, 0.3]))
    dt = 1e-2
    eps = 1e-5

    def step(w):
        traj = flow.integrate(reg["H"], PhasePoint.from_flat(w), dt, 1,
                              newton_tol=1e-14)
        return traj.samples[-1].flat()

    w0 = z0.flat()
    J = np.zeros((8, 8))
    for i in range(8):
        e = np.zeros(8)
        e[i] = eps
        J[:, i] = (step(w0 + e) - step(w0 - e)) / (2 * eps)
    Om = np.block([[np.zeros((4, 4)), np.eye(4)],
                   [-np.eye(4), np.zeros((4, 4))]])
    assert np.max(np.abs(J.T @ Om @ J - Om)) < 1e-6


def test_unknown_method_raises():
    H = flow.hamiltonian(flat4())
    with pytest.raises(RegistryError):
        flow.integrate(H, PhasePoint(np.zeros(4), np.ones(4)), 0.1, 1,
                       method="euler")


def test_trajectory_csv_and_manifest(tmp_path):
    H = flow.hamiltonian(flat4())
    traj = flow.integrate(H, PhasePoint(np.zeros(4), np.ones(4)), 0.1, 10,
                          metric_name="flat4")
    csv_path = tmp_path / "traj.csv"
    traj.to_csv(csv_path)
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0].startswith("time,")
    assert len(lines) == len(traj.samples) + 1
    man_path = tmp_path / "manifest.json"
    traj.write_manifest(man_path)
    import json
    man = json.loads(man_path.read_text())
    assert man["metric"] == "flat4" and man["integrator"] == "implicit-midpoint"
