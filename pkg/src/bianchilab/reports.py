"""Configuration-driven experiment runners and artifact writers."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import time

import jsonschema
import numpy as np

from . import catalog, engine, flow, poisson, separability, symmetry
from .catalog import nd_system_residual, potential_library
from .curvature import curvature_package
from .errors import CatalogMissError, ConfigError
from .flow import PhasePoint
from .multicentre import multicentre_build

ARTIFACT_VERSION = "1"

KINDS = ("curvature", "symmetries", "flow", "brackets", "separability",
         "multicentre-audit")

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": list(KINDS)},
        "metrics": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "params": {"type": "object"},
                },
            },
        },
        "potentials": {"type": "array", "items": {"type": "string"}},
        "n_points": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "tolerance": {"type": "number", "exclusiveMinimum": 0},
        "flow": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "x0": {"type": "array", "items": {"type": "number"},
                       "minItems": 4, "maxItems": 4},
                "pi0": {"type": "array", "items": {"type": "number"},
                        "minItems": 4, "maxItems": 4},
                "dt": {"type": "number", "exclusiveMinimum": 0},
                "n_steps": {"type": "integer", "minimum": 1},
                "keep_every": {"type": "integer", "minimum": 1},
                "observables": {"type": "array", "items": {"type": "string"}},
            },
        },
        "q_values": {"type": "array", "items": {"type": "number"}},
    },
}


def validate_config(cfg):
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(cfg), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        pointer = "/" + "/".join(str(p) for p in e.path)
        raise ConfigError(e.message, pointer=pointer)
    return cfg


def _rng(cfg):
    return np.random.default_rng(cfg.get("seed", 0))


def _metrics(cfg, default_names):
    specs = cfg.get("metrics")
    if not specs:
        specs = [{"name": n} for n in default_names]
    out = []
    for spec in specs:
        bundle = catalog.instantiate(spec["name"], **spec.get("params", {}))
        out.append((spec["name"], bundle))
    return out


# ---------------------------------------------------------------------------
# Atomic artifact writers
# ---------------------------------------------------------------------------

def atomic_write_text(path, text):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def write_json(path, obj):
    atomic_write_text(path, json.dumps(obj, indent=2, default=_jsonable))


def write_csv(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    atomic_write_text(path, buf.getvalue())


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    raise TypeError(f"not JSON-serializable: {type(obj)}")


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------

def run_curvature(cfg):
    rng = _rng(cfg)
    tol = cfg.get("tolerance", 1e-7)
    n = cfg.get("n_points", 5)
    results = []
    for name, bundle in _metrics(cfg, catalog.names()):
        entry = catalog.entry(name)
        pts = entry.sample_points(n, rng)
        worst_ric = 0.0
        petrov = set()
        wm_eigs = None
        for p in pts:
            pkg = curvature_package(bundle.metric, p, frame=bundle.frame)
            worst_ric = max(worst_ric, float(np.max(np.abs(pkg.ricci))))
            petrov.add(pkg.petrov_minus)
            wm_eigs = sorted(np.linalg.eigvalsh(pkg.weyl_minus))
        row = {"name": name, "max_ricci": worst_ric,
               "petrov_minus": sorted(petrov),
               "weyl_minus_eigs": wm_eigs, "passed": True}
        if entry.labels.get("ricci_flat"):
            row["passed"] = row["passed"] and worst_ric < tol
        expect = entry.labels.get("petrov_minus")
        if expect:
            row["passed"] = row["passed"] and petrov == {expect}
        row["residual"] = worst_ric
        results.append(row)
    return results


def _killing_fields(bundle):
    if bundle.bianchi is None:
        return {}
    fs = list(bundle.bianchi.killing_fields)
    if bundle.bianchi.extra_killing is not None:
        fs.append(bundle.bianchi.extra_killing)
    return {f.name: f for f in fs}


def _tensor_residual(residual_fn, metric, T, p):
    """Rank-2 residual preferring the analytic derivative scheme.

    Falls back to the checker's central-difference default for component
    functions that are not analytic in the coordinates.
    """
    try:
        r = residual_fn(metric, T, p, cfg=engine.DEFAULT_CFG)
        if np.all(np.isfinite(r)):
            return float(np.max(np.abs(r)))
    except (TypeError, ValueError):
        pass
    return float(np.max(np.abs(residual_fn(metric, T, p))))


def run_symmetries(cfg):
    rng = _rng(cfg)
    tol = cfg.get("tolerance", 1e-8)
    n = cfg.get("n_points", 3)
    results = []
    for name, bundle in _metrics(cfg, catalog.names()):
        entry = catalog.entry(name)
        pts = entry.sample_points(n, rng)
        fields = _killing_fields(bundle)
        for fname, f in fields.items():
            r = max(float(np.max(np.abs(
                symmetry.killing_residual(bundle.metric, f, p))))
                for p in pts)
            results.append({"name": f"{name}:killing:{fname}",
                            "residual": r, "passed": r < tol})
        if bundle.complex_structures:
            agg = {}
            for p in pts:
                chk = symmetry.complex_structure_check(
                    bundle.metric, bundle.complex_structures, p)
                for k, v in chk.items():
                    if k != "orientation":
                        agg[k] = max(agg.get(k, 0.0), v)
            r = max(agg.values())
            results.append({"name": f"{name}:complex-structures",
                            "residual": r, "passed": r < tol,
                            "detail": agg})
        for kyname, Y in (bundle.ky_tensors or {}).items():
            r = max(_tensor_residual(symmetry.killing_yano_residual,
                                     bundle.metric, Y, p) for p in pts)
            results.append({"name": f"{name}:killing-yano:{kyname}",
                            "residual": r, "passed": r < tol})
        for ksname, S in (bundle.ks_tensors or {}).items():
            r = max(_tensor_residual(symmetry.killing_stackel_residual,
                                     bundle.metric, S, p) for p in pts)
            results.append({"name": f"{name}:killing-stackel:{ksname}",
                            "residual": r, "passed": r < tol})
    return results


def run_flow(cfg):
    rng = _rng(cfg)
    tol = cfg.get("tolerance", 1e-7)
    fc = cfg.get("flow", {})
    results = []
    artifacts = {}
    for name, bundle in _metrics(cfg, ["g_II"]):
        entry = catalog.entry(name)
        registry = flow.observable_registry(bundle.metric)
        x0 = np.asarray(fc.get("x0", entry.sample_points(1, rng)[0]))
        pi0 = np.asarray(fc.get("pi0", rng.uniform(-0.5, 0.5, size=4)))
        traj = flow.integrate(
            registry["H"], PhasePoint(x0, pi0),
            fc.get("dt", 1e-3), fc.get("n_steps", 2000),
            keep_every=fc.get("keep_every", 20),
            metric_name=name, params=bundle.metric.params)
        slots = {f"Pi_{i}" for i in range(4)}
        names = fc.get("observables") or sorted(
            k for k in registry if k not in slots)
        obs = [flow.resolve_observable(registry, k) for k in names]
        drifts = flow.conservation_report(traj, obs)
        series = {o.name: [o(z) for z in traj.samples] for o in obs}
        for oname, d in drifts.items():
            results.append({"name": f"{name}:drift:{oname}",
                            "residual": d, "passed": d < tol})
        artifacts[name] = {"trajectory": traj, "series": series}
    return results, artifacts


def run_brackets(cfg):
    rng = _rng(cfg)
    tol = cfg.get("tolerance", 1e-8)
    n = cfg.get("n_points", 50)
    results = []
    for name, bundle in _metrics(cfg, ["g_II"]):
        entry = catalog.entry(name)
        registry = flow.observable_registry(bundle.metric)
        pts = poisson.phase_samples(entry, n, rng)
        if name == "g_II":
            rows = poisson.verify_bracket_table(
                poisson.w_algebra_table(), registry, pts, tol)
            for row in rows:
                results.append({"name": f"{name}:{{{row['a']},{row['b']}}}",
                                "residual": row["residual"],
                                "passed": row["passed"]})
            ok, res = poisson.involution_check(
                ["K1", "K3", "H", "L1"], registry, pts, tol)
            results.append({"name": f"{name}:involution",
                            "residual": float(res.max()), "passed": ok})
        else:
            set_names = [k for k in ("H", "Pi_t", "Pi_z", "S", "L")
                         if k in registry]
            ok, res = poisson.involution_check(set_names, registry, pts, tol)
            results.append({"name": f"{name}:involution",
                            "residual": float(res.max()), "passed": ok})
    return results


def run_separability(cfg):
    rng = _rng(cfg)
    tol = cfg.get("tolerance", 1e-6)
    n = cfg.get("n_points", 3)
    q_values = cfg.get("q_values", [0.0, 0.1])
    results = []
    reports = {}

    def record(name, metric, pts, expected):
        rep = separability.lc_scan(metric, q_values, pts, rng, tol=tol)
        results.append({
            "name": f"{name}:lc-scan",
            "residual": max(rep.pair_residuals.values()),
            "verdict": rep.verdict,
            "passed": (rep.verdict == "separating") == bool(expected),
        })
        reports[name] = rep

    for name, bundle in _metrics(cfg, ["hj1-generic", "nd1"]):
        entry = catalog.entry(name)
        record(name, bundle.metric, entry.sample_points(n, rng),
               entry.labels.get("separating", True))
    for pname in cfg.get("potentials", []):
        metric = multicentre_build(potential_library(pname))
        pts = [np.concatenate(([rng.uniform(-1, 1)], p))
               for p in potential_sample_points(pname, n, rng)]
        record(pname, metric, pts, expected=False)
    return results, reports


_POTENTIAL_ANCHORS = {
    "mc-linear": (1.4, 0.0, 0.0),
    "mc-vi": (0.9, 0.0, 0.2),
    "mc-vii": (1.0, 1.2, -0.1),
    "elliptic-vi": (2.0, 0.5, 0.1),
    "elliptic-vii": (2.0, 0.5, 0.1),
    "potva": (2.0, 0.5, 0.1),
    "nd-parabolic": (1.0, 1.1, 0.1),
    "potnd-cartesian": (0.4, 1.1, 0.1),
    "pot-ix": (4.5, 0.9, 0.8),
    "pot-ix-elliptic": (4.4, 1.5, 2.5),
    "two-centre": (0.5, 1.0, 0.6),
    "two-centre-dipole": (0.5, 1.0, 0.6),
    "gd-mc": (1.2, 0.9, 0.8),
    "potc2": (1.1, 0.1, 0.7),
}


def potential_sample_points(name, n, rng, spread=0.2):
    """Jittered samples around a per-potential anchor inside its domain."""
    if name not in _POTENTIAL_ANCHORS:
        raise CatalogMissError(name, sorted(_POTENTIAL_ANCHORS))
    base = np.asarray(_POTENTIAL_ANCHORS[name])
    return [base + rng.uniform(-spread, spread, size=3) for _ in range(n)]


def run_multicentre(cfg):
    rng = _rng(cfg)
    tol = cfg.get("tolerance", 1e-8)
    n = cfg.get("n_points", 25)
    names = cfg.get("potentials") or sorted(_POTENTIAL_ANCHORS)
    results = []
    for name in names:
        mc = potential_library(name)
        pts = potential_sample_points(name, n, rng)
        harm = max(mc.harmonic_residual(p) for p in pts)
        mono = max(mc.monopole_residual(p) for p in pts)
        results.append({"name": f"{name}:harmonic", "residual": harm,
                        "passed": harm < tol})
        results.append({"name": f"{name}:monopole", "residual": mono,
                        "passed": mono < tol})
    return results


# ---------------------------------------------------------------------------
# Dispatch and artifact writing
# ---------------------------------------------------------------------------

def run(cfg, out_dir=None, fmt="json"):
    """Validate and execute one experiment config; optionally write the
    report, delimited data, and a rendered figure into ``out_dir``."""
    validate_config(cfg)
    kind = cfg["kind"]
    t0 = time.time()
    artifacts = {}
    if kind == "curvature":
        results = run_curvature(cfg)
    elif kind == "symmetries":
        results = run_symmetries(cfg)
    elif kind == "flow":
        results, artifacts = run_flow(cfg)
    elif kind == "brackets":
        results = run_brackets(cfg)
    elif kind == "separability":
        results, artifacts = run_separability(cfg)
    else:
        results = run_multicentre(cfg)
    report = {
        "artifact_version": ARTIFACT_VERSION,
        "kind": kind,
        "config": cfg,
        "results": results,
        "passed": all(r["passed"] for r in results),
        "wall_clock": time.time() - t0,
    }
    if out_dir is not None:
        _write_artifacts(report, artifacts, out_dir, fmt)
    return report


def _write_artifacts(report, artifacts, out_dir, fmt):
    os.makedirs(out_dir, exist_ok=True)
    kind = report["kind"]
    write_json(os.path.join(out_dir, f"{kind}-report.json"), report)
    if fmt == "csv":
        rows = [(r["name"], r.get("residual", ""), r["passed"])
                for r in report["results"]]
        write_csv(os.path.join(out_dir, f"{kind}-report.csv"),
                  ["check", "residual", "passed"], rows)
    if kind == "flow":
        for name, art in artifacts.items():
            traj = art["trajectory"]
            traj.to_csv(os.path.join(out_dir, f"{kind}-{name}-trajectory.csv"))
            traj.write_manifest(
                os.path.join(out_dir, f"{kind}-{name}-manifest.json"))
    if kind == "separability":
        for name, rep in artifacts.items():
            atomic_write_text(
                os.path.join(out_dir, f"{kind}-{name}-scan.json"),
                rep.to_json())
    _render_figure(report, artifacts, out_dir)


def _render_figure(report, artifacts, out_dir):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    kind = report["kind"]
    fig, ax = plt.subplots(figsize=(9, 4.5))
    if kind == "flow" and artifacts:
        for name, art in artifacts.items():
            times = art["trajectory"].times
            for oname, vals in art["series"].items():
                v = np.asarray(vals)
                ax.plot(times, np.abs(v - v[0]) / max(1.0, abs(v[0])),
                        label=f"{name}:{oname}")
        ax.set_yscale("log")
        ax.set_xlabel("time")
        ax.set_ylabel("relative drift")
        ax.legend(fontsize=6, ncol=2)
    elif kind == "separability" and artifacts:
        for name, rep in artifacts.items():
            pairs = sorted({(i, j) for (_, i, j) in rep.pair_residuals})
            for (i, j) in pairs:
                qs = sorted({q for (q, a, b) in rep.pair_residuals
                             if (a, b) == (i, j)})
                rs = [rep.pair_residuals[(q, i, j)] for q in qs]
                ax.plot(qs, np.maximum(rs, 1e-16), marker="o",
                        label=f"{name} ({i},{j})")
        ax.set_yscale("log")
        ax.set_xlabel("charge q")
        ax.set_ylabel("max residual")
        ax.legend(fontsize=7)
    else:
        names = [r["name"] for r in report["results"]]
        residuals = [max(float(r.get("residual", 0.0)), 1e-18)
                     for r in report["results"]]
        colors = ["tab:blue" if r["passed"] else "tab:red"
                  for r in report["results"]]
        ax.bar(range(len(names)), residuals, color=colors)
        ax.set_yscale("log")
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=90, fontsize=5)
        ax.set_ylabel("max residual")
    ax.set_title(f"{kind} report")
    fig.tight_layout()
    fig_path = os.path.join(out_dir, f"{kind}-report.png")
    fig.savefig(fig_path, dpi=130)
    plt.close(fig)
