"""Command-line interface: catalog listing and experiment report runners."""

from __future__ import annotations

import json
import sys

import click

from . import catalog, reports
from .errors import BianchiLabError, CatalogMissError, ConfigError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _load_config(path, kind, seed, tol):
    if path:
        try:
            with open(path) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(str(exc))
    else:
        cfg = {}
    cfg.setdefault("kind", kind)
    if cfg["kind"] != kind:
        raise ConfigError(
            f"config kind {cfg['kind']!r} does not match command {kind!r}",
            pointer="/kind")
    if seed is not None:
        cfg["seed"] = seed
    if tol is not None:
        cfg["tolerance"] = tol
    return cfg


def _run_kind(kind, config, out, seed, tol, fmt):
    try:
        cfg = _load_config(config, kind, seed, tol)
        report = reports.run(cfg, out_dir=out, fmt=fmt)
    except (ConfigError, CatalogMissError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    except BianchiLabError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CHECK_FAILED)
    n_fail = sum(1 for r in report["results"] if not r["passed"])
    for r in report["results"]:
        status = "pass" if r["passed"] else "FAIL"
        res = r.get("residual")
        tail = f"  residual={res:.3e}" if isinstance(res, float) else ""
        click.echo(f"[{status}] {r['name']}{tail}")
    click.echo(f"{kind}: {len(report['results']) - n_fail}/"
               f"{len(report['results'])} checks passed "
               f"({report['wall_clock']:.2f}s)")
    if out:
        click.echo(f"artifacts written to {out}")
    sys.exit(EXIT_OK if n_fail == 0 else EXIT_CHECK_FAILED)


def _common(fn):
    fn = click.option("--config", type=click.Path(), default=None,
                      help="JSON experiment configuration.")(fn)
    fn = click.option("--out", type=click.Path(), default=None,
                      help="Directory for report artifacts and figures.")(fn)
    fn = click.option("--seed", type=int, default=None,
                      help="Random seed override.")(fn)
    fn = click.option("--tol", type=float, default=None,
                      help="Tolerance override.")(fn)
    fn = click.option("--format", "fmt",
                      type=click.Choice(["json", "csv"]), default="json",
                      help="Delimited artifact format.")(fn)
    return fn


@click.group()
@click.version_option(package_name="bianchilab")
def main():
    """Verification laboratory for Multi-Centre and Bianchi A geometries."""


@main.command("list")
@click.argument("filter_key", required=False, default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]),
              default="table")
def list_catalog(filter_key, fmt):
    """List catalog entries, optionally filtered by family or label."""
    rows = catalog.manifest(filter_key)
    if not rows and filter_key:
        known = sorted({e.family for e in catalog.select()})
        click.echo(f"error: no entries match {filter_key!r} "
                   f"(families: {', '.join(known)})", err=True)
        sys.exit(EXIT_USAGE)
    if fmt == "json":
        click.echo(json.dumps(rows, indent=2))
    else:
        for r in rows:
            labels = ",".join(sorted(k for k, v in r["labels"].items() if v))
            click.echo(f"{r['name']:<16} {r['family']:<18} "
                       f"chart={r['chart']:<12} {labels}")
        click.echo(f"{len(rows)} entries")
    sys.exit(EXIT_OK)


def _make_command(verb, kind):
    @main.command(verb)
    @_common
    def cmd(config, out, seed, tol, fmt):
        _run_kind(kind, config, out, seed, tol, fmt)

    cmd.__doc__ = f"Run the {kind} report."
    return cmd


curvature = _make_command("curvature", "curvature")
symmetries = _make_command("symmetries", "symmetries")
flow = _make_command("flow", "flow")
brackets = _make_command("brackets", "brackets")
separability = _make_command("separability", "separability")
audit_multicentre = _make_command("audit-multicentre", "multicentre-audit")


if __name__ == "__main__":
    main()
