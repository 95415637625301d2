import csv
import functools
import json
import logging
import sys
from pathlib import Path

import click

from .arith.poly import PLANE, MultiPoly
from .arith.scalars import RATIONALS
from .bounds import FAIL, INCONCLUSIVE, check_degree_bounds, check_order_bounds, existence_condition, \
    singularity_order_bounds, worst_verdict
from .cohomology import castelnuovo, cohomology, generic_orders
from .config import Settings
from .db import get_run_results, init_db, latest_run_ids
from .errors import ParseError, SingordError
from .jsonio import dumps, error_payload, write
from .local.invariants import normal_form
from .pack_loader import list_packs, load_pack
from .profile import germ_profile
from .realizer import ROUTES, ak_family, construct_ak_3d, minimal_degree, realize_critical_point, realize_plane_curve
from .runner import run_corpus
from .schemes import GENERIC, SCHEME_KINDS, build_scheme, scheme_from_json, scheme_to_json

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 3


def _settings() -> Settings:
    try:
        return Settings.from_env()
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="SINGORD_JET_CEILING") from None


def _parse_poly(text: str) -> MultiPoly:
    return MultiPoly.parse(text, PLANE)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _emit(data, output: str | None, code: int = EXIT_OK) -> None:
    click.echo(write(data, output))
    sys.exit(code)


def _verdict_code(verdict: str) -> int:
    return {FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(verdict, EXIT_OK)


def pipeline(fn):
    """Shared --seed/--output options and error-to-JSON mapping."""

    @click.option("--seed", default=0, type=int, show_default=True, help="Random seed")
    @click.option("--output", "output", default=None, help="Also write the JSON to this path")
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SingordError as exc:
            click.echo(dumps(error_payload(exc)))
            sys.exit(exc.exit_code)
        except ValueError as exc:
            click.echo(dumps(error_payload(exc)))
            sys.exit(ParseError.exit_code)

    return wrapper


@click.group()
@click.option("--verbose", is_flag=True, default=False, help="Debug logging on stderr")
def cli(verbose: bool):
    """singord - exact singularity orders, schemes and realizations"""
    if verbose:
        logging.basicConfig(level=logging.DEBUG)


# ── local invariants and schemes ──────────────────────────────────


@cli.command("invariants")
@click.argument("polynomial")
@pipeline
def invariants_cmd(polynomial: str, seed: int, output: str | None):
    """mu, tau, mt, delta, r and the essential tree of a germ at the origin."""
    _emit(germ_profile(_parse_poly(polynomial), _settings()), output)


@cli.command("scheme")
@click.argument("polynomial", required=False)
@click.option("--kind", type=click.Choice(SCHEME_KINDS, case_sensitive=False), required=True)
@click.option("--m", "m", type=int, default=None, help="Multiplicity of a FAT point")
@click.option("--position", default=None, help="Point as \"a,b\" (rationals allowed) or GENERIC")
@pipeline
def scheme_cmd(polynomial: str | None, kind: str, m: int | None, position: str | None, seed: int,
               output: str | None):
    """Build a one-point scheme and print its degree, M2 and serialization."""
    settings = _settings()
    if kind.lower() != "fat" and not polynomial:
        raise click.BadParameter("a polynomial is required for this kind", param_hint="POLYNOMIAL")
    source = _parse_poly(polynomial) if polynomial else None
    scheme = build_scheme(source, kind, _position(position), m=m, seed=seed, settings=settings)
    _emit({"degree": scheme.degree, "m2": scheme.m2(seed, settings), "scheme": scheme_to_json(scheme)}, output)


def _position(text: str | None):
    if text is None:
        return None
    if text.strip().upper() == GENERIC:
        return GENERIC
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise click.BadParameter(f"expected two coordinates, got {text!r}", param_hint="--position")
    return [RATIONALS.parse(p) for p in parts]


@cli.command("cohomology")
@click.argument("scheme_file")
@click.option("--degree", "n", type=int, required=True)
@pipeline
def cohomology_cmd(scheme_file: str, n: int, seed: int, output: str | None):
    """h0 and h1 of J_Z(n)."""
    if n < 0:
        raise click.BadParameter("degree must be non-negative", param_hint="--degree")
    scheme = scheme_from_json(_read_json(scheme_file), _settings())
    h0, h1 = cohomology(scheme, n)
    _emit({"deg": scheme.degree, "n": n, "h0": h0, "h1": h1}, output)


@cli.command("castelnuovo")
@click.argument("scheme_file")
@pipeline
def castelnuovo_cmd(scheme_file: str, seed: int, output: str | None):
    """Castelnuovo function, ord0 and ord1 of a scheme."""
    _emit(castelnuovo(scheme_from_json(_read_json(scheme_file), _settings())), output)


@cli.command("orders")
@click.argument("scheme_file")
@click.option("--mode", type=click.Choice(["iso", "def"], case_sensitive=False), default="iso", show_default=True)
@click.option("--trials", type=int, default=None, help="Number of sampled representatives")
@pipeline
def orders_cmd(scheme_file: str, mode: str, trials: int | None, seed: int, output: str | None):
    """Generic ord0 and ord1 over sampled representatives."""
    if trials is not None and trials < 1:
        raise click.BadParameter("at least one trial is needed", param_hint="--trials")
    settings = _settings()
    orders = generic_orders(scheme_from_json(_read_json(scheme_file), settings), mode, trials, seed, settings)
    _emit(orders, output, EXIT_OK if orders.stable else EXIT_INCONCLUSIVE)


# ── bounds ────────────────────────────────────────────────────────


@cli.command("bounds")
@click.argument("subject")
@click.option("--mode", type=click.Choice(["iso", "def"], case_sensitive=False), default="iso", show_default=True)
@click.option("--trials", type=int, default=None)
@pipeline
def bounds_cmd(subject: str, mode: str, trials: int | None, seed: int, output: str | None):
    """All applicable bound reports for a germ or a scenario file.

    A scenario is {"targets": [...], "degree": d} for the existence
    conditions, or {"scheme": ...} for the order bounds.
    """
    settings = _settings()
    if subject.endswith(".json"):
        scenario = _read_json(subject)
        if "targets" in scenario:
            reports = existence_condition([str(t) for t in scenario["targets"]], int(scenario["degree"]),
                                          settings, seed)
        elif "scheme" in scenario:
            scheme = scheme_from_json(scenario["scheme"], settings)
            reports = check_order_bounds(scheme, scenario.get("mode", mode), scenario.get("trials", trials),
                                         seed, settings)
        else:
            raise ParseError("scenario needs 'targets' and 'degree', or 'scheme'")
    else:
        f = _parse_poly(subject)
        reports = check_degree_bounds(f, settings, seed)
        for flavor in ("top", "an", "crit"):
            reports.extend(singularity_order_bounds(f, flavor, settings, seed=seed))
    verdict = worst_verdict(reports)
    _emit({"reports": [r.to_json() for r in reports], "verdict": verdict}, output, _verdict_code(verdict))


# ── realizations ──────────────────────────────────────────────────


@cli.command("realize")
@click.option("--target", "targets", multiple=True, required=True,
              help="Ak, Dk, Ek or a polynomial; repeat for several points of a curve")
@click.option("--flavor", type=click.Choice(["crit", "top", "an"], case_sensitive=False), default="crit",
              show_default=True)
@click.option("--degree", "degree", type=int, default=None, help="Curve degree (default: least passing e39/e43)")
@click.option("--route", type=click.Choice(ROUTES, case_sensitive=False), default="auto", show_default=True,
              help="crit only; auto tries the cluster route first and falls back to the critical-scheme route")
@pipeline
def realize_cmd(targets: tuple[str, ...], flavor: str, degree: int | None, route: str, seed: int, output: str | None):
    """A critical point (crit) or a plane curve (top, an) with the given singularities."""
    settings = _settings()
    germs = [_target(t) for t in targets]
    flavor = flavor.lower()
    if flavor == "crit":
        if len(germs) != 1:
            raise click.BadParameter("crit takes exactly one target", param_hint="--target")
        result = realize_critical_point(germs[0], seed, settings, route.lower())
    else:
        d = degree if degree is not None else minimal_degree(germs, flavor, settings, seed)
        result = realize_plane_curve(germs, d, seed, flavor, settings)
    _emit(result, output, EXIT_OK if result.verified else EXIT_FAIL)


def _target(text: str) -> MultiPoly:
    if Path(text).suffix == ".json":
        return _parse_poly(str(_read_json(text)["germ"]))
    try:
        return normal_form(text)
    except ParseError:
        return _parse_poly(text)


@cli.command("ak-family")
@click.option("--m", "m", type=int, required=True)
@pipeline
def ak_family_cmd(m: int, seed: int, output: str | None):
    """(y - x^m)^2 + y^(2m) with its A_(2m^2-1) point verified."""
    if m < 2:
        raise click.BadParameter("m must be at least 2", param_hint="--m")
    result = ak_family(m, _settings())
    _emit(result, output, EXIT_OK if result.verified else EXIT_FAIL)


@cli.command("ak3d")
@click.option("--k", "k", type=int, required=True)
@pipeline
def ak3d_cmd(k: int, seed: int, output: str | None):
    """A polynomial in three variables with an A_k point, verified by colength."""
    result = construct_ak_3d(k, seed, _settings())
    _emit(result, output, EXIT_OK if result.verified else EXIT_FAIL)


# ── corpus ────────────────────────────────────────────────────────


@cli.command("list-packs")
@click.option("--dir", "packs_dir", default="packs", help="Packs directory")
def list_packs_cmd(packs_dir: str):
    """List available corpus packs."""
    packs = list_packs(packs_dir)
    if not packs:
        click.echo("No packs found.")
        return
    for name in packs:
        pack = load_pack(name, packs_dir)
        click.echo(f"  {pack.id:24s}  {pack.name} ({len(pack.cases)} cases)")


@cli.command("corpus")
@click.option("--dir", "packs_dir", default="packs", help="Packs directory")
@click.option("--pack", "pack_names", multiple=True, help="Run only these packs (repeatable)")
@click.option("--db", "db_path", default=None, help="Store results in this sqlite database")
@click.option("--skip-slow", is_flag=True, default=False, help="Skip cases marked slow")
@pipeline
def corpus_cmd(packs_dir: str, pack_names: tuple[str, ...], db_path: str | None, skip_slow: bool, seed: int,
               output: str | None):
    """Run the acceptance corpus; exits 0 iff every case passes."""
    names = list(pack_names) or list_packs(packs_dir)
    if not names:
        raise click.BadParameter(f"no packs in {packs_dir}", param_hint="--dir")
    packs = [load_pack(name, packs_dir) for name in names]
    report = run_corpus(packs, seed, _settings(), db_path, include_slow=not skip_slow)
    _emit(report, output, EXIT_OK if report["passed"] else EXIT_FAIL)


@cli.command("report")
@click.option("--db", "db_path", default="results.sqlite", help="Database path")
@click.option("--out", "out_dir", default="report", help="Output directory for report")
def report_cmd(db_path: str, out_dir: str):
    """Generate a summary report from stored corpus results."""
    from .reporting import generate_report

    if not Path(db_path).exists():
        click.echo(f"Database not found: {db_path}")
        return

    md_path = generate_report(db_path, out_dir)
    click.echo(f"Report generated: {md_path}")


@cli.command("export")
@click.option("--db", "db_path", default="results.sqlite", help="Database path")
@click.option("--run", "run_id", default=None, help="Specific run ID (default: latest of every pack)")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default="csv",
    help="Export format",
)
@click.option("--out", "out_path", default=None, help="Output file path")
def export_cmd(db_path: str, run_id: str | None, fmt: str, out_path: str | None):
    """Export stored results to CSV or JSON."""
    conn = init_db(db_path)
    run_ids = [run_id] if run_id else latest_run_ids(conn)
    if not run_ids:
        click.echo("No runs found in database.")
        conn.close()
        return

    results = [row for rid in run_ids for row in get_run_results(conn, rid)]
    conn.close()
    if not results:
        click.echo(f"No results found for {', '.join(run_ids)}.")
        return

    if out_path is None:
        out_path = f"results.{fmt}"

    if fmt == "csv":
        fieldnames = list(results[0].keys())
        with open(out_path, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(results)
    else:
        with open(out_path, "w") as f:
            json.dump(results, f, indent=2, default=str)

    click.echo(f"Exported {len(results)} rows to {out_path}")
