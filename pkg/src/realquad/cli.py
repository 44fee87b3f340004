"""Command-line interface.

Commands: validate, run, sweep, knead, entropy, levy, plot.  Exit codes:
0 success, 1 usage or parse error, 2 domain rejection (inadmissible input,
wrong shape), 3 numerical failure.  JSON goes to stdout; CSV and SVG go to
stdout or to files given by options.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import click

from . import combinatorics as comb
from . import kneading as kn
from . import plmodel as pl
from . import plotting
from . import pullback as pb
from . import quadmap as qm
from .errors import InadmissibleError, ParseError, RealQuadError, WrongShapeError

EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3


def _parse_or_exit(text: str) -> comb.Combinatorics:
    try:
        return comb.parse(text)
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(EXIT_USAGE)


def _default_precision() -> str:
    return os.environ.get("THURSTON_PRECISION", "double")


def _config_from_options(precision, max_iter, tol, mu_blowup, gap_min):
    kwargs = {"precision": precision}
    if max_iter is not None:
        kwargs["max_iter"] = max_iter
    if tol is not None:
        kwargs["tol_conv"] = tol
    if mu_blowup is not None:
        kwargs["mu_blowup"] = mu_blowup
    if gap_min is not None:
        kwargs["gap_min"] = gap_min
    try:
        return pb.PullbackConfig(**kwargs)
    except RealQuadError as exc:
        click.echo(f"bad configuration: {exc}", err=True)
        sys.exit(EXIT_USAGE)


def _precision_option(f):
    return click.option(
        "--precision",
        type=click.Choice(["double", "extended"]),
        default=None,
        help="Arithmetic backend (default from THURSTON_PRECISION or double).",
    )(f)


@click.group()
def main():
    """Critically finite real quadratic maps from combinatorics."""


@main.command()
@click.argument("combinatorics")
def validate(combinatorics):
    """Classify a combinatorics vector; exit 2 when inadmissible."""
    c = _parse_or_exit(combinatorics)
    result = comb.check_admissible(c)
    if not result.ok:
        click.echo(json.dumps({"admissible": False, "reason": result.reason}))
        sys.exit(EXIT_DOMAIN)
    report = comb.classify(c)
    click.echo(json.dumps(report.to_json_dict()))


def _write_trajectory(outcome: pb.PullbackOutcome, path: str, n: int):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["step", "mu", "kappa", "sigma", "delta"]
            + [f"t{j}" for j in range(n + 1)]
        )
        for point in outcome.trajectory:
            writer.writerow(
                [point.step, point.mu, point.kappa, point.sigma, point.delta]
                + list(point.t)
            )


@main.command(name="run")
@click.argument("combinatorics")
@_precision_option
@click.option("--max-iter", type=int, default=None)
@click.option("--tol", type=float, default=None, help="Marked-point step tolerance.")
@click.option("--mu-blowup", type=float, default=None)
@click.option("--gap-min", type=float, default=None)
@click.option("--start", default=None, help="Explicit start t0,...,tn.")
@click.option("--trajectory", "trajectory_file", default=None, metavar="FILE")
def run_cmd(combinatorics, precision, max_iter, tol, mu_blowup, gap_min, start, trajectory_file):
    """Iterate the pullback for one combinatorics; print the outcome JSON."""
    c = _parse_or_exit(combinatorics)
    config = _config_from_options(
        precision or _default_precision(), max_iter, tol, mu_blowup, gap_min
    )
    explicit = None
    if start is not None:
        try:
            explicit = [float(v) for v in start.split(",")]
        except ValueError:
            click.echo("bad --start vector", err=True)
            sys.exit(EXIT_USAGE)
    try:
        outcome = pb.run(c, config, explicit_start=explicit)
    except InadmissibleError as exc:
        click.echo(f"inadmissible: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)
    except RealQuadError as exc:
        click.echo(f"failed: {exc}", err=True)
        sys.exit(EXIT_NUMERIC)
    if trajectory_file:
        _write_trajectory(outcome, trajectory_file, c.n)
    click.echo(json.dumps(outcome.to_json_dict()))
    if outcome.verdict is pb.Verdict.MAX_ITERATIONS and outcome.error:
        sys.exit(EXIT_NUMERIC)


def _sweep_row(args):
    text, precision = args
    c = comb.parse(text)
    report = comb.classify(c)
    config = pb.PullbackConfig(precision=precision)
    outcome = pb.run(c, config)
    levy_period = ""
    if report.shape is comb.Shape.PLUS_MINUS_PLUS:
        certificate = pl.find_levy_certificate(pl.build(c))
        if certificate is not None:
            levy_period = certificate.period
    row = report.to_json_dict()
    return [
        text,
        c.n,
        row["shape"],
        row["dynamic_type"],
        row["minimal"],
        row["chi"],
        row["n_pc"],
        outcome.verdict.value,
        f"{float(outcome.final.mu):.9g}",
        f"{float(outcome.final.kappa):.9g}",
        f"{outcome.coords.sigma:.9g}",
        f"{outcome.coords.delta:.9g}",
        outcome.iterations,
        levy_period,
    ]


_SWEEP_HEADER = [
    "combinatorics",
    "n",
    "shape",
    "dynamic_type",
    "minimal",
    "chi",
    "n_pc",
    "verdict",
    "mu",
    "kappa",
    "sigma",
    "delta",
    "iterations",
    "levy_period",
]


@main.command()
@click.argument("n_max", type=int)
@click.option("--minimal", is_flag=True)
@click.option("--nonpoly", is_flag=True)
@_precision_option
@click.option("--jobs", type=int, default=1, help="Parallel workers.")
@click.option("--out", "out_file", default=None, metavar="FILE")
def sweep(n_max, minimal, nonpoly, precision, jobs, out_file):
    """Classify and run every admissible combinatorics with n <= N_MAX."""
    precision = precision or _default_precision()
    try:
        vectors = []
        for n in range(1, n_max + 1):
            vectors.extend(
                comb.enumerate_admissible(
                    n, minimal=minimal, nonpolynomial=nonpoly, bound=max(8, n_max)
                )
            )
    except RealQuadError as exc:
        click.echo(f"enumeration failed: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)

    tasks = [(str(c), precision) for c in vectors]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row, tasks))
    else:
        rows = [_sweep_row(task) for task in tasks]

    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(_SWEEP_HEADER)
    writer.writerows(rows)
    if out_file:
        with open(out_file, "w", newline="") as handle:
            handle.write(buffer.getvalue())
    else:
        click.echo(buffer.getvalue(), nl=False)


@main.command()
@click.argument("combinatorics")
def knead(combinatorics):
    """Exact kneading invariants of a unimodal combinatorics."""
    c = _parse_or_exit(combinatorics)
    try:
        invariants = kn.invariants_of_combinatorics(c)
    except (InadmissibleError, WrongShapeError) as exc:
        click.echo(f"rejected: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)
    click.echo(json.dumps(invariants.to_json_dict()))


@main.command()
@click.argument("combinatorics", required=False)
@click.option("--k1", type=float, default=None, help="Query by invariant value.")
def entropy(combinatorics, k1):
    """Topological entropy from kneading data."""
    if (combinatorics is None) == (k1 is None):
        click.echo("give a combinatorics or --k1, not both", err=True)
        sys.exit(EXIT_USAGE)
    try:
        if k1 is not None:
            value = kn.entropy_from_k1(k1)
            click.echo(json.dumps({"k1": k1, "entropy": value}))
        else:
            c = _parse_or_exit(combinatorics)
            invariants = kn.invariants_of_combinatorics(c)
            value = kn.entropy_from_k1(float(invariants.k1))
            click.echo(
                json.dumps({"k1": float(invariants.k1), "entropy": value})
            )
    except (InadmissibleError, WrongShapeError, ValueError) as exc:
        click.echo(f"rejected: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)


@main.command()
@click.argument("combinatorics")
@click.option("--max-period", type=int, default=None)
def levy(combinatorics, max_period):
    """Search an obstruction certificate on the +-+ Markov edges."""
    c = _parse_or_exit(combinatorics)
    try:
        certificate = pl.find_levy_certificate(pl.build(c), max_period)
    except (InadmissibleError, WrongShapeError) as exc:
        click.echo(f"rejected: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)
    if certificate is None:
        click.echo(json.dumps({"certificate": None}))
    else:
        click.echo(json.dumps(certificate.to_json_dict()))


@main.command()
@click.argument("combinatorics", required=False)
@click.option("--params", default=None, help="mu,kappa instead of a pullback run.")
@_precision_option
@click.option("--out", "out_file", default=None, metavar="FILE")
def plot(combinatorics, params, precision, out_file):
    """Render the lifted graph as SVG (after a pullback run, or directly)."""
    if (combinatorics is None) == (params is None):
        click.echo("give a combinatorics or --params, not both", err=True)
        sys.exit(EXIT_USAGE)
    state = None
    c = None
    if params is not None:
        try:
            mu, kappa = (float(v) for v in params.split(","))
            epstein = qm.EpsteinParams(mu, kappa)
        except (ValueError, RealQuadError) as exc:
            click.echo(f"bad --params: {exc}", err=True)
            sys.exit(EXIT_USAGE)
    else:
        c = _parse_or_exit(combinatorics)
        config = pb.PullbackConfig(precision=precision or _default_precision())
        try:
            outcome = pb.run(c, config)
        except InadmissibleError as exc:
            click.echo(f"inadmissible: {exc}", err=True)
            sys.exit(EXIT_DOMAIN)
        epstein = outcome.final
        state = outcome.state
    svg = plotting.render_lifted_graph(epstein, state, c)
    if out_file:
        with open(out_file, "w") as handle:
            handle.write(svg)
    else:
        click.echo(svg)


if __name__ == "__main__":
    main()
