"""Command-line client for the measure/convolution/verification service.

Every subcommand builds a request, sends it to the HTTP service, and
renders the response as CSV or JSON.  By default the service runs
in-process (no server needed); point ``--server`` at a running
``uvicorn xtropy.service.app:app`` to talk to a remote instance.

Exit codes: 0 success (or verdict pass), 1 a verified claim found a
monotonicity violation, 2 usage error, 3 numeric failure or, under
``--strict``, a divergent/undefined/inconclusive result.
"""

from __future__ import annotations

import sys
from typing import Optional

import click
import httpx

from .reporting import dumps_stable, emit_csv

__all__ = ["main"]

_EXIT_VIOLATION = 1
_EXIT_NUMERIC = 3


class NumericFailure(click.ClickException):
    exit_code = _EXIT_NUMERIC


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # in-process transport: the CLI stays a one-shot batch tool
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

        from .service.app import create_app

        return TestClient(create_app(), raise_server_exceptions=False)


def _request(server: Optional[str], method: str, path: str, payload: Optional[dict] = None):
    with _client(server) as client:
        if method == "GET":
            resp = client.get(path)
        else:
            resp = client.post(path, json=payload)
    if resp.status_code >= 500:
        raise NumericFailure(f"service error on {path}: {resp.text}")
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise click.UsageError(str(detail))
    return resp.json()


def _parse_interval(text: Optional[str]) -> Optional[dict]:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise click.UsageError(f"interval must look like 'c,d', got {text!r}")
    try:
        c, d = float(parts[0]), float(parts[1])
    except ValueError:
        raise click.UsageError(f"could not parse interval {text!r}") from None
    return {"c": c, "d": d}


def _parse_range(text: str, name: str) -> list[float]:
    """Parse 'lo:hi:n' into n evenly spaced points, endpoints included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise click.UsageError(f"{name} must look like 'lo:hi:n', got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise click.UsageError(f"could not parse {name} {text!r}") from None
    if n < 1:
        raise click.UsageError(f"{name} needs n >= 1")
    if n == 1:
        if lo != hi:
            raise click.UsageError(f"{name} with n=1 needs lo == hi")
        return [lo]
    if not lo < hi:
        raise click.UsageError(f"{name} needs lo < hi")
    step = (hi - lo) / (n - 1)
    pts = [lo + i * step for i in range(n)]
    pts[-1] = hi
    return pts


def _grid_option(points: tuple[float, ...], range_text: Optional[str], name: str) -> list[float]:
    if points and range_text:
        raise click.UsageError(f"use either --{name} or --{name}-range, not both")
    if points:
        return sorted(float(p) for p in points)
    if range_text:
        return _parse_range(range_text, f"--{name}-range")
    raise click.UsageError(f"missing --{name} or --{name}-range")


def _config_payload(abs_tol, rel_tol, max_subdiv, tail_mass) -> dict:
    return {
        "abs_tol": abs_tol,
        "rel_tol": rel_tol,
        "max_subdivisions": max_subdiv,
        "tail_mass": tail_mass,
    }


def _tolerance_options(fn):
    fn = click.option("--abs-tol", type=float, default=1e-10, show_default=True)(fn)
    fn = click.option("--rel-tol", type=float, default=1e-10, show_default=True)(fn)
    fn = click.option("--max-subdiv", type=int, default=2000, show_default=True)(fn)
    fn = click.option(
        "--tail-mass",
        type=float,
        default=1e-12,
        show_default=True,
        envvar="XTROPY_TAIL_MASS",
        help="probability left out per truncated tail (env XTROPY_TAIL_MASS)",
    )(fn)
    return fn


def _output_options(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)(fn)
    fn = click.option("--strict", is_flag=True, help="exit 3 on divergent/undefined results")(fn)
    fn = click.option("--server", default=None, help="base URL of a running service")(fn)
    return fn


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _emit_rows(payload: dict, fmt: str, out: Optional[str]) -> None:
    if fmt == "csv":
        _write(emit_csv(payload["rows"]), out)
    else:
        _write(dumps_stable(payload), out)


def _finish_rows(payload: dict, strict: bool) -> None:
    if strict and any(row["status"] != "finite" for row in payload["rows"]):
        click.echo("strict: at least one result is not finite", err=True)
        sys.exit(_EXIT_NUMERIC)


def _report_rows(mapping: dict) -> list[dict]:
    """Flatten a verification report (or report pair) into CSV rows."""
    if "values" in mapping:
        sections = [(mapping["claim"], mapping)]
    else:
        claim = mapping["claim"]
        sections = [
            (f"{claim}@d", mapping["d_direction"]),
            (f"{claim}@c", mapping["c_direction"]),
        ]
    rows = []
    for label, section in sections:
        weight = section.get("weight") or ""
        for entry in section["values"]:
            measure = label
            if "v" in entry:
                measure = f"{label}@{entry['v']!r}"
            rows.append(
                {
                    "c": entry["c"],
                    "d": entry["d"],
                    "measure": measure,
                    "weight": weight,
                    "value": entry["value"],
                    "err": entry["err"],
                    "status": entry["status"],
                }
            )
    return rows


def _finish_report(mapping: dict, strict: bool) -> None:
    verdict = mapping.get("verdict")
    if verdict == "fail":
        click.echo("verdict: fail (monotonicity violation)", err=True)
        sys.exit(_EXIT_VIOLATION)
    if verdict == "inconclusive" and strict:
        click.echo("strict: verdict inconclusive", err=True)
        sys.exit(_EXIT_NUMERIC)


def _emit_report(mapping: dict, fmt: str, out: Optional[str], strict: bool) -> None:
    if fmt == "csv":
        _write(emit_csv(_report_rows(mapping)), out)
    else:
        _write(dumps_stable(mapping), out)
    _finish_report(mapping, strict)


@click.group()
@click.version_option()
def main() -> None:
    """Entropy and extropy measures of interval-conditioned distributions."""


@main.command()
@click.option("--dist", required=True, help="e.g. uniform:0,1 exp:1 weibull:2,1")
@click.option("--measure", "measure_id", required=True)
@click.option("--weight", default=None)
@click.option("--theta", type=float, default=None)
@click.option("--lambda", "lam", type=float, default=None)
@click.option("--interval", default=None, help="conditioning window 'c,d'")
@_tolerance_options
@_output_options
def measure(dist, measure_id, weight, theta, lam, interval, abs_tol, rel_tol,
            max_subdiv, tail_mass, fmt, out, strict, server):
    """Compute one measure, optionally conditioned on an interval."""
    payload = {
        "dist": dist,
        "measure": measure_id,
        "weight": weight,
        "theta": theta,
        "lambda": lam,
        "interval": _parse_interval(interval),
        "config": _config_payload(abs_tol, rel_tol, max_subdiv, tail_mass),
    }
    data = _request(server, "POST", "/measure", payload)
    _emit_rows(data, fmt, out)
    _finish_rows(data, strict)


@main.command()
@click.option("--dist", required=True)
@click.option("--measure", "measure_id", required=True)
@click.option("--weight", default=None)
@click.option("--theta", type=float, default=None)
@click.option("--lambda", "lam", type=float, default=None)
@click.option("--c", "c_points", type=float, multiple=True)
@click.option("--c-range", default=None, help="'lo:hi:n' inclusive")
@click.option("--d", "d_points", type=float, multiple=True)
@click.option("--d-range", default=None, help="'lo:hi:n' inclusive")
@_tolerance_options
@_output_options
def sweep(dist, measure_id, weight, theta, lam, c_points, c_range, d_points,
          d_range, abs_tol, rel_tol, max_subdiv, tail_mass, fmt, out, strict, server):
    """Sweep a measure over a (c, d) grid; rows skip pairs with c >= d."""
    payload = {
        "dist": dist,
        "measure": measure_id,
        "weight": weight,
        "theta": theta,
        "lambda": lam,
        "c_grid": _grid_option(c_points, c_range, "c"),
        "d_grid": _grid_option(d_points, d_range, "d"),
        "config": _config_payload(abs_tol, rel_tol, max_subdiv, tail_mass),
    }
    data = _request(server, "POST", "/sweep", payload)
    _emit_rows(data, fmt, out)
    _finish_rows(data, strict)


@main.command("diff-density")
@click.option("--dist", required=True)
@click.option("--interval", required=True, help="conditioning window 'c,d'")
@click.option("--v", "v_points", type=float, multiple=True)
@click.option("--v-range", default=None, help="'lo:hi:n' inclusive")
@click.option("--convention", type=click.Choice(["normalized", "paper_literal"]),
              default="normalized", show_default=True)
@_tolerance_options
@_output_options
def diff_density(dist, interval, v_points, v_range, convention, abs_tol, rel_tol,
                 max_subdiv, tail_mass, fmt, out, strict, server):
    """Density of |Y1 - Y2| for an i.i.d. pair conditioned on the window."""
    payload = {
        "dist": dist,
        "interval": _parse_interval(interval),
        "v_grid": _grid_option(v_points, v_range, "v"),
        "convention": convention,
        "config": _config_payload(abs_tol, rel_tol, max_subdiv, tail_mass),
    }
    data = _request(server, "POST", "/diff/density", payload)
    _emit_rows(data, fmt, out)
    _finish_rows(data, strict)


@main.command("diff-expect")
@click.option("--dist", required=True)
@click.option("--interval", required=True)
@click.option("--phi", default="v", show_default=True, help="one, v, v2, expneg")
@click.option("--method", type=click.Choice(["quad", "mc"]), default="quad",
              show_default=True)
@click.option("--n", type=int, default=1_000_000, show_default=True,
              help="sample size for --method mc")
@click.option("--seed", type=int, default=0, show_default=True,
              help="rng seed for --method mc")
@_tolerance_options
@_output_options
def diff_expect(dist, interval, phi, method, n, seed, abs_tol, rel_tol,
                max_subdiv, tail_mass, fmt, out, strict, server):
    """E[phi(|Y1 - Y2|)] given both draws fall in the window."""
    payload = {
        "dist": dist,
        "interval": _parse_interval(interval),
        "phi": phi,
        "method": method,
        "n": n,
        "seed": seed,
        "config": _config_payload(abs_tol, rel_tol, max_subdiv, tail_mass),
    }
    data = _request(server, "POST", "/diff/expectation", payload)
    _emit_rows(data, fmt, out)
    _finish_rows(data, strict)


@main.command("diff-wextropy")
@click.option("--dist", required=True)
@click.option("--interval", required=True)
@click.option("--weight", required=True)
@_tolerance_options
@_output_options
def diff_wextropy(dist, interval, weight, abs_tol, rel_tol, max_subdiv,
                  tail_mass, fmt, out, strict, server):
    """Weighted extropy of |Y1 - Y2| (normalized difference density)."""
    payload = {
        "dist": dist,
        "interval": _parse_interval(interval),
        "weight": weight,
        "config": _config_payload(abs_tol, rel_tol, max_subdiv, tail_mass),
    }
    data = _request(server, "POST", "/diff/weighted-extropy", payload)
    _emit_rows(data, fmt, out)
    _finish_rows(data, strict)


@main.group()
def verify() -> None:
    """Check the monotonicity claims on explicit grids."""


def _verify_format_option(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                      default="json")(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False, writable=True),
                      default=None)(fn)
    fn = click.option("--strict", is_flag=True,
                      help="exit 3 on an inconclusive verdict")(fn)
    fn = click.option("--server", default=None)(fn)
    return fn


@verify.command("theorem1")
@click.option("--dist", required=True)
@click.option("--c", type=float, required=True)
@click.option("--d-range", required=True, help="'lo:hi:n' inclusive")
@_tolerance_options
@_verify_format_option
def verify_theorem1(dist, c, d_range, abs_tol, rel_tol, max_subdiv, tail_mass,
                    fmt, out, strict, server):
    """Conditional extropy must grow with d when the cdf is log-concave."""
    payload = {
        "dist": dist,
        "c": c,
        "d_grid": _parse_range(d_range, "--d-range"),
        "config": _config_payload(abs_tol, rel_tol, max_subdiv, tail_mass),
    }
    data = _request(server, "POST", "/verify/theorem1", payload)
    _emit_report(data, fmt, out, strict)


@verify.command("theorem2")
@click.option("--dist", required=True)
@click.option("--weight", required=True)
@click.option("--c-range", required=True)
@click.option("--d-range", required=True)
@_tolerance_options
@_verify_format_option
def verify_theorem2(dist, weight, c_range, d_range, abs_tol, rel_tol,
                    max_subdiv, tail_mass, fmt, out, strict, server):
    """Weighted extropy of |Y1 - Y2| must grow with d and fall with c."""
    payload = {
        "dist": dist,
        "weight": weight,
        "c_grid": _parse_range(c_range, "--c-range"),
        "d_grid": _parse_range(d_range, "--d-range"),
        "config": _config_payload(abs_tol, rel_tol, max_subdiv, tail_mass),
    }
    data = _request(server, "POST", "/verify/theorem2", payload)
    _emit_report(data, fmt, out, strict)


@verify.command("lemma-a")
@click.option("--dist", required=True)
@click.option("--phi", default="v", show_default=True)
@click.option("--c-range", required=True)
@click.option("--d-range", required=True)
@_tolerance_options
@_verify_format_option
def verify_lemma_a(dist, phi, c_range, d_range, abs_tol, rel_tol, max_subdiv,
                   tail_mass, fmt, out, strict, server):
    """E[phi(V)|S] must grow with d and fall with c for nondecreasing phi."""
    payload = {
        "dist": dist,
        "phi": phi,
        "c_grid": _parse_range(c_range, "--c-range"),
        "d_grid": _parse_range(d_range, "--d-range"),
        "config": _config_payload(abs_tol, rel_tol, max_subdiv, tail_mass),
    }
    data = _request(server, "POST", "/verify/lemma-a", payload)
    _emit_report(data, fmt, out, strict)


@verify.command("lemma-b")
@click.option("--dist", required=True)
@click.option("--interval", required=True)
@click.option("--v-range", required=True)
@click.option("--convention", type=click.Choice(["normalized", "paper_literal"]),
              default="normalized", show_default=True)
@_tolerance_options
@_verify_format_option
def verify_lemma_b(dist, interval, v_range, convention, abs_tol, rel_tol,
                   max_subdiv, tail_mass, fmt, out, strict, server):
    """The difference density must be nonincreasing on [0, d-c]."""
    payload = {
        "dist": dist,
        "interval": _parse_interval(interval),
        "v_grid": _parse_range(v_range, "--v-range"),
        "convention": convention,
        "config": _config_payload(abs_tol, rel_tol, max_subdiv, tail_mass),
    }
    data = _request(server, "POST", "/verify/lemma-b", payload)
    _emit_report(data, fmt, out, strict)


@main.command("list")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--server", default=None)
def list_catalog(fmt, server):
    """Enumerate supported distributions, measures, weights and phis."""
    data = _request(server, "GET", "/catalog")
    if fmt == "json":
        click.echo(dumps_stable(data), nl=False)
        return
    click.echo("distributions:")
    for name, form in data["distributions"].items():
        click.echo(f"  {form}")
    click.echo("measures:")
    for name, needs in data["measures"].items():
        extras = [k for k, v in needs.items() if v]
        suffix = f" (needs {', '.join(extras)})" if extras else ""
        click.echo(f"  {name}{suffix}")
    click.echo("weights:")
    for name, form in data["weights"].items():
        click.echo(f"  {form}")
    click.echo("phis:")
    for name, form in data["phis"].items():
        click.echo(f"  {name} = {form}")
    click.echo("conventions:")
    for name in data["conventions"]:
        click.echo(f"  {name}")


@main.command()
@click.option("--pmf", required=True, help="comma-separated probabilities")
@click.option("--server", default=None)
def discrete(pmf, server):
    """Entropy and extropy of an explicit finite pmf."""
    data = _request(server, "POST", "/discrete", {"pmf": pmf})
    click.echo(f"entropy={data['entropy']!r}")
    click.echo(f"extropy={data['extropy']!r}")


if __name__ == "__main__":
    main()
