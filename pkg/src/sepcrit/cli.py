"""Command-line front end.

Subcommands: table1, so3-region, check, choi.  Map arguments take
'family key=value ...' strings, e.g. "reduction d=3" or
"theta a=2 c=1,1,1".  Exit codes for `check`: 0 no violation, 2 a
criterion was violated, 1 error.
"""

from __future__ import annotations

import math
import sys

import click

from . import maps, scan
from .criteria import Kind
from .errors import SepcritError
from .formats import format_float, read_density_matrix, write_matrix
from .linalg import DEFAULT_TOL


def _open_out(out):
    if out in (None, "-", "stdout"):
        return sys.stdout, False
    return open(out, "w"), True


def _parse_alpha(value: str) -> float:
    if value.lower() in ("inf", "infinity", "oo"):
        return math.inf
    return float(value)


def _build_criteria(map_specs, alpha, beta, kind, tol):
    kind_enum = Kind[kind] if kind else None
    criteria = []
    for spec in map_specs:
        if spec.split()[0] == "entropic":
            criteria.append(
                scan.RegionCriterion("entropic", None, alpha + beta, tol=tol)
            )
        else:
            dec = scan.parse_map_spec(spec)
            label = dec.name
            if any(c.label == label for c in criteria):
                label = f"{label}{sum(1 for c in criteria if c.label.startswith(dec.name)) + 1}"
            criteria.append(
                scan.RegionCriterion(label, dec, alpha, beta, kind_enum, tol)
            )
    return criteria


@click.group()
def main():
    """Scalar separability criteria from positive maps."""


@main.command("table1")
@click.option("--alpha", required=True, help="Exponent on the state; 'inf' "
              "routes to the limit witness.")
@click.option("--beta", type=float, default=1.0, show_default=True)
@click.option("--map", "map_spec", default="phi_dk d=3 k=1",
              show_default=True, help="Map spec string.")
@click.option("--kind", type=click.Choice(["I", "II", "III", "IV"]),
              default=None, help="Inequality kind (default: routed by beta).")
@click.option("--tol", "bisect_tol", type=float, default=1e-4,
              show_default=True, help="Bisection tolerance on gamma.")
@click.option("--out", default="-", show_default=True)
def table1_cmd(alpha, beta, map_spec, kind, bisect_tol, out):
    """Gamma range of the 3x3 test family where the inequality is violated."""
    a = _parse_alpha(alpha)
    kind_enum = Kind[kind] if kind else None
    interval = scan.table1(a, beta, map_spec, kind_enum, bisect_tol)
    fh, close = _open_out(out)
    try:
        fh.write(
            f"alpha={alpha} beta={format_float(beta, 9)} map={map_spec!r} "
            f"range={interval}\n"
        )
    finally:
        if close:
            fh.close()


@main.command("so3-region")
@click.option("--p", type=float, required=True)
@click.option("--alpha", required=True)
@click.option("--beta", type=float, default=1.0, show_default=True)
@click.option("--kind", type=click.Choice(["I", "II", "III", "IV"]),
              default=None)
@click.option("--map", "map_specs", multiple=True, required=True,
              help="Map spec (repeatable); 'entropic' adds the entropic "
              "inequality at power alpha+beta.")
@click.option("--resolution", type=int, default=100, show_default=True)
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@click.option("--out", default="-", show_default=True)
def so3_region_cmd(p, alpha, beta, kind, map_specs, resolution, tol, out):
    """CSV scan of the SO(3)-invariant family over the (q, r) simplex."""
    criteria = _build_criteria(map_specs, _parse_alpha(alpha), beta, kind, tol)
    labels = [c.label for c in criteria]
    fh, close = _open_out(out)
    try:
        fh.write(scan.region_csv_header(labels) + "\n")
        for row in scan.so3_region(p, criteria, resolution, tol):
            fh.write(scan.region_csv_row(row, labels) + "\n")
    finally:
        if close:
            fh.close()


@main.command("check")
@click.argument("state_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--map", "map_specs", multiple=True,
              help="Map spec (repeatable); 'entropic' adds the entropic "
              "inequality at power alpha+beta.")
@click.option("--alpha", default="1")
@click.option("--beta", type=float, default=1.0, show_default=True)
@click.option("--kind", type=click.Choice(["I", "II", "III", "IV"]),
              default=None)
@click.option("--ppt/--no-ppt", default=True, show_default=True)
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@click.option("--out", default="-", show_default=True)
@click.pass_context
def check_cmd(ctx, state_file, map_specs, alpha, beta, kind, ppt, tol, out):
    """Evaluate criteria on a state read from a matrix file."""
    rho = read_density_matrix(state_file)
    criteria = _build_criteria(map_specs, _parse_alpha(alpha), beta, kind, tol)
    rows = scan.check_state(rho, criteria, include_ppt=ppt, tol=tol)
    fh, close = _open_out(out)
    any_violated = False
    try:
        for label, res in rows:
            verdict = "VIOLATED" if res.violated else "ok"
            any_violated |= res.violated
            fh.write(
                f"{label}: lhs={format_float(res.lhs, 9)} "
                f"rhs={format_float(res.rhs, 9)} "
                f"margin={format_float(res.margin, 9)} {verdict}\n"
            )
    finally:
        if close:
            fh.close()
    ctx.exit(2 if any_violated else 0)


@main.command("choi")
@click.argument("map_spec")
@click.option("--part", type=click.Choice(["map", "1", "2"]), default="map",
              show_default=True, help="Full map or one CP half.")
@click.option("--samples", type=int, default=0, show_default=True,
              help="Also report sampled positivity over this many random "
              "pure states.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@click.option("--out", default="-", show_default=True)
def choi_cmd(map_spec, part, samples, seed, tol, out):
    """Print a catalog map's Choi matrix and its CP verdict."""
    choi, d, cp, min_eig = scan.choi_dump(map_spec, part)
    fh, close = _open_out(out)
    try:
        write_matrix(fh, choi, d, d)
        fh.write(
            f"CP: {'yes' if cp else 'no'} "
            f"(min eigenvalue = {format_float(min_eig, 9)})\n"
        )
        if samples > 0:
            dec = scan.parse_map_spec(map_spec)
            m = {"map": dec.map, "1": dec.lambda1, "2": dec.lambda2}[part]
            ok, _ = maps.is_positive_sampled(m, samples, seed, tol)
            fh.write(
                f"positive (sampled, n={samples}, seed={seed}): "
                f"{'yes' if ok else 'no'}\n"
            )
    finally:
        if close:
            fh.close()


def run():
    try:
        main(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except SepcritError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    run()
