"""Command-line interface.

Usage::

    knds horizons --lambda 0.12 --mass 1.2 --charge-sq 1.44
    knds temperature --lambda 0 --mass 1 --spin 0.6 --charge-sq 0.64
    knds stable --lambda 0.03 --spin 1 --branch outer
    knds cosmos-mass --lambda-si 1e-52
    knds geodesic --r1 1 --samples 200 --output csv
    knds regions --lambda 0.12 --mass 1.2 --charge-sq 1.44 --radius 0.5 --radius 2.5
    knds scan --lambda-range 0.01:0.3:5 --spin-range 0:2:5 --charge-sq-range 0:4:5 --workers 8

Exit codes: 0 success, 2 domain or input error, 3 no solution, 4 numerical failure.
"""

from __future__ import annotations

import functools
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import click
import numpy as np

from . import geodesics, horizons, stability, thermo
from .core import SourceParams, horizon_polynomial, horizon_polynomial_deriv, horizon_polynomial_deriv2, to_geometric
from .errors import DomainError, KNdSError, NoStableSolution, NumericalFailure
from .output import build_meta, dump_csv, dump_json

EXIT_DOMAIN = 2
EXIT_NO_SOLUTION = 3
EXIT_NUMERICAL = 4


def _fail(code, kind, message):
    click.echo(f"error: {kind}: {message}", err=True)
    sys.exit(code)


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except NoStableSolution as exc:
            _fail(EXIT_NO_SOLUTION, "no-solution", exc)
        except NumericalFailure as exc:
            _fail(EXIT_NUMERICAL, "numerical", exc)
        except (DomainError, KNdSError) as exc:
            _fail(EXIT_DOMAIN, "domain", exc)
        except ValueError as exc:
            _fail(EXIT_DOMAIN, "input", exc)
    return wrapper


def output_options(fn):
    fn = click.option("--no-header", is_flag=True, help="Omit the metadata header.")(fn)
    fn = click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
                      help="Write to PATH instead of standard output.")(fn)
    fn = click.option("--output", "fmt", type=click.Choice(["json", "csv"]), default="json",
                      show_default=True)(fn)
    return fn


def param_options(fn):
    fn = click.option("--tol", type=float, default=horizons.DEFAULT_TOL, show_default=True,
                      help="Relative coincidence tolerance.")(fn)
    fn = click.option("--q-si", type=float, default=None, help="Charge [C] (with --units si).")(fn)
    fn = click.option("--j-si", type=float, default=None,
                      help="Angular momentum [kg m^2/s] (with --units si).")(fn)
    fn = click.option("--mass-si", type=float, default=None, help="Mass [kg] (with --units si).")(fn)
    fn = click.option("--lambda-si", type=float, default=None, help="Lambda [m^-2] (with --units si).")(fn)
    fn = click.option("--units", type=click.Choice(["geometric", "si"]), default="geometric",
                      show_default=True)(fn)
    fn = click.option("--charge-sq", type=float, default=None, help="Q^2 [length^2].")(fn)
    fn = click.option("--spin", type=float, default=0.0, show_default=True, help="a = J/(Mc) [length].")(fn)
    fn = click.option("--mass", type=float, default=None, help="m = GM/c^2 [length].")(fn)
    fn = click.option("--lambda", "lam", type=float, default=None, help="Lambda [length^-2].")(fn)
    return fn


def _inputs(opts):
    return {k: v for k, v in sorted(opts.items()) if v is not None and k not in ("fmt", "out_path", "no_header")}


def _params(opts, need_mass=True) -> SourceParams:
    if opts["units"] == "si":
        vals = [opts["lambda_si"], opts["mass_si"], opts["j_si"], opts["q_si"]]
        if any(v is None for v in vals):
            raise DomainError("--units si needs --lambda-si, --mass-si, --j-si and --q-si")
        return to_geometric(opts["mass_si"], opts["j_si"], opts["q_si"], opts["lambda_si"])
    if opts["lam"] is None:
        raise DomainError("--lambda is required")
    if need_mass and opts["mass"] is None:
        raise DomainError("--mass is required")
    return SourceParams(lam=opts["lam"], m=opts["mass"] or 0.0, a=opts["spin"],
                        q_sq=opts["charge_sq"] or 0.0)


def _emit(command, rows, columns, opts, run=None):
    meta = None if opts["no_header"] else build_meta(command, _inputs(opts), run)
    if opts["fmt"] == "json":
        text = dump_json(rows, meta)
    else:
        text = dump_csv(rows, columns, meta)
    if opts["out_path"]:
        with open(opts["out_path"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(package_name="knds")
def main():
    """Kerr-Newman-de Sitter horizons, temperatures and stable configurations."""


HORIZON_COLUMNS = ["radius", "multiplicity", "role", "coincident", "coincidence", "status",
                   "complex_pair", "vieta_sum", "vieta_pair_sum", "vieta_product"]


@main.command("horizons")
@param_options
@output_options
@_guard
def cmd_horizons(**opts):
    """Roots of B(r) = 0 with multiplicities and roles."""
    params = _params(opts)
    h = horizons.solve_horizons_auto(params, opts["tol"])
    kind = horizons.detect_coincidence(h).value
    vieta = h.vieta_residuals() if h.all_real else {}
    rows = []
    for r, k, role in zip(h.roots, h.multiplicities, h.roles):
        rows.append({
            "radius": r,
            "multiplicity": k,
            "role": role,
            "coincident": k > 1,
            "coincidence": kind,
            "status": "ok",
            "complex_pair": h.complex_pair_present,
            "vieta_sum": vieta.get("sum"),
            "vieta_pair_sum": vieta.get("pair_sum"),
            "vieta_product": vieta.get("product"),
        })
    if not rows:
        rows.append({"status": "naked" if h.naked else "no-horizon", "coincidence": kind,
                     "complex_pair": h.complex_pair_present})
    _emit("horizons", rows, HORIZON_COLUMNS, opts)


TEMPERATURE_COLUMNS = ["radius", "multiplicity", "role", "surface_gravity",
                       "temperature_over_epsilon", "temperature_product_form", "omega", "exact_zero"]


@main.command("temperature")
@param_options
@output_options
@_guard
def cmd_temperature(**opts):
    """Surface gravity, T/epsilon and angular velocity at each horizon."""
    params = _params(opts)
    h = horizons.solve_horizons_auto(params, opts["tol"])
    report = thermo.temperature_report(params, opts["tol"], h=h)
    product = {}
    if params.lam != 0.0 and h.all_real:
        for n, r in enumerate(h.horizon_radii, start=1):
            product.setdefault(r, thermo.temperature_product_form(params, h, n))
    rows = [{
        "radius": e.radius,
        "multiplicity": e.multiplicity,
        "role": e.role,
        "surface_gravity": e.surface_gravity,
        "temperature_over_epsilon": e.temperature_over_epsilon,
        "temperature_product_form": product.get(e.radius),
        "omega": e.omega,
        "exact_zero": e.exact_zero,
    } for e in report.entries]
    _emit("temperature", rows, TEMPERATURE_COLUMNS, opts)


REGION_COLUMNS = ["radius", "region", "character", "b_of_r"]


@main.command("regions")
@param_options
@click.option("--radius", "radii", type=float, multiple=True, required=True,
              help="Radius to classify (repeatable).")
@output_options
@_guard
def cmd_regions(radii, **opts):
    """Region I-IV and causal character at each --radius."""
    params = _params(opts)
    h = horizons.solve_horizons_auto(params, opts["tol"])
    rows = []
    for r in radii:
        label = horizons.classify_region(params, r, h=h, tol=opts["tol"])
        rows.append({"radius": r, "region": label.region, "character": label.character,
                     "b_of_r": horizon_polynomial(params, r)})
    opts["radius"] = list(radii)
    _emit("regions", rows, REGION_COLUMNS, opts)


STABLE_COLUMNS = ["kind", "branch", "coincidence", "character", "lambda", "spin", "charge_sq",
                  "mass", "radius", "residual_b", "residual_db", "residual_d2b",
                  "oracle_mass", "oracle_radius", "oracle_rel_diff",
                  "relation", "lhs", "rhs", "residual", "approximate"]


def _solution_row(sol, branch):
    p = sol.params
    r = sol.r_degenerate
    return {
        "kind": "solution",
        "branch": branch,
        "coincidence": sol.coincidence.value,
        "character": sol.character.value,
        "lambda": p.lam,
        "spin": p.a,
        "charge_sq": p.q_sq,
        "mass": p.m,
        "radius": r,
        "residual_b": horizon_polynomial(p, r),
        "residual_db": horizon_polynomial_deriv(p, r),
        "residual_d2b": horizon_polynomial_deriv2(p, r),
    }


def _stable_solution(lam, spin, charge_sq, branch):
    if branch == "triple":
        if charge_sq is None:
            return stability.triple_coincidence(spin, lam=lam)
        if lam is None:
            return stability.triple_coincidence(spin, q_sq=charge_sq)
        sol = stability.stable_mass_closed_form(lam, spin, charge_sq, "outer")
        if sol.coincidence is not horizons.Coincidence.TRIPLE:
            raise NoStableSolution(
                f"sigma = {sol.params.sigma!r} != 0: these inputs have no triple coincidence"
            )
        return sol
    if lam is None:
        raise DomainError("--lambda is required")
    if lam == 0.0:
        if branch != "inner":
            raise NoStableSolution("lam = 0 has no cosmological horizon; only the inner (extremal) branch exists")
        return stability.kn_extremal(spin, charge_sq or 0.0)
    return stability.stable_mass_closed_form(lam, spin, charge_sq or 0.0, branch)


@main.command("stable")
@param_options
@click.option("--branch", type=click.Choice(["inner", "outer", "triple"]), required=True)
@output_options
@_guard
def cmd_stable(branch, **opts):
    """Zero-temperature configuration with closed-form/oracle cross-check and Regge relations."""
    if opts["units"] == "si":
        params = _params(opts, need_mass=False)
        lam, spin, charge_sq = params.lam, params.a, params.q_sq
    else:
        lam, spin, charge_sq = opts["lam"], abs(opts["spin"]), opts["charge_sq"]
    sol = _stable_solution(lam, spin, charge_sq, branch)
    row = _solution_row(sol, branch)
    if sol.coincidence in (horizons.Coincidence.INNER, horizons.Coincidence.OUTER):
        p = sol.params
        orc = stability.stable_solution_oracle(p.lam, p.a, p.q_sq, branch)
        row["oracle_mass"] = orc.m
        row["oracle_radius"] = orc.r_degenerate
        row["oracle_rel_diff"] = max(abs(orc.m - p.m) / p.m,
                                     abs(orc.r_degenerate - sol.r_degenerate) / sol.r_degenerate)
    rows = [row]
    for chk in stability.check_regge_relations(sol):
        rows.append({"kind": "regge", "relation": chk.relation, "lhs": chk.lhs, "rhs": chk.rhs,
                     "residual": chk.residual, "approximate": chk.approximate})
    opts["branch"] = branch
    _emit("stable", rows, STABLE_COLUMNS, opts)


COSMOS_COLUMNS = ["lambda_si", "mass_kg", "m_geometric_m", "nine_lambda_m2"]


@main.command("cosmos-mass")
@click.option("--lambda-si", type=float, required=True, help="Lambda [m^-2].")
@output_options
@_guard
def cmd_cosmos_mass(**opts):
    """Mass of the Schwarzschild-de Sitter hole with merged horizons, for a given Lambda."""
    lam_si = opts["lambda_si"]
    M = stability.cosmos_mass(lam_si)
    m = to_geometric(M, 0.0, 0.0, lam_si).m
    rows = [{"lambda_si": lam_si, "mass_kg": M, "m_geometric_m": m,
             "nine_lambda_m2": 9.0 * lam_si * m * m}]
    _emit("cosmos-mass", rows, COSMOS_COLUMNS, opts)


GEODESIC_COLUMNS = ["region", "direction", "r", "t", "t_numerical", "provenance"]


@main.command("geodesic")
@param_options
@click.option("--r1", type=float, default=None, help="Shortcut: roots {-6, 1, 2, 3} * r1.")
@click.option("--samples", type=click.IntRange(min=2), default=200, show_default=True)
@click.option("--with-numerical", is_flag=True, help="Add a numerically integrated t column.")
@output_options
@_guard
def cmd_geodesic(r1, samples, with_numerical, **opts):
    """Radial null geodesic samples t(r), per region and direction."""
    params = geodesics.figure2_params(r1) if r1 is not None else _params(opts)
    curves = geodesics.sample_curves(params, samples=samples, tol=opts["tol"],
                                     with_numerical=with_numerical)
    rows = []
    for c in curves:
        for pt in c.samples:
            row = {"region": c.region.region, "direction": c.direction, "r": pt[0], "t": pt[1],
                   "provenance": c.provenance}
            if len(pt) == 3:
                row["t_numerical"] = pt[2]
            rows.append(row)
    opts.update(r1=r1, samples=samples, with_numerical=with_numerical or None)
    _emit("geodesic", rows, GEODESIC_COLUMNS, opts)


SCAN_COLUMNS = ["index", "lambda", "spin", "charge_sq", "sigma", "branch", "status", "mass", "radius"]


def _parse_range(text, name):
    parts = text.split(":")
    try:
        if len(parts) == 1:
            start = stop = float(parts[0])
            n = 1
        elif len(parts) == 3:
            start, stop, n = float(parts[0]), float(parts[1]), int(parts[2])
        else:
            raise ValueError
    except ValueError:
        raise DomainError(f"malformed {name} {text!r}; expected START:STOP:N or VALUE") from None
    if n < 1 or not (math.isfinite(start) and math.isfinite(stop)):
        raise DomainError(f"malformed {name} {text!r}")
    return [float(x) for x in np.linspace(start, stop, n)]


def _scan_point(point):
    index, lam, spin, charge_sq = point
    rows = []
    sigma = SourceParams(lam=lam, m=0.0, a=spin, q_sq=charge_sq).sigma
    for branch in ("inner", "outer"):
        row = {"index": index, "lambda": lam, "spin": spin, "charge_sq": charge_sq,
               "sigma": sigma, "branch": branch}
        try:
            sol = _stable_solution(lam, spin, charge_sq, branch)
        except (NoStableSolution, DomainError):
            row["status"] = "none"
        else:
            row.update(status="ok", mass=sol.m, radius=sol.r_degenerate)
        rows.append(row)
    return rows


@main.command("scan")
@click.option("--lambda-range", required=True, help="START:STOP:N (inclusive linspace) or VALUE.")
@click.option("--spin-range", default="0", show_default=True)
@click.option("--charge-sq-range", default="0", show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@output_options
@_guard
def cmd_scan(lambda_range, spin_range, charge_sq_range, workers, **opts):
    """Stable masses for both branches over a (Lambda, a, Q^2) grid."""
    lams = _parse_range(lambda_range, "--lambda-range")
    spins = _parse_range(spin_range, "--spin-range")
    charges = _parse_range(charge_sq_range, "--charge-sq-range")
    points = []
    for lam in lams:
        for spin in spins:
            for q in charges:
                points.append((len(points), lam, abs(spin), q))
    if workers == 1:
        chunks = [_scan_point(p) for p in points]
    else:
        chunksize = max(1, len(points) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_scan_point, points, chunksize=chunksize))
    rows = [row for chunk in chunks for row in chunk]
    opts.update(lambda_range=lambda_range, spin_range=spin_range, charge_sq_range=charge_sq_range)
    _emit("scan", rows, SCAN_COLUMNS, opts, run={"workers": workers})


if __name__ == "__main__":
    main()
