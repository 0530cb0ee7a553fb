"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line; the lines are printed in the
terminal summary and by ``python3 tests/test_acceptance.py``.
"""

import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

from knds.cli import main
from knds.core import (
    SourceParams,
    horizon_polynomial,
    horizon_polynomial_deriv,
    horizon_polynomial_deriv2,
)
from knds.geodesics import INGOING, OUTGOING, figure2_params, geodesic_coefficients, geodesic_integrate_numerical, geodesic_time
from knds.horizons import Coincidence, classify_region, detect_coincidence, solve_horizons, solve_horizons_kn
from knds.stability import (
    check_regge_relations,
    cosmos_mass,
    link_residuals,
    stable_mass_closed_form,
    stable_solution_oracle,
    triple_coincidence,
)
from knds.thermo import surface_gravity, temperature_kn, temperature_product_form

from conftest import random_four_real_root_params

RESULTS = []


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _rel(x, y):
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


def _scale(p, r):
    s = max(1.0, abs(r))
    return max(p.lam / 3 * s**4, abs(p.delta) * s * s, 2 * p.m * s, p.eta)


def test_criterion_01_four_region_roots():
    h = solve_horizons(SourceParams(lam=0.12, m=1.2, a=0.0, q_sq=1.44))
    roots = h.expanded_roots
    err = max(abs(r - e) for r, e in zip(roots, (-6.0, 1.0, 2.0, 3.0)))
    r0, r1, r2, r3 = roots
    ratios = max(abs(r2 - 2 * r1), abs(r3 - 3 * r1), abs(r0 + r1 + r2 + r3))
    record(1, "four-region roots", err <= 1e-12 and ratios <= 1e-12,
           f"max root error {err:.2e}, ratio error {ratios:.2e} (tol 1e-12)")


def test_criterion_02_sds_stability():
    sol = stable_mass_closed_form(1 / 9, 0.0, 0.0, "outer")
    orc = stable_solution_oracle(1 / 9, 0.0, 0.0, "outer")
    p, r = sol.params, sol.r_degenerate
    res = max(abs(sol.m - 1.0), abs(r - 3.0), abs(horizon_polynomial(p, r)),
              abs(horizon_polynomial_deriv(p, r)), abs(orc.m - 1.0), abs(orc.r_degenerate - 3.0))
    worst = 0.0
    for lam in np.geomspace(1e-4, 1.0, 20):
        s = stable_mass_closed_form(float(lam), 0.0, 0.0, "outer")
        worst = max(worst, abs(9 * lam * s.m**2 - 1.0))
    record(2, "SdS stable mass", res <= 1e-10 and worst <= 1e-12,
           f"m=1, r=3 residual {res:.2e} (tol 1e-10); max |9 lam m^2 - 1| over 20 lam {worst:.2e} (tol 1e-12)")


def test_criterion_03_cosmos_mass():
    mass = cosmos_mass(1e-52)
    record(3, "cosmos mass", 4.3e52 <= mass <= 4.7e52, f"M = {mass:.4e} kg (window [4.3e52, 4.7e52])")


def test_criterion_04_kn_extremality():
    rng = np.random.default_rng(404)
    worst_r = 0.0
    nonzero = 0
    flagged = 0
    for _ in range(1000):
        a, q = rng.uniform(0.0, 3.0, 2)
        m = math.sqrt(a * a + q * q)
        p = SourceParams(lam=0.0, m=m, a=a, q_sq=q * q)
        h = solve_horizons_kn(p)
        if detect_coincidence(h) is Coincidence.LAMBDA0_EXTREMAL:
            flagged += 1
        radii = h.expanded_roots
        worst_r = max([worst_r] + [abs(r - m) for r in radii])
        if len(radii) != 2:
            worst_r = math.inf
        if temperature_kn(p, "plus") != 0.0 or temperature_kn(p, "minus") != 0.0:
            nonzero += 1
    ok = nonzero == 0 and flagged == 1000 and worst_r <= 1e-12
    record(4, "Kerr-Newman extremality", ok,
           f"{flagged}/1000 flagged, {nonzero} nonzero temperatures, max |r -+ m| {worst_r:.2e} (tol 1e-12)")


def test_criterion_05_temperature_identity():
    sets = random_four_real_root_params(np.random.default_rng(505), 10_000)
    worst = 0.0
    for p in sets:
        h = solve_horizons(p)
        for n in (1, 2, 3):
            worst = max(worst, _rel(temperature_product_form(p, h, n),
                                    surface_gravity(p, h.horizon_radii[n - 1])))
    record(5, "temperature identity", worst <= 1e-10,
           f"max relative difference {worst:.2e} over 10^4 sets x 3 horizons (tol 1e-10)")


def test_criterion_06_stability_oracle():
    worst_orc = worst_link = 0.0
    count = 0
    for lam in np.geomspace(1e-3, 0.3, 10):
        for a in np.linspace(0.0, 2.0, 10):
            for q_sq in np.linspace(0.0, 4.0, 10):
                lam, a, q_sq = float(lam), float(a), float(q_sq)
                if SourceParams(lam=lam, m=0.0, a=a, q_sq=q_sq).sigma <= 0.0:
                    continue
                # a = Q = 0 has only the outer (Schwarzschild-de Sitter) branch
                branches = ("outer",) if a == 0.0 and q_sq == 0.0 else ("inner", "outer")
                for branch in branches:
                    c = stable_mass_closed_form(lam, a, q_sq, branch)
                    o = stable_solution_oracle(lam, a, q_sq, branch)
                    worst_orc = max(worst_orc, _rel(c.m, o.m), _rel(c.r_degenerate, o.r_degenerate))
                    res = link_residuals(c)
                    worst_link = max(worst_link, res["link"], res["branch"])
                    count += 1
    ok = worst_orc <= 1e-8 and worst_link <= 1e-9
    record(6, "stable closed form vs oracle", ok,
           f"{count} solutions; max oracle rel diff {worst_orc:.2e} (tol 1e-8), "
           f"max link/branch residual {worst_link:.2e} (tol 1e-9)")


def test_criterion_07_triple():
    rng = np.random.default_rng(707)
    worst_b = worst_eq = 0.0
    found = 0
    while found < 100:
        a, lam = rng.uniform(0.0, 2.0), rng.uniform(1e-3, 0.3)
        delta = 1 - lam * a * a / 3
        if delta <= 0 or delta * delta / (4 * lam) < a * a:
            continue
        sol = triple_coincidence(float(a), lam=float(lam))
        p, r = sol.params, sol.r_degenerate
        s = _scale(p, r)
        assert r == 3 * p.m / (2 * p.delta)
        worst_b = max(worst_b, abs(horizon_polynomial(p, r)) / s,
                      abs(horizon_polynomial_deriv(p, r)) * max(1.0, r) / s,
                      abs(horizon_polynomial_deriv2(p, r)) * max(1.0, r) ** 2 / s)
        checks = {c.relation: c for c in check_regge_relations(sol)}
        worst_eq = max(worst_eq, _rel(checks["Eq18"].rhs, checks["Eq19"].rhs))
        found += 1
    record(7, "triple coincidence", worst_b <= 1e-10 and worst_eq <= 1e-12,
           f"max scaled |B|,|B'|,|B''| {worst_b:.2e} (tol 1e-10); Eq18 vs Eq19 {worst_eq:.2e} (tol 1e-12)")


def test_criterion_08_approximation_scaling():
    ratios = []
    for a in (0.5, 1.0, 2.0):
        res = {"Eq20": [], "Eq21": []}
        for x in (1e-2, 1e-3, 1e-4):
            sol = triple_coincidence(a, lam=x / (a * a))
            for c in check_regge_relations(sol):
                if c.relation in res:
                    res[c.relation].append(c.residual)
        for vals in res.values():
            ratios += [vals[0] / vals[1], vals[1] / vals[2]]
    ok = all(5 <= q <= 20 for q in ratios)
    record(8, "approximation scaling", ok,
           f"successive residual ratios in [{min(ratios):.3f}, {max(ratios):.3f}] (window [5, 20])")


def test_criterion_09_geodesic_oracle():
    params = figure2_params(1.0)
    coeffs = geodesic_coefficients(solve_horizons(params))
    rng = np.random.default_rng(909)
    margin = 1e-3 * 3.0
    worst = 0.0
    for lo, hi in ((0.0, 1.0), (1.0, 2.0), (2.0, 3.0), (3.0, 6.0)):
        for k in range(100):
            a, b = (float(x) for x in np.sort(rng.uniform(lo + margin, hi - margin, 2)))
            direction = OUTGOING if k % 2 else INGOING
            (_, t0), (_, t1) = geodesic_integrate_numerical(params, direction, a, b)
            closed = geodesic_time(coeffs, direction, b) - geodesic_time(coeffs, direction, a)
            worst = max(worst, abs((t1 - t0) - closed))
    residue = abs(coeffs.residue_sum())
    record(9, "geodesic oracle", worst <= 1e-6 and residue <= 1e-12,
           f"max |dt closed - dt numerical| {worst:.2e} over 400 intervals (tol 1e-6); "
           f"residue sum {residue:.2e} (tol 1e-12)")


def test_criterion_10_regions():
    params = SourceParams(lam=0.12, m=1.2, a=0.0, q_sq=1.44)
    expected = [(0.5, "I", 0.4875), (1.5, "II", -0.1125), (2.5, "III", 0.1275), (4.0, "IV", -2.4)]
    ok = True
    details = []
    for r, region, b in expected:
        label = classify_region(params, r)
        value = horizon_polynomial(params, r)
        ok &= label.region == region and label.timelike == (b > 0) and abs(value - b) <= 1e-12
        details.append(f"{r}->{label.region}/{label.character}")
    record(10, "region classification", ok, ", ".join(details))


def test_criterion_11_cli_determinism():
    runner = CliRunner()
    base = ["scan", "--lambda-range", "0.001:0.3:5", "--spin-range", "0:2:5",
            "--charge-sq-range", "0:4:5", "--no-header"]
    one = runner.invoke(main, [*base, "--workers", "1"])
    eight = runner.invoke(main, [*base, "--workers", "8"])
    rows = len(json.loads(one.stdout)["rows"]) if one.exit_code == 0 else 0
    ok = one.exit_code == eight.exit_code == 0 and one.stdout == eight.stdout and rows == 250
    record(11, "CLI determinism", ok,
           f"{rows} rows; workers 1 vs 8 byte-identical: {one.stdout == eight.stdout}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
