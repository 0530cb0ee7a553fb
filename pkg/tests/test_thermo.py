import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knds.core import SourceParams, horizon_polynomial_deriv
from knds.errors import DomainError, LambdaZeroError, UnsupportedConfigurationError
from knds.horizons import solve_horizons
from knds.stability import stable_mass_closed_form
from knds.thermo import (
    horizon_angular_velocity,
    surface_gravity,
    temperature_derivative_form,
    temperature_kn,
    temperature_product_form,
    temperature_report,
    temperature_sds,
)

from conftest import random_four_real_root_params

FOUR_REGION = SourceParams(lam=0.12, m=1.2, a=0.0, q_sq=1.44)


def test_four_region_inner_temperature():
    h = solve_horizons(FOUR_REGION)
    assert temperature_product_form(FOUR_REGION, h, 1) == pytest.approx(0.28, rel=1e-12)
    assert temperature_derivative_form(FOUR_REGION, h, 1) == pytest.approx(0.28, rel=1e-12)
    # independent: B'(1) by hand = -4(0.12)/3 + 2 - 2.4 = -0.56
    assert abs(horizon_polynomial_deriv(FOUR_REGION, 1.0)) / 2.0 == pytest.approx(0.28, rel=1e-12)


def test_degenerate_temperatures_are_exact_zero():
    sds = SourceParams(lam=1 / 9, m=1.0)
    h = solve_horizons(sds)
    assert temperature_product_form(sds, h, 1) == 0.0
    triple = SourceParams(lam=0.25, m=2 * math.sqrt(2) / 3, q_sq=1.0)
    h = solve_horizons(triple)
    assert temperature_product_form(triple, h, 1) == 0.0
    report = temperature_report(triple)
    assert all(e.exact_zero for e in report.entries)


def test_product_form_errors():
    with pytest.raises(LambdaZeroError):
        p = SourceParams(lam=0.0, m=1.0)
        temperature_product_form(p, None, 1)
    p = SourceParams(lam=0.03, m=1.9834867, a=1.0)
    with pytest.raises(UnsupportedConfigurationError):
        temperature_product_form(p, solve_horizons(p), 1)


@pytest.mark.parametrize(
    "a, q_sq, expected",
    [(0.0, 0.0, 0.25), (0.6, 0.64, 0.0), (0.0, 0.75, 2 / 9)],
)
def test_kn_examples(a, q_sq, expected):
    assert temperature_kn(SourceParams(lam=0.0, m=1.0, a=a, q_sq=q_sq)) == pytest.approx(
        expected, abs=1e-15
    )


def test_kn_minus_and_naked():
    p = SourceParams(lam=0.0, m=1.0, q_sq=0.75)
    # (r+ - r-)/(2 r-^2) = 1/(2 * 0.25)
    assert temperature_kn(p, "minus") == pytest.approx(2.0, rel=1e-14)
    with pytest.raises(DomainError):
        temperature_kn(SourceParams(lam=0.0, m=1.0, a=0.9, q_sq=0.5))


def test_kn_extremal_exact_zero():
    rng = np.random.default_rng(3)
    for _ in range(200):
        a, q = rng.uniform(0, 2, 2)
        m = math.sqrt(a * a + q * q)
        assert temperature_kn(SourceParams(lam=0.0, m=m, a=a, q_sq=q * q)) == 0.0


def test_sds_examples():
    p = SourceParams(lam=1 / 9, m=1.0)
    assert temperature_sds(p, "B") == 0.0
    assert temperature_sds(p, "C") == 0.0
    assert temperature_sds(SourceParams(lam=1e-10, m=1.0), "B") == pytest.approx(0.25, abs=1e-5)
    with pytest.raises(DomainError):
        temperature_sds(SourceParams(lam=0.2, m=1.0))
    with pytest.raises(DomainError):
        temperature_sds(SourceParams(lam=0.1, m=1.0, a=0.1))


def test_sds_cross_check():
    lam = 0.1
    p = SourceParams(lam=lam, m=1.0)
    # independent roots of the SdS cubic -lam r^3/3 + r - 2m
    cubic = np.sort(np.roots([-lam / 3, 0.0, 1.0, -2.0]).real)
    r_b, r_c = cubic[1], cubic[2]
    h = solve_horizons(p)
    for which, n, r in (("B", 1, r_b), ("C", 2, r_c)):
        t = temperature_sds(p, which)
        assert t == pytest.approx(temperature_product_form(p, h, n), rel=1e-10)
        # |f'(r)|/2 with f = 1 - 2m/r - lam r^2/3
        assert t == pytest.approx(abs(1.0 / (r * r) - lam * r / 3.0), rel=1e-9)


def test_product_equals_derivative_form():
    sets = random_four_real_root_params(np.random.default_rng(11), 2000)
    for p in sets:
        h = solve_horizons(p)
        for n in (1, 2, 3):
            t8 = temperature_product_form(p, h, n)
            td = surface_gravity(p, h.horizon_radii[n - 1])
            assert t8 == pytest.approx(td, rel=1e-10)
            assert t8 >= 0.0


def _merge_ratios(path, eps_values):
    out = []
    for eps in eps_values:
        p, pair = path(eps)
        h = solve_horizons(p)
        radii = h.horizon_radii
        i, j = pair
        gap = radii[j] - radii[i]
        t = max(temperature_derivative_form(p, h, i + 1), temperature_derivative_form(p, h, j + 1))
        out.append(t / gap)
    return out


def _sds_path(eps):
    return SourceParams(lam=1 / 9, m=1.0 - eps), (0, 1)


def _kerr_outer_path(eps):
    sol = stable_mass_closed_form(0.03, 1.0, 0.0, "outer")
    return sol.params.replace(m=sol.params.m * (1 - eps)), (1, 2)


def _charged_inner_path(eps):
    sol = stable_mass_closed_form(0.05, 0.3, 0.4, "inner")
    return sol.params.replace(m=sol.params.m * (1 + eps)), (0, 1)


@pytest.mark.parametrize("path", [_sds_path, _kerr_outer_path, _charged_inner_path])
def test_linear_vanishing(path):
    ratios = _merge_ratios(path, [1e-2, 1e-3, 1e-4, 1e-5])
    # T / gap tends to a finite nonzero constant
    k_fit = ratios[-1]
    assert k_fit > 0
    for r in ratios[1:]:
        assert r == pytest.approx(k_fit, rel=0.1)


def test_lambda_zero_consistency():
    p = SourceParams(lam=1e-8, m=1.0, a=0.3, q_sq=0.2)
    h = solve_horizons(p)
    kn = p.replace(lam=0.0)
    assert temperature_product_form(p, h, 1) == pytest.approx(temperature_kn(kn, "minus"), abs=1e-5)
    assert temperature_product_form(p, h, 2) == pytest.approx(temperature_kn(kn, "plus"), abs=1e-5)


def test_angular_velocity():
    h = solve_horizons(FOUR_REGION)
    assert all(horizon_angular_velocity(FOUR_REGION, h, n) == 0.0 for n in (1, 2, 3))
    p = SourceParams(lam=0.01, m=1.0, a=0.5)
    h = solve_horizons(p)
    omegas = [horizon_angular_velocity(p, h, n) for n in (1, 2, 3)]
    assert omegas[0] >= omegas[1] >= omegas[2]
    r = h.horizon_radii[0]
    assert omegas[0] == pytest.approx(0.5 / (r * r + 0.25), rel=1e-15)


def test_angular_velocity_value():
    # a/(r^2 + a^2) at r = 3, a = 1
    from knds.horizons import HorizonSet

    p = SourceParams(lam=0.01, m=1.0, a=1.0)
    h = HorizonSet(params=p, roots=(3.0,), multiplicities=(1,), roles=("outer_bh",),
                   complex_pair_present=False, naked=False, tol=1e-9, raw_roots=(), anomalies=())
    assert horizon_angular_velocity(p, h, 1) == pytest.approx(0.1, rel=1e-15)


@settings(max_examples=200, deadline=None)
@given(
    lam=st.floats(1e-4, 1.0),
    m=st.floats(0.01, 10.0),
    a=st.floats(0.0, 5.0),
    q_sq=st.floats(0.0, 10.0),
)
def test_report_nonnegative(lam, m, a, q_sq):
    p = SourceParams(lam=lam, m=m, a=a, q_sq=q_sq)
    try:
        report = temperature_report(p)
    except DomainError:
        return
    for e in report.entries:
        assert e.temperature_over_epsilon >= 0.0
        assert e.temperature_over_epsilon == e.surface_gravity
