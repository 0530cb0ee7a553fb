import math

import numpy as np
import pytest

from knds.core import SourceParams, horizon_polynomial
from knds.errors import DegenerateStructureError, DomainError, LambdaZeroError, OnHorizonError
from knds.horizons import (
    Coincidence,
    classify_region,
    detect_coincidence,
    solve_horizons,
    solve_horizons_kn,
)

from conftest import random_four_real_root_params

FOUR_REGION = SourceParams(lam=0.12, m=1.2, a=0.0, q_sq=1.44)
SDS_STABLE = SourceParams(lam=1 / 9, m=1.0)
TRIPLE = SourceParams(lam=0.25, m=2 * math.sqrt(2) / 3, a=0.0, q_sq=1.0)


def test_four_region_roots(backend):
    h = solve_horizons(FOUR_REGION)
    assert h.expanded_roots == pytest.approx([-6.0, 1.0, 2.0, 3.0], abs=1e-12)
    assert h.multiplicities == (1, 1, 1, 1)
    assert h.roles == ("negative", "inner_bh", "outer_bh", "cosmological")
    assert h.r0 == pytest.approx(-6.0, abs=1e-12)
    # root ratios of the four-region picture
    r1, r2, r3 = h.horizon_radii
    assert r2 / r1 == pytest.approx(2.0, rel=1e-12)
    assert r3 / r1 == pytest.approx(3.0, rel=1e-12)
    assert h.r0 == pytest.approx(-(r1 + r2 + r3), rel=1e-12)


def test_sds_double_root(backend):
    h = solve_horizons(SDS_STABLE)
    assert h.positive_roots == pytest.approx([0.0, 3.0, 3.0], abs=1e-12)
    assert h.roles[1] == "boundary"
    assert h.multiplicity_of(h.horizon_radii[0]) == 2
    assert detect_coincidence(h) is Coincidence.OUTER


def test_triple_root(backend):
    h = solve_horizons(TRIPLE)
    assert h.horizon_radii == pytest.approx([math.sqrt(2)] * 3, abs=1e-12)
    assert h.r0 == pytest.approx(-3 * math.sqrt(2), abs=1e-9)
    assert sum(h.expanded_roots) == pytest.approx(0.0, abs=1e-9)
    assert detect_coincidence(h) is Coincidence.TRIPLE
    r = math.sqrt(2)
    assert abs(horizon_polynomial(TRIPLE, r)) < 1e-14


def test_lambda_zero_rejected():
    with pytest.raises(LambdaZeroError):
        solve_horizons(SourceParams(lam=0.0, m=1.0))


@pytest.mark.parametrize(
    "a, q_sq, expected",
    [(0.6, 0.64, [1.0, 1.0]), (0.0, 0.0, [0.0, 2.0])],
)
def test_kn_roots(a, q_sq, expected):
    h = solve_horizons_kn(SourceParams(lam=0.0, m=1.0, a=a, q_sq=q_sq))
    assert h.positive_roots == pytest.approx(expected, abs=1e-15)
    assert not h.naked


def test_kn_naked():
    h = solve_horizons_kn(SourceParams(lam=0.0, m=1.0, a=0.8, q_sq=0.8))
    assert h.naked and h.roots == ()


def test_kn_extremal_flag():
    h = solve_horizons_kn(SourceParams(lam=0.0, m=1.0, a=0.6, q_sq=0.64))
    assert detect_coincidence(h) is Coincidence.LAMBDA0_EXTREMAL


def test_detect_none():
    assert detect_coincidence(solve_horizons(FOUR_REGION)) is Coincidence.NONE


def test_detect_inner():
    # inner merge: closed-form values at lam = 0.03, a = 1
    from knds.stability import stable_mass_closed_form

    sol = stable_mass_closed_form(0.03, 1.0, 0.0, "inner")
    h = solve_horizons(sol.params)
    assert detect_coincidence(h) is Coincidence.INNER
    assert h.horizons[0][2] == "inner_bh+outer_bh"


def test_detect_with_tighter_tolerance():
    # lam truncated to ten digits: with the default tolerance the horizons count as merged,
    # with a tolerance far below the truncation error they do not
    p = SourceParams(lam=0.1111111111, m=1.0)
    h = solve_horizons(p)
    assert detect_coincidence(h) is Coincidence.OUTER
    assert detect_coincidence(h, tol=1e-14) is Coincidence.NONE


@pytest.mark.parametrize(
    "r, region, timelike, b",
    [(0.5, "I", True, 0.4875), (1.5, "II", False, -0.1125), (2.5, "III", True, 0.1275),
     (4.0, "IV", False, -2.4)],
)
def test_classify_four_region(r, region, timelike, b):
    label = classify_region(FOUR_REGION, r)
    assert (label.region, label.timelike) == (region, timelike)
    assert horizon_polynomial(FOUR_REGION, r) == pytest.approx(b, abs=1e-13)


def test_classify_errors():
    with pytest.raises(OnHorizonError):
        classify_region(FOUR_REGION, 2.0)
    with pytest.raises(DegenerateStructureError) as err:
        classify_region(SDS_STABLE, 1.0)
    assert err.value.missing_regions == ("III",)
    with pytest.raises(DegenerateStructureError) as err:
        classify_region(TRIPLE, 1.0)
    assert err.value.missing_regions == ("II", "III")
    with pytest.raises(DomainError):
        classify_region(FOUR_REGION, -1.0)


@pytest.fixture(scope="module")
def random_sets():
    return random_four_real_root_params(np.random.default_rng(2024), 300)


def test_root_residuals_random(random_sets):
    for p in random_sets:
        h = solve_horizons(p)
        assert h.all_real
        for r in h.expanded_roots:
            assert abs(horizon_polynomial(p, r)) <= 1e-12 * max(1.0, abs(r)) ** 4


def test_vieta_random(random_sets):
    for p in random_sets:
        res = solve_horizons(p).vieta_residuals()
        assert max(res.values()) <= 1e-9, res


def test_exactly_one_negative_root(random_sets):
    for p in random_sets:
        h = solve_horizons(p)
        assert sum(1 for r in h.expanded_roots if r < 0) == 1
        assert h.anomalies == ()


def test_reconstruction(random_sets):
    rng = np.random.default_rng(5)
    for p in random_sets[:100]:
        rs = solve_horizons(p).expanded_roots
        for r in rng.uniform(-2 * max(map(abs, rs)), 2 * max(map(abs, rs)), 10):
            recon = -(p.lam / 3) * math.prod(r - ri for ri in rs)
            direct = horizon_polynomial(p, r)
            scale = max(abs(direct), p.lam / 3 * r**4, p.eta, 1.0)
            assert abs(recon - direct) <= 1e-9 * scale


def test_region_character_matches_sign(random_sets):
    rng = np.random.default_rng(9)
    checked = 0
    for p in random_sets:
        h = solve_horizons(p)
        r1, r2, r3 = h.horizon_radii
        for r in rng.uniform(0.0, 1.5 * r3, 4):
            if r <= 0 or min(abs(r - x) for x in (r1, r2, r3)) < 1e-6 * r3:
                continue
            label = classify_region(p, r, h=h)
            assert label.timelike == (horizon_polynomial(p, r) > 0)
            checked += 1
    assert checked >= 1000


def test_small_lambda_continuity():
    p = SourceParams(lam=1e-8, m=1.0, a=0.3, q_sq=0.2)
    h = solve_horizons(p)
    kn = solve_horizons_kn(p.replace(lam=0.0))
    r1, r2, r3 = h.horizon_radii
    assert r1 == pytest.approx(kn.roots[0], abs=1e-5)
    assert r2 == pytest.approx(kn.roots[1], abs=1e-5)
    assert r3 == pytest.approx(math.sqrt(3 / p.lam), rel=1e-3)


def test_complex_pair_roles():
    # large mass: inner pair complex, only the cosmological root is positive
    h = solve_horizons(SourceParams(lam=0.03, m=1.9834867, a=1.0))
    assert h.complex_pair_present
    assert h.roles == ("negative", "cosmological")
    assert not h.all_real


@pytest.mark.parametrize("lam", [1e-52, 1e-30, 1e-12])
def test_tiny_lambda_wide_root_range(backend, lam):
    # solar-mass hole in a nearly flat background: roots span ~23 decades at lam = 1e-52
    m = 1477.0632775277024
    h = solve_horizons(SourceParams(lam=lam, m=m))
    assert len(h.roots) == 4 and h.all_real
    r_bh, r_c = h.horizon_radii
    import mpmath

    with mpmath.workdps(80):
        cubic = mpmath.polyroots([-mpmath.mpf(lam) / 3, 0, 1, -2 * mpmath.mpf(m)],
                                 maxsteps=400, extraprec=400)
        expected = sorted(float(mpmath.re(z)) for z in cubic)
    assert r_bh == pytest.approx(expected[1], rel=1e-12)
    assert r_c == pytest.approx(expected[2], rel=1e-12)
    assert h.r0 == pytest.approx(expected[0], rel=1e-12)
    assert h.roots[1] == 0.0
