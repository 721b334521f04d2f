"""Acceptance gate: one test and one pass/fail line per shipped claim.

Run with -s (or read captured output) for the human-readable lines; the
pytest verdict per test is the machine-readable gate.  Criteria marked
extended only add their extra instances when GARLAND_EXTENDED=1.
"""

import os
import random
import time

import pytest

from identities import (
    eigencochain_sum_failures,
    random_pure_complex,
    universal_identity_failures,
)
from garland.complexes import from_maximal_simplices
from garland.harness import (
    CERTIFIED_FALSE,
    CERTIFIED_TRUE,
    default_grid,
    dumps_report,
    get_building,
    run_grid,
    spectral_report_for_building,
    strip_timings,
    verify_fundamental_inequality_complex,
)
from garland.laplace import assemble_matrix
from garland.polyq import RatPolynomial, poly_product
from garland.rationals import QQ, as_float
from garland.reference import reference_minimal_polynomial
from garland.spectra import minimal_polynomial, squarefree_certify

EXTENDED = os.environ.get("GARLAND_EXTENDED") == "1"


def P(*coeffs):
    return RatPolynomial(tuple(QQ(c) for c in coeffs))


def _line(num, ok, detail):
    print(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


def _midpoint(interval_json):
    lo = QQ(*map(int, interval_json["lo"].split("/")))
    hi = QQ(*map(int, interval_json["hi"].split("/")))
    return as_float((lo + hi) / 2)


@pytest.fixture(scope="module")
def grid_runs(tmp_path_factory):
    # different worker counts, seeds, and caches must not change a byte
    a = run_grid("default", threads=1, seed=0,
                 cache_dir=tmp_path_factory.mktemp("grid-a"))
    b = run_grid("default", threads=2, seed=7,
                 cache_dir=tmp_path_factory.mktemp("grid-b"))
    return a, b


def test_criterion_01_rank_one_reproduction(shared_cache):
    per_q = {}
    for q in (2, 3, 4, 5, 7):
        t_q = time.perf_counter()
        rep = spectral_report_for_building(1, q, 0, cache_dir=shared_cache)
        expected = poly_product(
            [P(0, 1), P(-2, 1), P(QQ(q * q + q + 1, (q + 1) ** 2), -2, 1)]
        )
        assert rep.minpoly == expected, f"q={q}"
        scaled = rep.minpoly.scale_roots(QQ(q + 1))
        expected_scaled = poly_product(
            [P(0, 1), P(-(2 * q + 2), 1), P(q * q + q + 1, -(2 * q + 2), 1)]
        )
        assert scaled == expected_scaled, f"q={q} scaled"
        per_q[q] = time.perf_counter() - t_q
        assert per_q[q] < 5.0
    _line(1, True,
          f"rank-1 minimal polynomials match the closed form for q in 2,3,4,5,7 "
          f"(slowest {max(per_q.values()):.2f}s, limit 5s each); "
          f"the (q+1)-scaled operator satisfies the integer cubic exactly")


def test_criterion_02_rank_two_reproduction(shared_cache):
    worst = 0.0
    for q in (2, 3):
        for i in (0, 1):
            t0 = time.perf_counter()
            rep = spectral_report_for_building(2, q, i, cache_dir=shared_cache)
            assert rep.minpoly == reference_minimal_polynomial(2, q, i), (q, i)
            dt = time.perf_counter() - t0
            worst = max(worst, dt)
            assert dt < 180.0
    rep21 = spectral_report_for_building(2, 2, 1, cache_dir=shared_cache)
    assert rep21.m.is_rational and QQ(rep21.m.value) == QQ(1, 3)
    _line(2, True,
          f"rank-2 minimal polynomials match the recorded expansions for "
          f"q in 2,3 and degrees 0,1 (slowest {worst:.2f}s, limit 180s); "
          f"smallest nonzero degree-1 eigenvalue at q=2 is exactly 1/3")


def test_criterion_03_rank_three_reproduction(shared_cache):
    t0 = time.perf_counter()
    rep = spectral_report_for_building(3, 2, 0, cache_dir=shared_cache)
    display = poly_product([
        P(0, 1),
        P(-4, 1),
        P(QQ(-23, 7), 1),
        P(QQ(-19, 7), 1),
        P(QQ(6734719, 99225), QQ(-220232, 2205), QQ(581528, 11025), -12, 1),
    ])
    assert rep.minpoly == display
    assert rep.minpoly == reference_minimal_polynomial(3, 2, 0)
    dt = time.perf_counter() - t0
    assert dt < 600.0
    extra = "extended instances skipped (GARLAND_EXTENDED unset)"
    if EXTENDED:
        rep33 = spectral_report_for_building(3, 3, 0, cache_dir=shared_cache)
        display33 = poly_product([
            P(0, 1),
            P(-4, 1),
            P(QQ(-42, 13), 1),
            P(QQ(-36, 13), 1),
            P(QQ(309843369, 4326400), QQ(-2760633, 27040),
              QQ(14350977, 270400), -12, 1),
        ])
        assert rep33.minpoly == display33
        rep42 = spectral_report_for_building(4, 2, 0, cache_dir=shared_cache)
        display42 = poly_product([
            P(0, 1),
            P(-4, 1),
            P(-5, 1),
            P(QQ(-144, 35), 1),
            P(QQ(2798, 155), QQ(-1322, 155), 1),
            P(QQ(536, 35), QQ(-276, 35), 1),
            P(QQ(-7512, 155), QQ(1306, 31), QQ(-1778, 155), 1),
        ])
        assert rep42.minpoly == display42
        extra = "extended rank-3 q=3 and rank-4 q=2 factorizations also match"
    _line(3, True,
          f"rank-3 q=2 degree-0 minimal polynomial equals the recorded "
          f"factorization with the 581528/11025 quartic coefficient "
          f"({dt:.2f}s, limit 600s); {extra}")


def test_criterion_04_default_grid_certification(grid_runs):
    doc, _ = grid_runs
    assert [tuple(d["instance"][k] for k in ("ell", "q", "i"))
            for d in doc["instances"]] == default_grid()
    for d in doc["instances"]:
        inst = d["instance"]
        ell, i = inst["ell"], inst["i"]
        by_check = {v["check"]: v for v in d["verdicts"]}
        assert by_check["max-eigenvalue"]["status"] == CERTIFIED_TRUE, inst
        assert by_check["max-eigenvalue"]["witness"]["expected"] == f"{ell + 1}/1"
        assert by_check["min-bound"]["status"] == CERTIFIED_TRUE, inst
        assert by_check["min-bound"]["witness"]["bound"] == f"{ell - i}/1"
        assert by_check["integer-eigenvalues"]["status"] == CERTIFIED_TRUE, inst
        if i >= 1:
            assert by_check["fundamental-inequality"]["status"] == CERTIFIED_TRUE, inst
    _line(4, True,
          "on all 10 default-grid instances: top eigenvalue is exactly ell+1 "
          "with nothing above it, the smallest nonzero eigenvalue is certified "
          "<= ell-i, and the integer ladder ell+1..ell-i+1 consists of roots")


def test_criterion_05_minimum_spot_checks(grid_runs, shared_cache):
    doc, _ = grid_runs
    mids = {}
    for d in doc["instances"]:
        inst = d["instance"]
        mids[(inst["ell"], inst["q"], inst["i"])] = _midpoint(d["spectral"]["m"])
    tol = 5e-3
    assert abs(mids[(1, 2, 0)] - 0.53) <= tol
    assert mids[(2, 2, 0)] >= 1.08 - tol
    assert mids[(2, 3, 0)] >= 1.08 - tol
    assert abs(mids[(3, 2, 0)] - 1.68) <= tol
    extra = "extended instances skipped (GARLAND_EXTENDED unset)"
    if EXTENDED:
        m33 = spectral_report_for_building(3, 3, 0, cache_dir=shared_cache)
        m42 = spectral_report_for_building(4, 2, 0, cache_dir=shared_cache)
        assert abs(_midpoint(m33.m.to_json_dict()) - 1.89) <= tol
        assert abs(_midpoint(m42.m.to_json_dict()) - 2.32) <= tol
        extra = "extended 1.89 and 2.32 spot checks also hold"
    _line(5, True,
          f"certified interval midpoints reproduce the recorded approximations "
          f"0.53, >=1.08, 1.68 within {tol}; {extra}")


def test_criterion_06_exact_identity_suite(b22):
    t0 = time.perf_counter()
    rng = random.Random(6021023)
    failures = []
    cases = 0
    for k in range(210):
        cx = random_pure_complex(rng)
        failures += universal_identity_failures(cx, rng, tag=f"random {k}")
        cases += 1
    for q in (2, 3, 4):
        b = get_building(1, q)
        failures += universal_identity_failures(b.complex, rng, tag=f"rank-1 q={q}")
        failures += eigencochain_sum_failures(b, tag=f"rank-1 q={q}")
        cases += 1
    failures += universal_identity_failures(b22.complex, rng, tag="rank-2 q=2")
    failures += eigencochain_sum_failures(b22, tag="rank-2 q=2")
    cases += 1
    dt = time.perf_counter() - t0
    assert dt < 120.0
    assert cases >= 200
    _line(6, not failures,
          f"exact identities hold on {cases} complexes with zero failures "
          f"({dt:.1f}s, limit 120s)" if not failures else
          f"{len(failures)} identity failures, first: {failures[0]}")


def test_criterion_07_simplex_oracle(shared_cache):
    for n in range(1, 7):
        cx = from_maximal_simplices([tuple(range(n + 1))])
        for i in range(n):
            p = minimal_polynomial(assemble_matrix(cx, i))
            assert p == P(0, -(n + 1), 1), (n, i)
        for i in range(1, n):
            v = verify_fundamental_inequality_complex(
                cx, i, {"n": n, "i": i}, cache_dir=shared_cache
            )
            assert v.status == CERTIFIED_TRUE, (n, i)
            w = v.witness
            assert w["upper"]["lhs"] == w["upper"]["rhs"], (n, i)
            assert w["hypothesis_cohomology_vanishes"] is True
            assert w["lower"]["lhs"] == w["lower"]["rhs"], (n, i)
    _line(7, True,
          "full n-simplex spectra are exactly {0, n+1} for n <= 6 in every "
          "degree, and both sides of the two-sided eigenvalue bound meet "
          "with exact equality")


def test_criterion_08_vertex_link_divisibility(b22, shared_cache):
    t0 = time.perf_counter()
    edge_minpoly = spectral_report_for_building(2, 2, 1, cache_dir=shared_cache).minpoly
    cx = b22.complex
    bad = []
    for v in cx.vertices:
        link, _ = cx.vertex_link(v)
        p = minimal_polynomial(assemble_matrix(link, 0))
        squarefree_certify(p)
        if not p.divides(edge_minpoly):
            bad.append((v, p.serialize()))
    dt = time.perf_counter() - t0
    assert dt < 120.0
    detail = (
        f"all 65 vertex-link minimal polynomials divide the degree-1 "
        f"minimal polynomial ({dt:.1f}s)"
        if not bad else
        f"{len(bad)} of {cx.num_simplices(0)} vertex links have minimal "
        f"polynomials that do not divide the degree-1 minimal polynomial; "
        f"first offender is vertex {bad[0][0]} with {bad[0][1]} "
        f"(its irrational eigenvalue pair 1 +- sqrt(2)/3 does not survive "
        f"to the edge spectrum, whose roots are exactly k/3 for k = 0..9)"
    )
    _line(8, not bad, detail)


def test_criterion_09_threshold_hypothesis_report(grid_runs):
    doc, _ = grid_runs
    for d in doc["instances"]:
        inst = d["instance"]
        thresholds = [v for v in d["verdicts"] if v["check"] == "vanishing-threshold"]
        assert len(thresholds) == 1
        t = thresholds[0]
        assert t["witness"]["kind"] == "hypothesis-check"
        if (inst["ell"], inst["q"], inst["i"]) == (2, 2, 1):
            # the q=2 boundary case: m equals the threshold 1/3, strict fails
            assert t["status"] == CERTIFIED_FALSE
            assert t["witness"]["threshold"] == "1/3"
            assert t["witness"]["m"]["value"] == "1/3"
        if inst["i"] == 0:
            # every default-grid instance clears the degree-1 threshold ell/2
            got = QQ(*map(int, t["witness"]["threshold"].split("/")))
            assert got == QQ(inst["ell"], 2)
            assert t["status"] == CERTIFIED_TRUE, inst
    _line(9, True,
          "the (2,2) degree-2 hypothesis is reported not satisfied with "
          "m = threshold = 1/3 exactly, and every default-grid degree-0 "
          "instance certifies m > ell/2 for the degree-1 hypothesis")


def test_criterion_10_determinism(grid_runs):
    a, b = grid_runs
    text_a = dumps_report(strip_timings(a))
    text_b = dumps_report(strip_timings(b))
    assert text_a == text_b
    _line(10, True,
          f"two full default-grid runs with different thread counts, seeds, "
          f"and caches serialize to byte-identical reports "
          f"({len(text_a)} bytes, timings excluded)")
