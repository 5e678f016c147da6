"""Acceptance criteria, each checked at its stated (exact) tolerance and time budget."""

import random
import time

from detline.conventions import (
    ms_overlap_exponent, ms_overlap_ratio, random_system, is_norm_iii_star, kafc_triple,
    kafc_value, recover_A,
)
from detline.exactq import RationalMatrix, unit_vec
from detline.fredholm import FinOperator, det_line, dual_operator, dualize_det
from detline.harness.gen import GenConfig, gen_operator, gen_stab, random_element, trial_rng
from detline.harness.suites import DIAGRAM_SUITES, run_suite
from detline.multilinear import line_compare, sign
from detline.mutation import NAMES
from detline.triples import hat_iso, inv_iso, psi

M = RationalMatrix.from_rows


def test_1_classification_family_signs(report):
    t0 = time.perf_counter()
    bad = []
    for i in range(-3, 4):
        for c in range(max(0, -i), 5):
            t = kafc_triple(i, c)
            n = i + c
            s1 = det_line(t.Dp, [unit_vec(n, k) for k in range(n)], [unit_vec(c, k) for k in range(c)])
            s2 = det_line(t.Dpp, [unit_vec(c, k) for k in range(c)], [])
            ref = det_line(t.D, [t.iX.apply(unit_vec(n, k)) for k in range(n)], [])
            if line_compare(psi(t, s1, s2), ref) != sign(c):
                bad.append((i, c))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1
    report(1, ok, f"Ψ_(i,c) = (−1)^c on i∈[−3,3], c∈[0,4]; failures={bad} time={dt:.3f}s (< 1 s)")
    assert ok


def test_2_stabilization_composite(report):
    cfg = GenConfig(seed=2, max_dim=6)
    t0 = time.perf_counter()
    bad = 0
    for k in range(200):
        rng = trial_rng(cfg.seed, "acceptance-stab", k)
        s = gen_stab(rng, cfg)
        e = random_element(rng, s.D)
        if line_compare(inv_iso(s, hat_iso(s, e)), e) != sign(s.D.index * s.N):
            bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 5
    report(2, ok, f"inv_iso∘hat_iso = (−1)^(ind·N), 200 cases, max_dim 6; failures={bad} "
                  f"time={dt:.2f}s (< 5 s)")
    assert ok


def test_3_diagram_suites(report):
    cfg = GenConfig(seed=0, max_dim=5, trials=200)
    t0 = time.perf_counter()
    reports = [run_suite(name, cfg) for name in DIAGRAM_SUITES]
    dt = time.perf_counter() - t0
    failing = {r.name: r.failures for r in reports if not r.ok}
    ok = not failing and dt < 120
    report(3, ok, f"{len(reports)} diagram suites × 200 trials at max_dim 5; failing={failing} "
                  f"time={dt:.1f}s (< 120 s)")
    assert ok, [r.counterexample for r in reports if not r.ok]


def test_4_duality_involution(report):
    cfg = GenConfig(seed=4, max_dim=5)
    bad = 0
    for k in range(200):
        rng = trial_rng(cfg.seed, "acceptance-dual", k)
        D = gen_operator(rng, cfg)
        e = random_element(rng, D)
        back = dualize_det(dual_operator(D), dualize_det(D, e))
        if line_compare(back, e) != sign(D.index):
            bad += 1
    report(4, bad == 0, f"dualize_det(D*)∘dualize_det(D) = (−1)^ind D over 200 D; failures={bad}")
    assert bad == 0


def test_5_ms_discontinuity_witness(report):
    D = FinOperator.from_rows([[1, 0], [0, 0]])
    r = ms_overlap_ratio(D, M([[0], [1]]), M([[0, 1], [1, 0]]))
    ok = D.cdim == 1 and r == -1 == sign(ms_overlap_exponent(1, 2, D.cdim))
    report(5, ok, f"MS overlap / baseline overlap with N=1, N'=2, dim coker=1: {r}")
    assert ok


def test_6_classification_round_trip(report):
    cfg = GenConfig(seed=6, max_dim=5, trials=50)
    rng = random.Random(606)
    systems = [(random_system(rng, multiplicative=m), m) for m in [True] * 10 + [False] * 10]
    problems = []
    for k, (conv, mult) in enumerate(systems):
        for name in ("normalization-ii", "exact-squares", "dual-triples"):
            r = run_suite(name, cfg, conv)
            if not r.ok:
                problems.append((k, name, r.failures))
        for i in range(-3, 4):
            for c in range(max(0, -i), 5):
                if recover_A(conv, i, c) != conv.A(i, c) or \
                        kafc_value(conv, i, c) != sign(c) * conv.A(i, c):
                    problems.append((k, "A", i, c))
        if is_norm_iii_star(conv, 6) != mult:
            problems.append((k, "III*"))
    ok = not problems
    report(6, ok, f"20 convention systems (10 multiplicative), {cfg.trials} trials per suite; "
                  f"problems={problems}")
    assert ok


def test_7_mutation_sensitivity(report):
    cfg = GenConfig(seed=0, max_dim=5, trials=200)
    caught = {}
    for mut in NAMES:
        for name in DIAGRAM_SUITES:
            r = run_suite(name, cfg, mutations=(mut,), stop_on_failure=True)
            if r.failures:
                caught[mut] = (name, r.trials)
                break
    ok = set(caught) == set(NAMES)
    detail = ", ".join(f"{m} by {s} at trial {n}" for m, (s, n) in caught.items())
    report(7, ok, f"mutations caught: {detail}; missed={sorted(set(NAMES) - set(caught))}")
    assert ok
