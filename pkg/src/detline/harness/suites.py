"""Randomized checks of the commutative diagrams.

Each trial draws its data from trial_rng(seed, suite, k), evaluates both
sides of one identity on random elements, and compares them exactly. A
trial returns None on success and a JSON-ready counterexample otherwise.
"""

from __future__ import annotations

import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .. import mutation as _mutation
from ..conventions import (
    BASELINE, ConventionSystem, ctilde_system, dual_system, is_norm_iii_star, kafc_triple,
    km_reversal_exponent, ms_overlap_exponent, ms_overlap_ratio, oplus_system, psi_system,
    random_system, recover_A, salamon_delta_exponent, salamon_exponent, stabilized_delta,
    surjective_dual,
)
from ..exactq import RationalMatrix, block_diag, hstack, rational_to_str, vstack
from ..fredholm import FinOperator, det_line, generator, iso_induced
from ..io import det_element_to_json, operator_to_json, square_to_json, triple_to_json
from ..multilinear import LineElement, TensorElement, line_compare, sign, wedge_ses
from ..triples import (
    compose_triples, ctilde, ctilde_via_psi, direct_sum_operator, dual_triple, hat_iso,
    inv_iso, invert_line_map, iso_delta, iso_T_dprime, iso_T_prime, km_element, km_iso_delta,
    oplus, oplus_via_psi, random_aux, stab_triple, stabilize, a_factor,
)
from ..triples.core import psi
from .gen import (
    GenConfig, gen_chain, gen_isomorphism, gen_operator, gen_square, gen_stab, gen_stab_row,
    gen_triple, gen_triple_chain, rand_matrix, random_element, trial_rng,
)

I = RationalMatrix.identity
Z = RationalMatrix.zeros


def _mismatch(lhs, rhs, **inputs):
    """None when lhs == rhs, else a counterexample with the ratio lhs / rhs."""
    r = line_compare(lhs, rhs)
    if r == 1:
        return None
    return {"ratio": rational_to_str(r), **inputs}


def _first(*results):
    return next((r for r in results if r is not None), None)


def _swap(a: int, b: int) -> RationalMatrix:
    """(u, v) ↦ (v, u) on Q^a ⊕ Q^b."""
    return vstack(hstack(Z(b, a), I(b)), hstack(I(a), Z(a, b)))


# ---------------------------------------------------------------- the suites


def s_well_definedness(rng, cfg, conv):
    t = gen_triple(rng, cfg)
    s1, s2 = random_element(rng, t.Dp), random_element(rng, t.Dpp)
    a = psi_system(conv, t, s1, s2)
    b = psi_system(conv, t, s1, s2, aux=random_aux(t, rng), rng=rng)
    return _mismatch(a, b, triple=triple_to_json(t))


def s_normalization_ii(rng, cfg, conv):
    t = gen_triple(rng, cfg, "surjective")
    s1, s2 = random_element(rng, t.Dp), random_element(rng, t.Dpp)
    w = wedge_ses(t.iX, t.jX, s1.kernel_part, s2.kernel_part, t.D.kernel_line())
    c = w.scalar * s1.cokernel_part.coordinate() * s2.cokernel_part.coordinate()
    ref = det_line(t.D, w.frame, [], c)
    return _mismatch(psi_system(conv, t, s1, s2), ref, triple=triple_to_json(t))


def s_naturality_ii(rng, cfg, conv):
    t = gen_triple(rng, cfg)
    g, t2 = gen_isomorphism(rng, t)
    s1, s2 = random_element(rng, t.Dp), random_element(rng, t.Dpp)
    lhs = iso_induced(g[1], g[4], t.D, psi_system(conv, t, s1, s2))
    rhs = psi_system(conv, t2, iso_induced(g[0], g[3], t.Dp, s1), iso_induced(g[2], g[5], t.Dpp, s2))
    return _mismatch(lhs, rhs, triple=triple_to_json(t), image=triple_to_json(t2))


def s_naturality_iii(rng, cfg, conv):
    t = gen_triple(rng, cfg, "Dp-invertible")
    s1, s2 = random_element(rng, t.Dp), random_element(rng, t.Dpp)
    bad = _mismatch(psi_system(conv, t, s1, s2), iso_T_prime(t, s1, s2), triple=triple_to_json(t))
    if bad:
        return bad
    t = gen_triple(rng, cfg, "Dpp-invertible")
    s1, s2 = random_element(rng, t.Dp), random_element(rng, t.Dpp)
    return _mismatch(psi_system(conv, t, s1, s2), iso_T_dprime(t, s1, s2), triple=triple_to_json(t))


def s_compositions_1(rng, cfg, conv):
    D1, D2, D3 = gen_chain(rng, cfg, 3)
    e1, e2, e3 = (random_element(rng, D) for D in (D1, D2, D3))
    ops = [operator_to_json(D) for D in (D1, D2, D3)]
    C = lambda a, b: ctilde_system(conv, a, b)
    return _first(
        _mismatch(ctilde(e1, e2), ctilde_via_psi(e1, e2), check="closed form", operators=ops),
        _mismatch(C(C(e1, e2), e3), C(e1, C(e2, e3)), check="associativity", operators=ops))


def s_compositions_2(rng, cfg, conv):
    t1, t2 = gen_triple_chain(rng, cfg)
    t12 = compose_triples(t1, t2)
    a1, b1, a2, b2 = (random_element(rng, D) for D in (t1.Dp, t1.Dpp, t2.Dp, t2.Dpp))
    P = lambda t, x, y: psi_system(conv, t, x, y)
    C = lambda x, y: ctilde_system(conv, x, y)
    lhs = C(P(t1, a1, b1), P(t2, a2, b2))
    rhs = P(t12, C(a1, a2), C(b1, b2)).scaled(sign(t1.Dpp.index * t2.Dp.index))
    return _mismatch(lhs, rhs, top=triple_to_json(t1), bottom=triple_to_json(t2))


def s_direct_sum_comm(rng, cfg, conv):
    D1, D2 = gen_operator(rng, cfg), gen_operator(rng, cfg)
    e1, e2 = random_element(rng, D1), random_element(rng, D2)
    ops = [operator_to_json(D) for D in (D1, D2)]
    RX = _swap(D1.domain_dim, D2.domain_dim)
    RY = _swap(D1.codomain_dim, D2.codomain_dim)
    lhs = iso_induced(RX, RY, direct_sum_operator(D1, D2), oplus_system(conv, e1, e2))
    rhs = oplus_system(conv, e2, e1).scaled(sign(D1.index * D2.index))
    return _first(
        _mismatch(oplus(e1, e2), oplus_via_psi(e1, e2), check="closed form", operators=ops),
        _mismatch(lhs, rhs, check="commutativity", operators=ops))


def s_direct_sum_assoc(rng, cfg, conv):
    D1, D2, D3 = (gen_operator(rng, cfg) for _ in range(3))
    e1, e2, e3 = (random_element(rng, D) for D in (D1, D2, D3))
    ops = [operator_to_json(D) for D in (D1, D2, D3)]
    S = lambda a, b: oplus_system(conv, a, b)
    return _first(
        _mismatch(oplus(e2, e3), oplus_via_psi(e2, e3), check="closed form", operators=ops),
        _mismatch(S(e1, S(e2, e3)), S(S(e1, e2), e3), check="associativity", operators=ops))


def s_exact_squares(rng, cfg, conv):
    sq = gen_square(rng, cfg)
    e = {p: random_element(rng, sq.ops[p]) for p in ("TL", "TR", "BL", "BR")}
    P = lambda t, x, y: psi_system(conv, t, x, y)
    lhs = P(sq.col("M"), P(sq.row("T"), e["TL"], e["TR"]), P(sq.row("B"), e["BL"], e["BR"]))
    lhs = lhs.scaled(sign(sq.ops["BL"].index * sq.ops["TR"].index))
    rhs = P(sq.row("C"), P(sq.col("L"), e["TL"], e["BL"]), P(sq.col("R"), e["TR"], e["BR"]))
    return _mismatch(lhs, rhs, square=square_to_json(sq))


def s_dual_triples(rng, cfg, conv):
    t = gen_triple(rng, cfg)
    td = dual_triple(t)
    s1, s2 = random_element(rng, t.Dp), random_element(rng, t.Dpp)
    lhs = dual_system(conv, t.D, psi_system(conv, t, s1, s2))
    rhs = psi_system(conv, td, dual_system(conv, t.Dpp, s2), dual_system(conv, t.Dp, s1))
    rhs = rhs.scaled(sign(t.Dp.index * t.Dpp.index))
    return _mismatch(lhs, rhs, triple=triple_to_json(t))


def s_stab_lemma(rng, cfg, conv):
    t = gen_triple(rng, cfg)
    row = gen_stab_row(rng, cfg, t)
    ts = stab_triple(t, row)
    s, sp, spp = (stabilize(t.D, row.Theta), stabilize(t.Dp, row.Theta_p),
                  stabilize(t.Dpp, row.Theta_pp))
    a, b = random_element(rng, ts.Dp), random_element(rng, ts.Dpp)
    lhs = inv_iso(s, psi(ts, a, b))
    rhs = psi(t, inv_iso(sp, a), inv_iso(spp, b))
    rhs = rhs.scaled(sign(t.Dp.index * row.j.nrows) * a_factor(row))
    return _mismatch(lhs, rhs, triple=triple_to_json(t), stabilized=triple_to_json(ts))


def s_transition_maps(rng, cfg, conv):
    D = gen_operator(rng, cfg)
    m, n = D.codomain_dim, D.domain_dim
    N1, N2 = rng.randint(0, cfg.max_dim), rng.randint(0, cfg.max_dim)
    T1, T2 = rand_matrix(rng, m, N1, cfg.entry_bound), rand_matrix(rng, m, N2, cfg.entry_bound)
    s1, s2 = stabilize(D, T1), stabilize(D, T2)
    s12 = stabilize(s1.D_Theta, T2)  # on X ⊕ Q^N1 ⊕ Q^N2
    s21 = stabilize(s2.D_Theta, T1)  # on X ⊕ Q^N2 ⊕ Q^N1
    x = random_element(rng, s1.D_Theta)
    lhs = invert_line_map(lambda z: inv_iso(s2, z), generator(s2.D_Theta))(inv_iso(s1, x))
    mid = invert_line_map(lambda z: inv_iso(s12, z), generator(s12.D_Theta))(x)
    R = block_diag(I(n), _swap(N1, N2))
    rhs = inv_iso(s21, iso_induced(R, I(m), s12.D_Theta, mid)).scaled(sign(N1 * N2))
    return _mismatch(lhs, rhs, operator=operator_to_json(D), N1=N1, N2=N2)


def s_classification_roundtrip(rng, cfg, conv):
    if conv is None or conv.is_baseline():
        conv = random_system(rng, multiplicative=rng.random() < 0.5) if conv is None else conv
    for i in range(-3, 4):
        for c in range(max(0, -i), 5):
            got = recover_A(conv, i, c)
            if got != conv.A(i, c):
                return {"i": i, "c": c, "recovered": rational_to_str(got),
                        "expected": rational_to_str(conv.A(i, c)), "convention": conv.to_json()}
    return None


def s_norm_iii_star(rng, cfg, conv, K: int = 4):
    if conv is None:
        conv = random_system(rng, multiplicative=rng.random() < 0.5)
    agree = True
    for k in range(1, K + 1):
        m = rng.randint(0, max(0, cfg.max_dim - k))
        D = gen_operator(rng, cfg, m + k, m, "surjective")
        e = random_element(rng, D)
        if line_compare(dual_system(conv, D, e), surjective_dual(D, e)) != 1:
            agree = False
    if agree != is_norm_iii_star(conv, K):
        return {"empirical": agree, "predicate": not agree, "convention": conv.to_json()}
    return None


def s_convention_signs(rng, cfg, conv):
    # KM ordering: km_iso_delta against R ∘ iso_delta ∘ R
    delta = gen_operator(rng, cfg)
    tau = km_element(delta, delta.cokernel.basis_vectors(), delta.kernel.basis)
    km = km_iso_delta(delta, tau)
    y, x = tau.factors
    el = det_line(delta, x.frame, y.frame, x.scalar * y.scalar * sign(x.degree * y.degree))
    o = iso_delta(delta, el)
    back = TensorElement((LineElement(o.cokernel_part.space, o.cokernel_part.frame, o.scalar),
                          LineElement(o.kernel_part.space, o.kernel_part.frame)))
    back = back.scaled(sign(delta.domain_dim * delta.codomain_dim))
    r = line_compare(km, back)
    if r != sign(km_reversal_exponent(delta)):
        return {"check": "km reversal", "operator": operator_to_json(delta), "ratio": rational_to_str(r)}
    # dropping the λ(δ) sign changes overlaps by (−1)^{(N'−N) dim coker D}
    D = gen_operator(rng, cfg)
    c = D.cdim
    thetas = []
    for _ in range(2):
        N = rng.randint(c, c + 2)
        while True:
            T = rand_matrix(rng, D.codomain_dim, N, cfg.entry_bound)
            if FinOperator(hstack(D.matrix, T)).is_surjective():
                break
        thetas.append(T)
    r = ms_overlap_ratio(D, thetas[0], thetas[1])
    if r != sign(ms_overlap_exponent(thetas[0].ncols, thetas[1].ncols, c)):
        return {"check": "overlap", "operator": operator_to_json(D), "ratio": rational_to_str(r)}
    # the reduced parity for δ_Θ matches the stabilized data
    _, dT = stabilized_delta(D, thetas[0])
    N = thetas[0].ncols
    full = ((N - dT.cdim) * dT.index + dT.kdim * dT.cdim) % 2
    if not (full == salamon_delta_exponent(N, dT.index, dT.cdim) == salamon_exponent(N, D.index, c)):
        return {"check": "salamon parity", "operator": operator_to_json(D), "N": N}
    return None


SUITES = {
    "well-definedness": s_well_definedness,
    "normalization-ii": s_normalization_ii,
    "naturality-ii": s_naturality_ii,
    "naturality-iii": s_naturality_iii,
    "compositions-1": s_compositions_1,
    "compositions-2": s_compositions_2,
    "direct-sum-comm": s_direct_sum_comm,
    "direct-sum-assoc": s_direct_sum_assoc,
    "exact-squares": s_exact_squares,
    "dual-triples": s_dual_triples,
    "stab-lemma": s_stab_lemma,
    "transition-maps": s_transition_maps,
    "classification-roundtrip": s_classification_roundtrip,
    "norm-iii-star": s_norm_iii_star,
    "convention-signs": s_convention_signs,
}
DIAGRAM_SUITES = tuple(list(SUITES)[:12])
# these identities are specific to the baseline and ignore a supplied convention
BASELINE_ONLY = {"stab-lemma", "transition-maps", "convention-signs"}


# ---------------------------------------------------------------- running


@dataclass
class SuiteReport:
    name: str
    trials: int
    failures: int
    counterexample: dict | None
    wall_time: float
    convention: str = "baseline"

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {"name": self.name, "trials": self.trials, "failures": self.failures,
                "counterexample": self.counterexample, "wall_time": round(self.wall_time, 4),
                "convention": self.convention}


def _conv_arg(name, conv):
    if conv is None:
        return None if name in ("classification-roundtrip", "norm-iii-star") else BASELINE
    if name in BASELINE_ONLY:
        return BASELINE
    return conv


def run_trial(name: str, cfg: GenConfig, k: int, conv: ConventionSystem | None = None):
    f = SUITES[name]
    rng = trial_rng(cfg.seed, name, k)
    try:
        out = f(rng, cfg, _conv_arg(name, conv))
    except Exception as exc:  # a crash is a failed trial, reported with its trace
        out = {"error": repr(exc), "trace": traceback.format_exc(limit=4)}
    if out is not None:
        out = {"seed": cfg.seed, "trial": k, **out}
    return out


def _run_range(name, cfg, conv_json, mutations, ks, stop_on_failure):
    conv = ConventionSystem.from_json(conv_json) if conv_json is not None else None
    failures, first = 0, None
    with _mutation.flipped(*mutations):
        for k in ks:
            out = run_trial(name, cfg, k, conv)
            if out is not None:
                failures += 1
                if first is None:
                    first = out
                if stop_on_failure:
                    break
    return failures, first


def run_suite(name: str, cfg: GenConfig, conv: ConventionSystem | None = None,
              mutations: tuple = (), workers: int = 1, stop_on_failure: bool = False) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.perf_counter()
    conv_json = conv.to_json() if conv is not None else None
    ks = list(range(cfg.trials))
    if workers <= 1:
        failures, first = _run_range(name, cfg, conv_json, tuple(mutations), ks, stop_on_failure)
        trials = ks.index(first["trial"]) + 1 if (stop_on_failure and first) else cfg.trials
    else:
        chunks = [ks[w::workers] for w in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_run_range, [name] * workers, [cfg] * workers, [conv_json] * workers,
                                [tuple(mutations)] * workers, chunks, [False] * workers))
        failures = sum(p[0] for p in parts)
        found = [p[1] for p in parts if p[1] is not None]
        first = min(found, key=lambda c: c["trial"]) if found else None
        trials = cfg.trials
    label = "baseline" if (name in BASELINE_ONLY or conv is None or conv.is_baseline()) else "custom"
    if conv is None and name in ("classification-roundtrip", "norm-iii-star"):
        label = "random per trial"
    return SuiteReport(name, trials, failures, first, time.perf_counter() - t0, label)


def run_all(cfg: GenConfig, conv: ConventionSystem | None = None, names=None,
            workers: int = 1) -> list:
    return [run_suite(n, cfg, conv, workers=workers) for n in (names or SUITES)]
