import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from detline.conventions import (
    BASELINE, ConventionSystem, dual_system, is_norm_iii_star, iso_delta_system, kafc_value,
    km_reversal_exponent, ms_overlap_exponent, ms_overlap_ratio, psi_system,
    quillen_cosection, random_system, recover_A, salamon_exponent, surjective_dual, translate,
)
from detline.exactq import RationalMatrix, unit_vec
from detline.fredholm import FinOperator, det_line, dualize_det, generator
from detline.harness.gen import GenConfig, gen_operator, gen_triple, random_element
from detline.multilinear import line_compare, sign
from detline.triples import iso_delta, psi

CFG = GenConfig(max_dim=5)
seeds = st.integers(0, 2**32)
M = RationalMatrix.from_rows


def test_table_validation():
    with pytest.raises(ValueError):
        ConventionSystem.from_dict({(0, -1): 2})
    with pytest.raises(ValueError):
        ConventionSystem.from_dict({(-3, 1): 2})
    with pytest.raises(ValueError):
        ConventionSystem.from_dict({(1, 1): 0})
    with pytest.raises(ValueError):
        ConventionSystem.from_dict({(1, 0): 2})
    assert ConventionSystem.from_dict({(2, 1): 5}).A(2, 1) == 5
    assert BASELINE.A(4, 0) == 1 and BASELINE.is_baseline()


@given(seeds)
def test_baseline_psi_is_psi(seed):
    rng = random.Random(seed)
    t = gen_triple(rng, CFG)
    s1, s2 = random_element(rng, t.Dp), random_element(rng, t.Dpp)
    assert line_compare(psi_system(BASELINE, t, s1, s2), psi(t, s1, s2)) == 1


@given(seeds)
def test_surjective_triples_unaffected(seed):
    rng = random.Random(seed)
    conv = random_system(rng)
    t = gen_triple(rng, CFG, "surjective")
    s1, s2 = random_element(rng, t.Dp), random_element(rng, t.Dpp)
    assert line_compare(psi_system(conv, t, s1, s2), psi(t, s1, s2)) == 1


@given(seeds)
def test_kafc_values(seed):
    conv = random_system(random.Random(seed))
    for i, c in [(1, 1), (0, 2), (-1, 1), (-2, 3)]:
        assert kafc_value(conv, i, c) == sign(c) * conv.A(i, c)
        assert recover_A(conv, i, c) == conv.A(i, c)


def test_dual_system_examples():
    conv = random_system(random.Random(7))
    D = FinOperator.from_rows([[1, 1], [0, 2]])
    g = generator(D)
    assert line_compare(dual_system(conv, D, g), dualize_det(D, g)) == 1
    assert line_compare(dual_system(BASELINE, D, g), dualize_det(D, g)) == 1
    # δ: Q → 0
    L = FinOperator.zero(1, 0)
    s = det_line(L, [(3,)], [])
    assert line_compare(dual_system(conv, L, s), surjective_dual(L, s)) == 1


def test_iso_delta_system_examples():
    conv = ConventionSystem.from_dict({(1, 2): 5, (0, 1): 3, (0, 2): 7})
    d = FinOperator.from_rows([[1, 0, 0], [0, 1, 0]])   # surjective, i = 1, dim W = 2
    g = generator(d)
    assert line_compare(iso_delta_system(conv, d, g), iso_delta(d, g)) == Fraction(1, 5)
    z = FinOperator.zero(2, 2)
    assert line_compare(iso_delta_system(conv, z, generator(z)), iso_delta(z, generator(z))) == 1
    seidel = ConventionSystem.from_dict({(1, 1): 4})
    inv = FinOperator.from_rows([[2, 0], [1, 1]])
    out = iso_delta_system(seidel, inv, generator(inv))
    basis = [unit_vec(2, 0), unit_vec(2, 1)]
    assert line_compare(out, det_line(out.operator, basis, basis)) == Fraction(1, 2)


def test_norm_iii_star_examples():
    assert is_norm_iii_star(BASELINE, 4)
    geo = ConventionSystem.from_dict({(-1, 1): 2, (-2, 2): 4, (-3, 3): 8})
    assert is_norm_iii_star(geo, 3)
    assert not is_norm_iii_star(ConventionSystem.from_dict({(-1, 1): 2, (-2, 2): 3}), 2)


@given(seeds)
def test_norm_iii_star_matches_dual_behaviour(seed):
    rng = random.Random(seed)
    mult = rng.random() < 0.5
    conv = random_system(rng, multiplicative=mult)
    assert is_norm_iii_star(conv, 4) == mult
    D = gen_operator(rng, CFG, 4, 2, "surjective")
    e = random_element(rng, D)
    agrees = line_compare(dual_system(conv, D, e), surjective_dual(D, e)) == 1
    assert agrees == (conv.A(-2, 2) == conv.A(-1, 1) ** 2)


def test_parity_examples():
    assert ms_overlap_exponent(1, 2, 1) == 1
    for ind in range(-3, 4):
        assert salamon_exponent(2, ind, 2) == 0
    for r in range(4):
        assert km_reversal_exponent(FinOperator(RationalMatrix.identity(r))) == r % 2


def test_ms_witness():
    D = FinOperator.from_rows([[1, 0], [0, 0]])
    assert D.cdim == 1
    r = ms_overlap_ratio(D, M([[0], [1]]), M([[0, 1], [1, 0]]))
    assert r == -1 == sign(ms_overlap_exponent(1, 2, D.cdim))


def test_quillen_examples():
    Id = FinOperator.identity(1)
    assert quillen_cosection(Id, generator(Id).scaled(3)) == 3
    Z1 = FinOperator.zero(1, 1)
    assert quillen_cosection(Z1, generator(Z1)) == 0
    D = FinOperator.from_rows([[1, 2], [3, 4]])
    assert quillen_cosection(D, generator(D)) == 1


def test_translate():
    assert translate("ms", {"N": "1", "Nprime": "2", "cdim": "1"}) == -1
    assert translate("km", {"rank": 3}) == -1
    assert translate("salamon-seidel", {"N": 2, "ind": 5, "cdim": 0}) == 1
    with pytest.raises(ValueError):
        translate("nope", {})


def test_json_roundtrip():
    conv = random_system(random.Random(1), window=3)
    back = ConventionSystem.from_json(json.dumps(conv.to_json()))
    assert back == conv
    assert all(back.A(i, c) == conv.A(i, c) for i in range(-3, 4) for c in range(max(0, -i), 4))
