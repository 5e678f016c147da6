from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from detline.exactq import QuotientSpace, RationalMatrix, Subspace, det, unit_vec, vadd, vscale
from detline.multilinear import (
    LineElement, LineSpace, TensorElement, line_compare, pairing_P, pairing_P_inv,
    standard_pairings, swap_R, volume_tensor, wedge_ses,
)

e = unit_vec
L2 = LineSpace.coordinate_space(2)


def el(n, frame, scalar=1, dual=False):
    return LineElement(LineSpace.coordinate_space(n, dual), frame, scalar)


fracs = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def frames(draw, max_dim=6):
    n = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(fracs, min_size=n, max_size=n), min_size=n, max_size=n)
                .filter(lambda r: det(r) != 0))
    return n, rows


def test_line_compare_examples():
    assert line_compare(el(2, [e(2, 0), e(2, 1)], 2), el(2, [e(2, 1), e(2, 0)])) == -2
    assert line_compare(el(2, [(1, 1), e(2, 1)]), el(2, [e(2, 0), e(2, 1)])) == 1
    assert line_compare(el(2, [e(2, 0), e(2, 1)], 0), el(2, [e(2, 0), e(2, 1)])) == 0


def test_line_compare_rejects_other_lines_and_zero():
    with pytest.raises(ValueError):
        line_compare(el(2, [e(2, 0), e(2, 1)]), el(2, [e(2, 0), e(2, 1)], dual=True))
    with pytest.raises(ValueError):
        line_compare(el(1, [e(1, 0)]), el(1, [(0,)]))


def test_degenerate_dual_frame_rejected():
    with pytest.raises(ValueError):
        el(2, [(1, 0), (2, 0)], dual=True)


def test_dual_scaling_is_inverse():
    a = el(1, [(2,)], dual=True)
    assert line_compare(a, el(1, [(1,)], dual=True)) == Fraction(1, 2)


@given(frames(), frames(), frames())
def test_compare_is_transitive(a, b, c):
    n = min(a[0], b[0], c[0])
    fa, fb, fc = ([r[:n] for r in f[1][:n]] for f in (a, b, c))
    if 0 in (det(fa), det(fb), det(fc)):
        return
    x, y, z = el(n, fa), el(n, fb), el(n, fc)
    assert line_compare(x, y) * line_compare(y, z) == line_compare(x, z)


@given(frames(), st.data())
def test_shear_and_scale(f, data):
    n, rows = f
    if n < 2:
        return
    i, j = data.draw(st.permutations(range(n)))[:2]
    t, r = data.draw(fracs), data.draw(fracs.filter(lambda x: x != 0))
    base = el(n, rows)
    sheared = list(rows)
    sheared[i] = vadd(rows[i], vscale(t, rows[j]))
    assert line_compare(el(n, sheared), base) == 1
    scaled = list(rows)
    scaled[i] = vscale(r, rows[i])
    assert line_compare(el(n, scaled), base) == r


def test_quotient_frames_invariant_under_lifts():
    q = QuotientSpace(3, Subspace.span(3, [(1, 1, 0)]))
    space = LineSpace.of(q)
    a = LineElement(space, [(0, 1, 0), (0, 0, 1)])
    b = LineElement(space, [(-1, 0, 0), (5, 5, 1)])
    assert line_compare(a, b) == 1
    ad, bd = (LineElement(space.dualized(), x.frame) for x in (a, b))
    assert line_compare(ad, bd) == 1


def test_swap_signs():
    odd = el(1, [(1,)])
    even = el(2, [e(2, 0), e(2, 1)])
    t = TensorElement((odd, odd.scaled(3)))
    assert line_compare(swap_R(t), TensorElement((odd.scaled(3), odd))) == -1
    t2 = TensorElement((odd, even))
    assert line_compare(swap_R(t2), TensorElement((even, odd))) == 1
    for x in (t, t2):
        assert line_compare(swap_R(swap_R(x)), x) == 1


def test_pairing_P_examples():
    one = pairing_P(el(1, [(1,)]), LineSpace.coordinate_space(1))
    assert line_compare(one, el(1, [(1,)], dual=True)) == 1
    two = pairing_P(el(2, [e(2, 0), e(2, 1)]), L2)
    assert line_compare(two, el(2, [e(2, 0), e(2, 1)], dual=True)) == -1
    zero = pairing_P(el(0, []), LineSpace.coordinate_space(0))
    assert zero.dual and zero.coordinate() == 1


def test_standard_pairings_examples():
    assert standard_pairings(el(2, [e(2, 0), e(2, 1)]), el(2, [e(2, 0), e(2, 1)])) == (1, -1)
    a, b = standard_pairings(el(1, [(3,)]), el(1, [(2,)]))
    assert a == b == 6
    I3 = [e(3, i) for i in range(3)]
    a, b = standard_pairings(el(3, I3), el(3, I3))
    assert b == -a


@given(frames(5), frames(5))
def test_pairing_P_inverse(f, g):
    n = min(f[0], g[0])
    rows = [r[:n] for r in f[1][:n]]
    if det(rows) == 0:
        return
    a = el(n, rows, 3)
    back = pairing_P_inv(pairing_P(a, LineSpace.coordinate_space(n)))
    assert line_compare(back, a) == 1


@given(frames(5), frames(5))
def test_pairing_compatible_with_isomorphisms(f, g):
    # P(λ(δ*) α)(v) = P(α)(λ(δ) v): pair δᵀα with v and α with δv
    n = min(f[0], g[0])
    d = RationalMatrix.from_rows([r[:n] for r in f[1][:n]], n)
    alpha = [r[:n] for r in g[1][:n]]
    v = [e(n, i) for i in range(n)]
    lhs = standard_pairings(el(n, [d.T.apply(a) for a in alpha]), el(n, v))
    rhs = standard_pairings(el(n, alpha), el(n, [d.apply(x) for x in v]))
    assert lhs == rhs


def test_volume_tensor():
    (w0,) = volume_tensor([0]).factors
    assert w0.frame == () and w0.scalar == 1
    (w2,) = volume_tensor([2]).factors
    assert w2.frame == (e(2, 0), e(2, 1)) and w2.scalar == 1
    assert line_compare(w2, el(2, [e(2, 1), e(2, 0)])) == -1


def test_wedge_ses():
    # 0 → Q → Q² → Q → 0 with i = e2 and j the first coordinate
    i = RationalMatrix.from_rows([[0], [1]], 1)
    j = RationalMatrix.from_rows([[1, 0]], 2)
    out = wedge_ses(i, j, el(1, [(1,)]), el(1, [(1,)]), L2)
    assert line_compare(out, el(2, [e(2, 0), e(2, 1)])) == -1
