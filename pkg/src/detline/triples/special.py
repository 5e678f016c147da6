"""Direct sums, compositions, duals and squares of exact triples."""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import mutation
from ..exactq import (
    QuotientSpace, RationalMatrix, Subspace, block_diag, blocks, hstack, vstack,
)
from ..fredholm import DetLineElement, FinOperator, det_compare, det_line, drop_identity
from ..multilinear import sign
from .core import ExactTriple, psi

I = RationalMatrix.identity
Z = RationalMatrix.zeros


def direct_sum_operator(D1: FinOperator, D2: FinOperator) -> FinOperator:
    return FinOperator(block_diag(D1.matrix, D2.matrix))


def direct_sum_triple(D1: FinOperator, D2: FinOperator) -> ExactTriple:
    """X' → X'⊕X'' → X'' with x' ↦ (x', 0) and (x', x'') ↦ x'', and the same on Y."""
    n1, n2 = D1.domain_dim, D2.domain_dim
    m1, m2 = D1.codomain_dim, D2.codomain_dim
    return ExactTriple(D1, direct_sum_operator(D1, D2), D2,
                       vstack(I(n1), Z(n2, n1)), hstack(Z(n2, n1), I(n2)),
                       vstack(I(m1), Z(m2, m1)), hstack(Z(m2, m1), I(m2)), check=False)


def oplus_sign_exponent(D1: FinOperator, D2: FinOperator) -> int:
    return D2.index * D1.cdim + mutation.extra("direct-sum-sign")


def oplus(s1: DetLineElement, s2: DetLineElement) -> DetLineElement:
    """λ(D') ⊗ λ(D'') → λ(D' ⊕ D''), interleaving frames with zero padding."""
    D1, D2 = s1.operator, s2.operator
    n1, n2 = D1.domain_dim, D2.domain_dim
    m1, m2 = D1.codomain_dim, D2.codomain_dim
    z = lambda k: (0,) * k
    kx = [tuple(v) + z(n2) for v in s1.kernel_part.frame] + \
         [z(n1) + tuple(v) for v in s2.kernel_part.frame]
    cy = [tuple(v) + z(m2) for v in s1.cokernel_part.frame] + \
         [z(m1) + tuple(v) for v in s2.cokernel_part.frame]
    c = s1.scalar * s2.scalar * sign(oplus_sign_exponent(D1, D2))
    return det_line(direct_sum_operator(D1, D2), kx, cy, c, check=False)


def oplus_via_psi(s1: DetLineElement, s2: DetLineElement) -> DetLineElement:
    return psi(direct_sum_triple(s1.operator, s2.operator), s1, s2)


# ---------------------------------------------------------------- compositions


def composition_triple(D1: FinOperator, D2: FinOperator) -> ExactTriple:
    """X1 → X1⊕X2 → X2 over X2 → X3⊕X2 → X3, middle map D2D1 ⊕ id.

    iX(x1) = (x1, D1 x1), jX(x1, x2) = D1 x1 − x2,
    iY(x2) = (D2 x2, x2), jY(x3, x2) = x3 − D2 x2.
    """
    A, B = D1.matrix, D2.matrix
    n1, n2 = A.ncols, A.nrows
    if B.ncols != n2:
        raise ValueError("operators are not composable")
    mid = FinOperator(block_diag(B @ A, I(n2)))
    return ExactTriple(D1, mid, D2,
                       vstack(I(n1), A), hstack(A, -I(n2)),
                       vstack(B, I(n2)), hstack(I(B.nrows), -B), check=False)


def ctilde_sign_exponent(D1: FinOperator, D2: FinOperator, delta_rank: int) -> int:
    return (D2.index * D1.cdim + (D1.cdim + D2.cdim) * delta_rank
            + mutation.extra("composition-sign"))


def ctilde(s1: DetLineElement, s2: DetLineElement) -> DetLineElement:
    """λ(D1) ⊗ λ(D2) → λ(D2 D1).

    With x1 spanning ker D1, u ker D2D1 / ker D1, v ker D2 / (ker D2 ∩ Im D1),
    w X2 / (ker D2 + Im D1) and y2 coker D2,
        x1 ⊗ (v ∧ w)* ⊗ (D1 u ∧ v) ⊗ y2*  ↦  (−1)^ε (x1 ∧ u) ⊗ (D2 w ∧ y2)*.
    """
    D1, D2 = s1.operator, s2.operator
    if D2.domain_dim != D1.codomain_dim:
        raise ValueError("operators are not composable")
    A, B = D1.matrix, D2.matrix
    D21 = FinOperator(B @ A)
    n2 = A.nrows
    K1, K2, K21 = D1.kernel, D2.kernel, D21.kernel
    u = QuotientSpace(A.ncols, K1, K21).basis_vectors()
    k2_im1 = K21.image(A)                      # ker D2 ∩ Im D1
    v = QuotientSpace(n2, k2_im1, K2).basis_vectors()
    w = QuotientSpace(n2, K2 + D1.image).basis_vectors()
    y2 = D2.cokernel.basis_vectors()
    ref1 = det_line(D1, K1.basis, list(v) + list(w), check=False)
    ref2 = det_line(D2, [A.apply(x) for x in u] + list(v), y2, check=False)
    e = ctilde_sign_exponent(D1, D2, len(v))
    c = det_compare(s1, ref1) * det_compare(s2, ref2) * sign(e)
    return det_line(D21, list(K1.basis) + list(u), [B.apply(x) for x in w] + list(y2), c,
                    check=False)


def ctilde_via_psi(s1: DetLineElement, s2: DetLineElement) -> DetLineElement:
    """Ψ of the composition triple, then drop the identity summand."""
    D1, D2 = s1.operator, s2.operator
    t = composition_triple(D1, D2)
    return drop_identity(psi(t, s1, s2), FinOperator(D2.matrix @ D1.matrix), "right")


def compose_triples(t1: ExactTriple, t2: ExactTriple) -> ExactTriple:
    """Stack t2 under t1; t1's bottom row must be t2's top row."""
    if t1.iY != t2.iX or t1.jY != t2.jX:
        raise ValueError("the middle rows of the two triples differ")
    return ExactTriple(t2.Dp @ t1.Dp, t2.D @ t1.D, t2.Dpp @ t1.Dpp,
                       t1.iX, t1.jX, t2.iY, t2.jY, check=False)


def dual_triple(t: ExactTriple) -> ExactTriple:
    """Transpose everything: Y''* → Y* → Y'* over X''* → X* → X'*."""
    T = lambda D: FinOperator(D.matrix.T)
    return ExactTriple(T(t.Dpp), T(t.D), T(t.Dp), t.jY.T, t.iY.T, t.jX.T, t.iX.T, check=False)


# ---------------------------------------------------------------- squares


ROWS = ("T", "C", "B")
COLS = ("L", "M", "R")


@dataclass(frozen=True)
class EdgeMap:
    X: RationalMatrix
    Y: RationalMatrix


@dataclass(frozen=True)
class ExactSquare:
    """A 3x3 grid of operators, keyed 'TL', 'TM', ..., 'BR'.

    `row_maps[r]` holds the (i, j) pair of the row r ∈ {T, C, B} and
    `col_maps[c]` the pair of the column c ∈ {L, M, R}. Every row and every
    column is an exact triple.
    """

    ops: dict = field(hash=False)
    row_maps: dict = field(hash=False)
    col_maps: dict = field(hash=False)

    def row(self, r: str) -> ExactTriple:
        i, j = self.row_maps[r]
        return ExactTriple(self.ops[r + "L"], self.ops[r + "M"], self.ops[r + "R"],
                           i.X, j.X, i.Y, j.Y, check=False)

    def col(self, c: str) -> ExactTriple:
        i, j = self.col_maps[c]
        return ExactTriple(self.ops["T" + c], self.ops["C" + c], self.ops["B" + c],
                           i.X, j.X, i.Y, j.Y, check=False)


def validate_square(sq: ExactSquare) -> str | None:
    from .core import validate_triple
    for r in ROWS:
        bad = validate_triple(sq.row(r))
        if bad:
            return f"row {r}: {bad}"
    for c in COLS:
        bad = validate_triple(sq.col(c))
        if bad:
            return f"column {c}: {bad}"
    # the maps between rows must commute with the maps inside rows
    for side in ("X", "Y"):
        g = lambda m: getattr(m, side)
        iT, jT = (g(m) for m in sq.row_maps["T"])
        iC, jC = (g(m) for m in sq.row_maps["C"])
        iB, jB = (g(m) for m in sq.row_maps["B"])
        iL, jL = (g(m) for m in sq.col_maps["L"])
        iM, jM = (g(m) for m in sq.col_maps["M"])
        iR, jR = (g(m) for m in sq.col_maps["R"])
        checks = {
            "TL→CM": (iM @ iT, iC @ iL), "TM→CR": (iR @ jT, jC @ iM),
            "CL→BM": (iB @ jL, jM @ iC), "CM→BR": (jB @ jM, jR @ jC),
        }
        for name, (p, q) in checks.items():
            if p != q:
                return f"{side} square {name} does not commute"
    return None
