"""Stabilization D_Θ(x, u) = Dx + Θu and the maps λ(δ) → λ(V) ⊗ λ*(W)."""

from __future__ import annotations

from dataclasses import dataclass

from ..exactq import (
    ONE, QuotientSpace, RationalMatrix, block_diag, det, hstack, right_inverse, unit_vec, vstack,
)
from ..fredholm import DetLineElement, FinOperator, det_line
from ..multilinear import LineElement, LineSpace, TensorElement, sign
from .core import ExactTriple, psi
from .special import ctilde

I = RationalMatrix.identity
Z = RationalMatrix.zeros


@dataclass(frozen=True)
class StabData:
    D: FinOperator
    Theta: RationalMatrix
    D_Theta: FinOperator
    triple: ExactTriple

    @property
    def N(self) -> int:
        return self.Theta.ncols


def stabilize(D: FinOperator, Theta: RationalMatrix) -> StabData:
    """D_Θ on X ⊕ Q^N with its triple X → X⊕Q^N → Q^N over Y → Y → 0."""
    n, m, N = D.domain_dim, D.codomain_dim, Theta.ncols
    if Theta.nrows != m:
        raise ValueError("Θ must take values in the codomain of D")
    DT = FinOperator(hstack(D.matrix, Theta))
    t = ExactTriple(D, DT, FinOperator.zero(N, 0),
                    vstack(I(n), Z(N, n)), hstack(Z(N, n), I(N)),
                    I(m), Z(0, m), check=False)
    return StabData(D, Theta, DT, t)


def omega_N(N: int) -> DetLineElement:
    """Ω_N ⊗ 1* in λ(Q^N → 0)."""
    return det_line(FinOperator.zero(N, 0), [unit_vec(N, i) for i in range(N)], [], check=False)


def inclusion(n: int, N: int) -> FinOperator:
    return FinOperator(vstack(I(n), Z(N, n)))


def hat_iso(s: StabData, sigma: DetLineElement) -> DetLineElement:
    """λ(D) → λ(D_Θ): σ ↦ Ψ(σ ⊗ Ω_N ⊗ 1*)."""
    return psi(s.triple, sigma, omega_N(s.N))


def inv_iso(s: StabData, sigma: DetLineElement) -> DetLineElement:
    """λ(D_Θ) → λ(D): σ ↦ C̃_{ι, D_Θ}(1 ⊗ (Ω_N* ∘ λ(π2)) ⊗ σ)."""
    n, N = s.D.domain_dim, s.N
    iota = inclusion(n, N)
    frame = [(0,) * n + unit_vec(N, k) for k in range(N)]
    return ctilde(det_line(iota, [], frame, check=False), sigma)


def invert_line_map(f, source_generator):
    """Inverse of a line isomorphism f, given any nonzero element of its source."""
    from ..multilinear import line_compare
    image = f(source_generator)

    def inv(z):
        return source_generator.scaled(line_compare(z, image))
    return inv


@dataclass(frozen=True)
class StabRow:
    """Exact row Q^{N'} --i--> Q^N --j--> Q^{N''} with Θ', Θ, Θ'' commuting with a triple's Y row."""

    i: RationalMatrix
    j: RationalMatrix
    Theta_p: RationalMatrix
    Theta: RationalMatrix
    Theta_pp: RationalMatrix


def a_factor(s: StabRow) -> object:
    """A with i(Ω_{N'}) ∧ Ω_{N''} = A Ω_N, lifting Ω_{N''} through j."""
    N = s.i.nrows
    sec = right_inverse(s.j)
    frame = s.i.columns() + sec.columns()
    if len(frame) != N:
        raise ValueError("the row is not exact")
    return det(frame)


def stab_triple(t: ExactTriple, s: StabRow) -> ExactTriple:
    if s.Theta @ s.i != t.iY @ s.Theta_p or t.jY @ s.Theta != s.Theta_pp @ s.j:
        raise ValueError("Θ', Θ, Θ'' do not commute with the rows")
    return ExactTriple(
        FinOperator(hstack(t.Dp.matrix, s.Theta_p)),
        FinOperator(hstack(t.D.matrix, s.Theta)),
        FinOperator(hstack(t.Dpp.matrix, s.Theta_pp)),
        block_diag(t.iX, s.i), block_diag(t.jX, s.j), t.iY, t.jY, check=False)


# ---------------------------------------------------------------- λ(δ) ≅ λ(V) ⊗ λ*(W)


def _complement_of_kernel(delta: FinOperator):
    return QuotientSpace(delta.domain_dim, delta.kernel).basis_vectors()


def iso_delta(delta: FinOperator, sigma: DetLineElement, signed: bool = True) -> DetLineElement:
    """λ(δ) → λ(0: V → W):
    x ⊗ y* ↦ (−1)^{(dim W − dim coker δ) dim coker δ} (x ∧ v) ⊗ (δv ∧ y)*.

    With `signed=False` the sign is dropped.
    """
    if sigma.operator != delta:
        raise ValueError("element does not belong to λ(δ)")
    v = _complement_of_kernel(delta)
    c = delta.cdim
    e = (delta.codomain_dim - c) * c if signed else 0
    zero = FinOperator.zero(delta.domain_dim, delta.codomain_dim)
    return det_line(zero, list(sigma.kernel_part.frame) + list(v),
                    [delta.apply(x) for x in v] + list(sigma.cokernel_part.frame),
                    sigma.scalar * sign(e), check=False)


def km_element(delta: FinOperator, cok_frame, ker_frame, scalar=ONE) -> TensorElement:
    """scalar · (∧ cok_frame)* ⊗ (∧ ker_frame) in λ*(coker δ) ⊗ λ(ker δ)."""
    a = LineElement(delta.cokernel_line(), tuple(cok_frame), scalar)
    b = LineElement(delta.kernel_line(), tuple(ker_frame))
    return TensorElement((a, b))


def km_iso_delta(delta: FinOperator, tau: TensorElement) -> TensorElement:
    """λ*(coker δ) ⊗ λ(ker δ) → λ*(W) ⊗ λ(V):
    y* ⊗ x ↦ (−1)^{(dim V − dim ker δ) dim ker δ} (δv ∧ y)* ⊗ (x ∧ v).
    """
    a, b = tau.factors
    if a.space != delta.cokernel_line() or b.space != delta.kernel_line():
        raise ValueError("element does not belong to λ*(coker δ) ⊗ λ(ker δ)")
    v = _complement_of_kernel(delta)
    k = delta.kdim
    e = (delta.domain_dim - k) * k
    n, m = delta.domain_dim, delta.codomain_dim
    W = LineSpace.coordinate_space(m, dual=True)
    V = LineSpace.coordinate_space(n)
    out_a = LineElement(W, [delta.apply(x) for x in v] + list(a.frame),
                        a.scalar * b.scalar * sign(e), check=False)
    out_b = LineElement(V, list(b.frame) + list(v), ONE, check=False)
    return TensorElement((out_a, out_b))


def delta_triple(delta: FinOperator) -> ExactTriple:
    """0 → V → V over W → W → 0, whose snake map is δ.

    Its outer operators are 0 → W and V → 0, so Ψ of it maps
    λ*(W) ⊗ λ(V) to λ(δ).
    """
    n, m = delta.domain_dim, delta.codomain_dim
    return ExactTriple(FinOperator.zero(0, m), delta, FinOperator.zero(n, 0),
                       Z(n, 0), I(n), I(m), Z(0, m), check=False)
