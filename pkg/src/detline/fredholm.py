"""Linear maps between coordinate spaces and their determinant lines.

λ(D) = λ(ker D) ⊗ λ*(coker D). An element is stored as a kernel frame, a
cokernel frame whose wedge the dual factor takes to 1, and one scalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import mutation
from .exactq import (
    ONE, Q, QuotientSpace, RationalMatrix, Subspace, dot, image_basis, kernel_basis,
)
from .multilinear import LineElement, LineSpace, pairing_P, pairing_P_inv, sign


@dataclass(frozen=True)
class FinOperator:
    matrix: RationalMatrix
    kernel: Subspace = field(default=None, compare=False, repr=False)
    image: Subspace = field(default=None, compare=False, repr=False)
    cokernel: QuotientSpace = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        m = self.matrix
        ker = kernel_basis(m)
        im = image_basis(m)
        object.__setattr__(self, "kernel", ker)
        object.__setattr__(self, "image", im)
        object.__setattr__(self, "cokernel", QuotientSpace(m.nrows, im))

    @staticmethod
    def from_rows(rows, ncols: int | None = None) -> "FinOperator":
        return FinOperator(RationalMatrix.from_rows(rows, ncols))

    @staticmethod
    def zero(n: int, m: int) -> "FinOperator":
        return FinOperator(RationalMatrix.zeros(m, n))

    @staticmethod
    def identity(n: int) -> "FinOperator":
        return FinOperator(RationalMatrix.identity(n))

    @property
    def domain_dim(self) -> int:
        return self.matrix.ncols

    @property
    def codomain_dim(self) -> int:
        return self.matrix.nrows

    @property
    def index(self) -> int:
        return self.kernel.dim - self.cokernel.dim

    @property
    def kdim(self) -> int:
        return self.kernel.dim

    @property
    def cdim(self) -> int:
        return self.cokernel.dim

    @property
    def rank(self) -> int:
        return self.image.dim

    def apply(self, v):
        return self.matrix.apply(v)

    def kernel_line(self) -> LineSpace:
        return LineSpace.of(self.kernel)

    def cokernel_line(self) -> LineSpace:
        return LineSpace.of(self.cokernel, dual=True)

    def is_invertible(self) -> bool:
        return self.kdim == 0 and self.cdim == 0

    def is_surjective(self) -> bool:
        return self.cdim == 0

    def __matmul__(self, other: "FinOperator") -> "FinOperator":
        return FinOperator(self.matrix @ other.matrix)


@dataclass(frozen=True)
class DetLineElement:
    operator: FinOperator
    kernel_part: LineElement
    cokernel_part: LineElement

    def __post_init__(self):
        D = self.operator
        if self.kernel_part.space != D.kernel_line() or self.cokernel_part.space != D.cokernel_line():
            raise ValueError("element parts do not match the operator")

    @property
    def degree(self) -> int:
        return self.operator.index % 2

    @property
    def scalar(self) -> Fraction:
        return self.kernel_part.scalar * self.cokernel_part.scalar

    def coordinate(self) -> Fraction:
        return self.kernel_part.coordinate() * self.cokernel_part.coordinate()

    def key(self):
        return ("det", self.operator.matrix)

    def scaled(self, c) -> "DetLineElement":
        return DetLineElement(self.operator, self.kernel_part.scaled(c), self.cokernel_part)

    def is_zero(self) -> bool:
        return self.coordinate() == 0


def det_line(D: FinOperator, kernel_frame: Sequence, cokernel_frame: Sequence, scalar=ONE,
             check: bool = True) -> DetLineElement:
    """scalar * (∧ kernel_frame) ⊗ (∧ cokernel_frame)*."""
    k = LineElement(D.kernel_line(), tuple(kernel_frame), Q(scalar), check=check)
    c = LineElement(D.cokernel_line(), tuple(cokernel_frame), ONE, check=check)
    return DetLineElement(D, k, c)


def generator(D: FinOperator) -> DetLineElement:
    return det_line(D, D.kernel.basis, D.cokernel.basis_vectors(), ONE, check=False)


def det_compare(a: DetLineElement, b: DetLineElement) -> Fraction:
    from .multilinear import line_compare
    return line_compare(a, b)


def iso_induced(phi: RationalMatrix, psi: RationalMatrix, D: FinOperator,
                sigma: DetLineElement) -> DetLineElement:
    """λ(D) → λ(ψ D φ⁻¹): push the kernel frame by φ and the cokernel frame by ψ."""
    if sigma.operator != D:
        raise ValueError("element does not belong to λ(D)")
    if not phi.is_invertible() or not psi.is_invertible():
        raise ValueError("iso_induced needs invertible φ and ψ")
    D2 = FinOperator(psi @ D.matrix @ phi.inverse())
    return det_line(D2, [phi.apply(x) for x in sigma.kernel_part.frame],
                    [psi.apply(y) for y in sigma.cokernel_part.frame], sigma.scalar)


def dual_operator(D: FinOperator) -> FinOperator:
    return FinOperator(D.matrix.T)


def duality_maps(D: FinOperator):
    """Matrices of ker D → (coker D*)* and (coker D)* → ker D* on canonical bases.

    Bases: the canonical kernel bases, and the duals of the canonical cokernel
    bases. Both maps are isomorphisms.
    """
    Ds = dual_operator(D)
    k = D.kernel.basis
    g = Ds.cokernel.basis_vectors()
    first = RationalMatrix.from_rows([[dot(gi, kj) for kj in k] for gi in g], len(k))
    # f_j^* pulled back to the codomain is the j-th coordinate functional of coker D
    cq = D.cokernel
    m = D.codomain_dim
    coord_rows = [cq.coords(tuple(ONE if a == b else 0 for a in range(m))) for b in range(m)]
    phis = [tuple(coord_rows[b][j] for b in range(m)) for j in range(cq.dim)]
    second = RationalMatrix.from_columns([Ds.kernel.coords(p) for p in phis], Ds.kdim)
    return first, second


def dualize_sign_exponent(D: FinOperator) -> int:
    return D.index * D.cdim + mutation.extra("dualization-sign")


def dualize_det(D: FinOperator, sigma: DetLineElement) -> DetLineElement:
    """λ(D) → λ(D*): x ⊗ α ↦ (−1)^{ind·dim coker} λ(𝒟)(𝒫α) ⊗ 𝒫(λ(𝒟)x).

    ker D* is the annihilator of Im D, which is (coker D)*, and coker D* is
    the quotient by Im Dᵀ, whose dual is ker D; under the dot product the
    duality maps are the identity on frames.
    """
    if sigma.operator != D:
        raise ValueError("element does not belong to λ(D)")
    Ds = dual_operator(D)
    a = pairing_P_inv(sigma.cokernel_part)           # in λ((coker D)*) = λ(ker D*)
    x = sigma.kernel_part                            # in λ(ker D) = λ((coker D*)*)
    b = pairing_P(x, Ds.cokernel_line().dualized())  # in λ*(coker D*)
    s = sign(dualize_sign_exponent(D))
    k = LineElement(Ds.kernel_line(), a.frame, a.scalar * s, check=False)
    return DetLineElement(Ds, k, b)


def add_identity(sigma: DetLineElement, z_dim: int, side: str = "right") -> DetLineElement:
    """λ(D) → λ(D ⊕ id_Z) (side 'right') or λ(id_Z ⊕ D) (side 'left'), padding with zeros."""
    from .exactq import block_diag
    D = sigma.operator
    I = RationalMatrix.identity(z_dim)
    z = (Fraction(0),) * z_dim
    if side == "right":
        big = FinOperator(block_diag(D.matrix, I))
        pad = lambda v: tuple(v) + z
    elif side == "left":
        big = FinOperator(block_diag(I, D.matrix))
        pad = lambda v: z + tuple(v)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return det_line(big, [pad(x) for x in sigma.kernel_part.frame],
                    [pad(y) for y in sigma.cokernel_part.frame], sigma.scalar)


def drop_identity(sigma: DetLineElement, inner: FinOperator, side: str = "right") -> DetLineElement:
    """Inverse of add_identity: keep the D-coordinates of both frames."""
    n, m = inner.domain_dim, inner.codomain_dim
    big = sigma.operator
    z_dim = big.domain_dim - n
    expect = add_identity(generator(inner), z_dim, side).operator
    if big != expect:
        raise ValueError("element is not in λ of the padded operator")
    if side == "right":
        kx = [v[:n] for v in sigma.kernel_part.frame]
        cy = [v[:m] for v in sigma.cokernel_part.frame]
    else:
        kx = [v[z_dim:] for v in sigma.kernel_part.frame]
        cy = [v[z_dim:] for v in sigma.cokernel_part.frame]
    return det_line(inner, kx, cy, sigma.scalar)
