"""Top exterior powers of finite-dimensional subquotients of Q^n.

A line element is a scalar times the wedge of a frame, or, for a dual line,
a scalar times the functional that takes the value 1 on the wedge of the
frame. Each element has a single rational coordinate against the canonical
generator of its line, and comparisons go through that coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactq import (
    ONE, Q, QuotientSpace, RationalMatrix, Subspace, det, dot, solve_within,
    unit_vec, vec,
)


def sign(e: int) -> int:
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class LineSpace:
    """λ(numerator / denominator), or its dual when `dual` is set."""

    numerator: Subspace
    denominator: Subspace
    dual: bool = False
    quotient: QuotientSpace = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.quotient is None:
            n = self.numerator.ambient_dim
            object.__setattr__(self, "quotient", QuotientSpace(n, self.denominator, self.numerator))

    @staticmethod
    def of(carrier, dual: bool = False) -> "LineSpace":
        if isinstance(carrier, Subspace):
            return LineSpace(carrier, Subspace.zero(carrier.ambient_dim), dual)
        if isinstance(carrier, QuotientSpace):
            return LineSpace(carrier.top, carrier.denominator, dual)
        raise TypeError(f"not a carrier: {carrier!r}")

    @staticmethod
    def coordinate_space(n: int, dual: bool = False) -> "LineSpace":
        return LineSpace(Subspace.whole(n), Subspace.zero(n), dual)

    @property
    def ambient_dim(self) -> int:
        return self.numerator.ambient_dim

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def degree(self) -> int:
        return self.dim % 2

    def dualized(self) -> "LineSpace":
        return LineSpace(self.numerator, self.denominator, not self.dual, self.quotient)

    def carrier_dual(self) -> "LineSpace":
        """λ of the dual vector space (U/W)* = Ann(W)/Ann(U), paired by the dot product."""
        return LineSpace(self.denominator.annihilator(), self.numerator.annihilator(), self.dual)

    def basis(self) -> tuple:
        return self.quotient.complement

    def frame_det(self, frame: Sequence[Sequence]) -> Fraction:
        if len(frame) != self.dim:
            raise ValueError(f"frame of {len(frame)} vectors for a space of dimension {self.dim}")
        return det([self.quotient.coords(v) for v in frame])

    def generator(self) -> "LineElement":
        return LineElement(self, self.basis(), ONE, check=False)


@dataclass(frozen=True)
class LineElement:
    space: LineSpace
    frame: tuple
    scalar: Fraction = ONE
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "frame", tuple(vec(v) for v in self.frame))
        object.__setattr__(self, "scalar", Q(self.scalar))
        if self.check:
            if len(self.frame) != self.space.dim:
                raise ValueError(
                    f"frame of {len(self.frame)} vectors for a space of dimension {self.space.dim}")
            if any(len(v) != self.space.ambient_dim for v in self.frame):
                raise ValueError("frame vector has the wrong length")
            if not self.space.numerator.contains_all(self.frame):
                raise ValueError("frame vector outside the carrier")
            if self.space.dual and self.space.frame_det(self.frame) == 0:
                raise ValueError("dual element built on a degenerate frame")

    @property
    def dual(self) -> bool:
        return self.space.dual

    @property
    def degree(self) -> int:
        return self.space.degree

    def coordinate(self) -> Fraction:
        """Coefficient against the canonical generator of the line."""
        d = self.space.frame_det(self.frame)
        if self.space.dual:
            return self.scalar / d
        return self.scalar * d

    def is_zero(self) -> bool:
        return self.coordinate() == 0

    def scaled(self, c) -> "LineElement":
        return LineElement(self.space, self.frame, self.scalar * Q(c), check=False)

    def key(self):
        return self.space


def line_compare(a, b) -> Fraction:
    """The rational r with a = r * b, for elements of the same line."""
    if a.key() != b.key():
        raise ValueError("elements live in different lines")
    cb = b.coordinate()
    if cb == 0:
        raise ValueError("cannot compare against the zero element")
    return a.coordinate() / cb


@dataclass(frozen=True)
class TensorElement:
    """Tensor product of graded line elements; the scalar rides on the first factor."""

    factors: tuple

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors) % 2

    def coordinate(self) -> Fraction:
        c = ONE
        for f in self.factors:
            c *= f.coordinate()
        return c

    def key(self):
        return tuple(f.key() for f in self.factors)

    def scaled(self, c) -> "TensorElement":
        if not self.factors:
            raise ValueError("empty tensor")
        return TensorElement((self.factors[0].scaled(c),) + self.factors[1:])


def swap_R(t: TensorElement, k: int = 0) -> TensorElement:
    """Exchange factors k and k+1 with the Koszul sign."""
    fs = list(t.factors)
    a, b = fs[k], fs[k + 1]
    fs[k], fs[k + 1] = b, a
    return TensorElement(tuple(fs)).scaled(sign(a.degree * b.degree))


def pairing_sign(n: int, convention: str = "signed") -> int:
    if convention == "signed":
        return sign(comb(n, 2))
    if convention == "det":
        return 1
    raise ValueError(f"unknown pairing convention {convention!r}")


def standard_pairings(alpha: LineElement, v: LineElement) -> tuple:
    """The two natural pairings λ(V*) ⊗ λ(V) → Q: det(αi(vj)) and its signed variant."""
    if alpha.dual or v.dual or alpha.space != v.space.carrier_dual():
        raise ValueError("standard_pairings needs elements of λ(V*) and λ(V)")
    d = alpha.scalar * v.scalar * _pair_det(alpha.frame, v.frame)
    return d, pairing_sign(v.space.dim, "signed") * d


def _pair_det(functionals: Sequence[Sequence], vectors: Sequence[Sequence]) -> Fraction:
    return det([[dot(a, v) for v in vectors] for a in functionals])


def pairing_P(a: LineElement, target: LineSpace, convention: str = "signed") -> LineElement:
    """λ(V*) → λ*(V): a1∧…∧an evaluates on v1∧…∧vn to ±det(ai(vj))."""
    if a.dual or target.dual or a.space != target.carrier_dual():
        raise ValueError("pairing_P needs an element of λ(V*) and the line λ(V)")
    g = target.basis()
    c = a.scalar * pairing_sign(target.dim, convention) * _pair_det(a.frame, g)
    return LineElement(target.dualized(), g, c, check=False)


def pairing_P_inv(b: LineElement, convention: str = "signed") -> LineElement:
    """Inverse of pairing_P: an element of λ*(V) goes to the element of λ(V*) pairing to it."""
    if not b.dual:
        raise ValueError("pairing_P_inv needs an element of a dual line")
    v = b.space.dualized()
    vstar = v.carrier_dual()
    phi = vstar.basis()
    d = _pair_det(phi, b.frame)
    if d == 0:
        raise ValueError("degenerate frame")
    s = b.scalar * pairing_sign(v.dim, convention) / d
    return LineElement(vstar, phi, s, check=False)


def volume_tensor(dims: Sequence[int]) -> TensorElement:
    """Ω_{n1} ⊗ … ⊗ Ω_{nk}, each the wedge of the standard basis."""
    return TensorElement(tuple(
        LineElement(LineSpace.coordinate_space(n), [unit_vec(n, i) for i in range(n)], check=False)
        for n in dims))


def wedge_ses(i: RationalMatrix, j: RationalMatrix, sub: LineElement, quo: LineElement,
              middle: LineSpace) -> LineElement:
    """For 0 → V' → V → V'' → 0 send v' ⊗ j(v) to i(v') ∧ v."""
    if sub.dual or quo.dual or middle.dual:
        raise ValueError("wedge_ses acts on non-dual lines")
    lifts = []
    for w in quo.frame:
        z = solve_within(j, middle.numerator, w, quo.space.denominator)
        if z is None:
            raise ValueError("quotient frame does not lift through j")
        lifts.append(z)
    frame = [i.apply(v) for v in sub.frame] + lifts
    return LineElement(middle, frame, sub.scalar * quo.scalar)
