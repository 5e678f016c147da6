"""Exact triples of linear maps and the isomorphism λ(D') ⊗ λ(D'') → λ(D).

An exact triple is a commutative diagram

    0 → X' --iX--> X --jX--> X'' → 0
        |D'        |D        |D''
    0 → Y' --iY--> Y --jY--> Y'' → 0

with exact rows. Its snake sequence is

    0 → ker D' → ker D → ker D'' --δ--> coker D' → coker D → coker D'' → 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .. import mutation
from ..exactq import (
    ONE, QuotientSpace, RationalMatrix, Subspace, combine, left_inverse, rank_of,
    right_inverse, solve_within, vadd, vec,
)
from ..fredholm import DetLineElement, FinOperator, det_compare, det_line
from ..multilinear import sign


@dataclass(frozen=True)
class ExactTriple:
    Dp: FinOperator
    D: FinOperator
    Dpp: FinOperator
    iX: RationalMatrix
    jX: RationalMatrix
    iY: RationalMatrix
    jY: RationalMatrix
    check: bool = field(default=True, compare=False, repr=False)
    _snake: list = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        if self.check:
            bad = validate_triple(self)
            if bad is not None:
                raise ValueError(f"not an exact triple: {bad}")

    @property
    def maps(self):
        return (self.iX, self.jX, self.iY, self.jY)

    def snake(self) -> "SnakeData":
        if not self._snake:
            self._snake.append(snake(self))
        return self._snake[0]


def _exact_row(i: RationalMatrix, j: RationalMatrix, label: str):
    if i.rank() != i.ncols:
        return f"i{label} is not injective"
    if j.rank() != j.nrows:
        return f"j{label} is not surjective"
    if not (j @ i).is_zero() or i.ncols + j.nrows != i.nrows:
        return f"{label} row is not exact at the middle"
    return None


def validate_triple(t: ExactTriple) -> str | None:
    """None when the diagram is an exact triple, else the name of the first failed condition."""
    xp, x, xpp = t.Dp.domain_dim, t.D.domain_dim, t.Dpp.domain_dim
    yp, y, ypp = t.Dp.codomain_dim, t.D.codomain_dim, t.Dpp.codomain_dim
    shapes = {"iX": (x, xp), "jX": (xpp, x), "iY": (y, yp), "jY": (ypp, y)}
    for name, shape in shapes.items():
        if getattr(t, name).shape != shape:
            return f"{name} has shape {getattr(t, name).shape}, expected {shape}"
    for lab, (i, j) in (("X", (t.iX, t.jX)), ("Y", (t.iY, t.jY))):
        bad = _exact_row(i, j, lab)
        if bad:
            return bad
    if t.D.matrix @ t.iX != t.iY @ t.Dp.matrix:
        return "D∘iX ≠ iY∘D'"
    if t.Dpp.matrix @ t.jX != t.jY @ t.D.matrix:
        return "D''∘jX ≠ jY∘D"
    return None


# ---------------------------------------------------------------- snake


@dataclass(frozen=True)
class SnakeData:
    """The six-term sequence in canonical coordinates, plus the zig-zag δ on vectors."""

    triple: ExactTriple
    jX_section: RationalMatrix
    iY_retraction: RationalMatrix
    a: RationalMatrix       # ker D'  → ker D
    b: RationalMatrix       # ker D   → ker D''
    delta: RationalMatrix   # ker D'' → coker D'
    c: RationalMatrix       # coker D' → coker D
    d: RationalMatrix       # coker D  → coker D''
    delta_image: Subspace   # Im D' + lifts of δ(ker D'') in Y'

    @property
    def delta_rank(self) -> int:
        return self.delta.rank()

    def delta_lift(self, v: Sequence) -> tuple:
        return zigzag(self.triple, v, self.jX_section, self.iY_retraction)

    def is_exact(self) -> bool:
        t = self.triple
        dims = [t.Dp.kdim, t.D.kdim, t.Dpp.kdim, t.Dp.cdim, t.D.cdim, t.Dpp.cdim]
        maps = [self.a, self.b, self.delta, self.c, self.d]
        ranks = [m.rank() for m in maps]
        # rank(in) + rank(out) = dim at each node, with zero maps at both ends
        r = [0] + ranks + [0]
        if any(r[k] + r[k + 1] != dims[k] for k in range(6)):
            return False
        return all((maps[k + 1] @ maps[k]).is_zero() for k in range(4))


def zigzag(t: ExactTriple, v: Sequence, section: RationalMatrix, retraction: RationalMatrix,
           shift: Sequence | None = None) -> tuple:
    """Lift v ∈ ker D'' through jX, apply D, pull back through iY.

    `shift` adds an element of X to the lift; the result changes only by Im D'.
    """
    x = section.apply(v)
    if shift is not None:
        x = vadd(x, shift)
    return retraction.apply(t.D.apply(x))


def _coords_matrix(vectors, coords, dim_out: int) -> RationalMatrix:
    return RationalMatrix.from_columns([coords(v) for v in vectors], dim_out)


def snake(t: ExactTriple) -> SnakeData:
    sec = right_inverse(t.jX)
    ret = left_inverse(t.iY)
    Kp, K, Kpp = t.Dp.kernel, t.D.kernel, t.Dpp.kernel
    Cp, C, Cpp = t.Dp.cokernel, t.D.cokernel, t.Dpp.cokernel
    a = _coords_matrix([t.iX.apply(v) for v in Kp.basis], K.coords, K.dim)
    b = _coords_matrix([t.jX.apply(v) for v in K.basis], Kpp.coords, Kpp.dim)
    lifts = [zigzag(t, v, sec, ret) for v in Kpp.basis]
    delta = _coords_matrix(lifts, Cp.coords, Cp.dim)
    c = _coords_matrix([t.iY.apply(v) for v in Cp.basis_vectors()], C.coords, C.dim)
    d = _coords_matrix([t.jY.apply(v) for v in C.basis_vectors()], Cpp.coords, Cpp.dim)
    dimg = Subspace.span(t.Dp.codomain_dim, list(t.Dp.image.basis) + lifts)
    return SnakeData(t, sec, ret, a, b, delta, c, d, dimg)


# ---------------------------------------------------------------- Ψ


@dataclass(frozen=True)
class AuxFrames:
    """Frames for ker D', ker D / iX ker D', ker D'' / jX ker D, coker D' / Im δ, coker D / iY coker D'.

    Each frame is a tuple of representatives in X', X, X'', Y', Y.
    """

    x: tuple
    u: tuple
    v: tuple
    w: tuple
    y: tuple


def _sub_quotients(t: ExactTriple):
    sn = t.snake()
    K, Kpp = t.D.kernel, t.Dpp.kernel
    iXK = t.Dp.kernel.image(t.iX)
    jXK = K.image(t.jX)
    qu = QuotientSpace(K.ambient_dim, iXK, K)
    qv = QuotientSpace(Kpp.ambient_dim, jXK, Kpp)
    qw = QuotientSpace(t.Dp.codomain_dim, sn.delta_image)
    iYY = Subspace.span(t.D.codomain_dim, t.iY.columns())
    qy = QuotientSpace(t.D.codomain_dim, t.D.image + iYY)
    return qu, qv, qw, qy


def canonical_aux(t: ExactTriple) -> AuxFrames:
    qu, qv, qw, qy = _sub_quotients(t)
    return AuxFrames(t.Dp.kernel.basis, qu.basis_vectors(), qv.basis_vectors(),
                     qw.basis_vectors(), qy.basis_vectors())


def _random_invertible(rng: random.Random, n: int) -> RationalMatrix:
    while True:
        m = RationalMatrix.from_rows(
            [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)], n)
        if m.is_invertible():
            return m


def _rebase(rng, frame, n, noise_basis):
    """Random change of basis of a frame plus random noise from a subspace."""
    k = len(frame)
    g = _random_invertible(rng, k)
    out = []
    for row in g.rows:
        v = combine(row, frame, n)
        if noise_basis:
            cs = [Fraction(rng.randint(-3, 3)) for _ in noise_basis]
            v = vadd(v, combine(cs, noise_basis, n))
        out.append(v)
    return tuple(out)


def random_aux(t: ExactTriple, rng: random.Random) -> AuxFrames:
    """Another valid choice of auxiliary frames, for checking independence of choices."""
    can = canonical_aux(t)
    sn = t.snake()
    iXK = t.Dp.kernel.image(t.iX).basis
    jXK = t.D.kernel.image(t.jX).basis
    ny = list(t.D.image.basis) + list(Subspace.span(t.D.codomain_dim, t.iY.columns()).basis)
    return AuxFrames(
        _rebase(rng, can.x, t.Dp.domain_dim, ()),
        _rebase(rng, can.u, t.D.domain_dim, iXK),
        _rebase(rng, can.v, t.Dpp.domain_dim, jXK),
        _rebase(rng, can.w, t.Dp.codomain_dim, sn.delta_image.basis),
        _rebase(rng, can.y, t.D.codomain_dim, ny),
    )


def psi_sign_exponent(t: ExactTriple) -> int:
    sn = t.snake()
    return (t.Dpp.index * t.Dp.cdim + t.D.cdim * sn.delta_rank
            + mutation.extra("triple-sign"))


def psi(t: ExactTriple, s1: DetLineElement, s2: DetLineElement, aux: AuxFrames | None = None,
        rng: random.Random | None = None) -> DetLineElement:
    """Ψ_t : λ(D') ⊗ λ(D'') → λ(D).

    With frames x, u, v, w, y as in AuxFrames,
        x ⊗ (δv ∧ w)* ⊗ (jX u ∧ v) ⊗ (jY y)*  ↦  (−1)^ε (iX x ∧ u) ⊗ (iY w ∧ y)*,
    where ε = ind D''·dim coker D' + dim coker D·rank δ. When `rng` is given the
    zig-zag lifts defining δv are also shifted at random.
    """
    if s1.operator != t.Dp or s2.operator != t.Dpp:
        raise ValueError("elements do not belong to λ(D') and λ(D'')")
    if aux is None:
        aux = canonical_aux(t)
    sn = t.snake()
    if rng is None:
        dv = [sn.delta_lift(v) for v in aux.v]
    else:
        shifts = [combine([Fraction(rng.randint(-2, 2)) for _ in t.iX.columns()], t.iX.columns(),
                          t.D.domain_dim) for _ in aux.v]
        dv = [zigzag(t, v, sn.jX_section, sn.iY_retraction, s) for v, s in zip(aux.v, shifts)]
    ref1 = det_line(t.Dp, aux.x, dv + list(aux.w), check=False)
    ref2 = det_line(t.Dpp, [t.jX.apply(u) for u in aux.u] + list(aux.v),
                    [t.jY.apply(y) for y in aux.y], check=False)
    c = det_compare(s1, ref1) * det_compare(s2, ref2) * sign(psi_sign_exponent(t))
    return det_line(t.D, [t.iX.apply(x) for x in aux.x] + list(aux.u),
                    [t.iY.apply(w) for w in aux.w] + list(aux.y), c, check=False)


# ---------------------------------------------------------------- degenerate ends


def iso_T_prime(t: ExactTriple, s1: DetLineElement, s2: DetLineElement) -> DetLineElement:
    """For invertible D': 1 ⊗ 1* ⊗ (jX x) ⊗ α'' ↦ x ⊗ (α'' ∘ jY)."""
    if not t.Dp.is_invertible():
        raise ValueError("D' is not invertible")
    if s1.operator != t.Dp or s2.operator != t.Dpp:
        raise ValueError("elements do not belong to λ(D') and λ(D'')")
    K = t.D.kernel
    xs = [solve_within(t.jX, K, v) for v in s2.kernel_part.frame]
    ys = [solve_within(t.jY, Subspace.whole(t.D.codomain_dim), f, t.Dpp.image)
          for f in s2.cokernel_part.frame]
    if any(v is None for v in xs + ys):
        raise ValueError("frame does not lift")
    return det_line(t.D, xs, ys, s1.coordinate() * s2.scalar)


def iso_T_dprime(t: ExactTriple, s1: DetLineElement, s2: DetLineElement) -> DetLineElement:
    """For invertible D'': x' ⊗ (α ∘ iY) ⊗ 1 ⊗ 1* ↦ iX x' ⊗ α."""
    if not t.Dpp.is_invertible():
        raise ValueError("D'' is not invertible")
    if s1.operator != t.Dp or s2.operator != t.Dpp:
        raise ValueError("elements do not belong to λ(D') and λ(D'')")
    return det_line(t.D, [t.iX.apply(x) for x in s1.kernel_part.frame],
                    [t.iY.apply(f) for f in s1.cokernel_part.frame],
                    s1.scalar * s2.coordinate())
