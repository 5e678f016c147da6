"""Alternative sign and normalization conventions.

A convention system is a function A(i, c) > 0 on pairs with c ≥ 0 and
c ≥ −i, equal to 1 whenever c = 0. Given A, every Ψ is rescaled by
A(D') A(D'') / A(D), where A(D) = A(ind D, dim coker D). The duality and
λ(δ) isomorphisms are rescaled to match. Conversely, A(i, c) can be read off
from a single triple with ind D' = i and dim coker D' = c.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .exactq import (
    ONE, Q, RationalMatrix, det, dot, hstack, rational_from_str, rational_to_str, solve,
)
from .fredholm import (
    DetLineElement, FinOperator, det_line, dual_operator, dualize_det, generator,
)
from .multilinear import line_compare, sign
from .triples import ExactTriple, ctilde, iso_delta, oplus, psi


@dataclass(frozen=True)
class ConventionSystem:
    """A(i, c) stored as a finite table; pairs outside the table take `default`."""

    table: tuple = ()
    default: Fraction = ONE
    _lookup: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        d = {}
        for (i, c), v in self.table:
            v = Q(v)
            if c < 0 or c < -i:
                raise ValueError(f"A({i},{c}) is outside the domain c ≥ 0, c ≥ −i")
            if v <= 0:
                raise ValueError(f"A({i},{c}) must be positive")
            if c == 0 and v != 1:
                raise ValueError(f"A({i},0) must be 1")
            d[(i, c)] = v
        default = Q(self.default)
        if default <= 0:
            raise ValueError("default must be positive")
        object.__setattr__(self, "default", default)
        object.__setattr__(self, "table", tuple(sorted(d.items())))
        object.__setattr__(self, "_lookup", d)

    @staticmethod
    def from_dict(values: dict, default=ONE) -> "ConventionSystem":
        return ConventionSystem(tuple(values.items()), default)

    def A(self, i: int, c: int) -> Fraction:
        if c < 0 or c < -i:
            raise ValueError(f"A({i},{c}) is outside the domain")
        if c == 0:
            return ONE
        return self._lookup.get((i, c), self.default)

    def weight(self, D: FinOperator) -> Fraction:
        return self.A(D.index, D.cdim)

    def is_baseline(self) -> bool:
        return self.default == 1 and all(v == 1 for _, v in self.table)

    def to_json(self) -> dict:
        return {"A": [{"i": i, "c": c, "value": rational_to_str(v)} for (i, c), v in self.table],
                "default": rational_to_str(self.default)}

    @staticmethod
    def from_json(data) -> "ConventionSystem":
        if isinstance(data, str):
            data = json.loads(data)
        vals = {(int(e["i"]), int(e["c"])): rational_from_str(str(e["value"])) for e in data.get("A", [])}
        return ConventionSystem.from_dict(vals, rational_from_str(str(data.get("default", "1"))))


BASELINE = ConventionSystem()


def random_system(rng: random.Random, window: int = 6, multiplicative: bool = False) -> ConventionSystem:
    """Random positive A on |i| ≤ window, 1 ≤ c ≤ window.

    With `multiplicative` the diagonal satisfies A(−k, k) = A(−1, 1)^k for
    every k in the window. Otherwise A(−2, 2) is forced off that relation.
    """
    def val():
        return Fraction(rng.randint(1, 6), rng.randint(1, 6))
    vals = {}
    for i in range(-window, window + 1):
        for c in range(max(1, -i), window + 1):
            vals[(i, c)] = val()
    a = vals[(-1, 1)]
    if multiplicative:
        for k in range(1, window + 1):
            vals[(-k, k)] = a ** k
    elif vals[(-2, 2)] == a * a:
        vals[(-2, 2)] = a * a + 1
    return ConventionSystem.from_dict(vals)


# ---------------------------------------------------------------- rescaled maps


def psi_system(conv: ConventionSystem, t: ExactTriple, s1: DetLineElement,
               s2: DetLineElement, **kw) -> DetLineElement:
    f = conv.weight(t.Dp) * conv.weight(t.Dpp) / conv.weight(t.D)
    return psi(t, s1, s2, **kw).scaled(f)


def oplus_system(conv: ConventionSystem, s1: DetLineElement, s2: DetLineElement) -> DetLineElement:
    out = oplus(s1, s2)
    return out.scaled(conv.weight(s1.operator) * conv.weight(s2.operator) / conv.weight(out.operator))


def ctilde_system(conv: ConventionSystem, s1: DetLineElement, s2: DetLineElement) -> DetLineElement:
    # D2D1 ⊕ id has the index and cokernel dimension of D2D1
    out = ctilde(s1, s2)
    return out.scaled(conv.weight(s1.operator) * conv.weight(s2.operator) / conv.weight(out.operator))


def dual_factor(conv: ConventionSystem, D: FinOperator) -> Fraction:
    i = D.index
    return conv.A(-1, 1) ** i * conv.A(i, D.cdim) / conv.A(-i, D.kdim)


def dual_system(conv: ConventionSystem, D: FinOperator, sigma: DetLineElement) -> DetLineElement:
    return dualize_det(D, sigma).scaled(dual_factor(conv, D))


def iso_delta_system(conv: ConventionSystem, delta: FinOperator,
                     sigma: DetLineElement) -> DetLineElement:
    i = delta.domain_dim - delta.codomain_dim
    f = conv.A(i, delta.cdim) / conv.A(i, delta.codomain_dim)
    return iso_delta(delta, sigma).scaled(f)


def is_norm_iii_star(conv: ConventionSystem, K: int) -> bool:
    """A(−k, k) = A(−1, 1)^k for 1 ≤ k ≤ K."""
    a = conv.A(-1, 1)
    return all(conv.A(-k, k) == a ** k for k in range(1, K + 1))


def surjective_dual(D: FinOperator, sigma: DetLineElement) -> DetLineElement:
    """For onto D: x ⊗ 1* ↦ 1 ⊗ 𝒫(λ(𝒟_D) x), with 𝒫 the signed pairing.

    Written out directly: the result takes the value
    (−1)^{k(k−1)/2} det(x_i · g_j) on the canonical cokernel frame g of D*.
    """
    if not D.is_surjective():
        raise ValueError("D is not surjective")
    Ds = dual_operator(D)
    x = sigma.kernel_part.frame
    g = Ds.cokernel.basis_vectors()
    k = len(x)
    val = sigma.scalar * sign(comb(k, 2)) * det([[dot(xi, gj) for gj in g] for xi in x])
    return det_line(Ds, [], g, val, check=False)


def kafc_triple(i: int, c: int) -> ExactTriple:
    """Q^{i+c} → Q^{i+2c} → Q^c over Q^c → Q^c → 0, with D the last-c projection."""
    if c < 0 or i + c < 0:
        raise ValueError("need c ≥ 0 and i + c ≥ 0")
    n = i + c
    I, Z = RationalMatrix.identity, RationalMatrix.zeros
    return ExactTriple(FinOperator.zero(n, c), FinOperator(hstack(Z(c, n), I(c))),
                       FinOperator.zero(c, 0),
                       RationalMatrix.from_rows(list(I(n).rows) + list(Z(c, n).rows), n),
                       hstack(Z(c, n), I(c)), I(c), Z(0, c))


def kafc_value(conv: ConventionSystem, i: int, c: int) -> Fraction:
    """r with Ψ(Ω_{i+c} ⊗ Ω_c* ⊗ Ω_c ⊗ 1) = r · Ω_{i+c} ⊗ 1."""
    t = kafc_triple(i, c)
    out = psi_system(conv, t, generator(t.Dp), generator(t.Dpp))
    ref = det_line(t.D, t.iX.columns(), [], check=False)
    return line_compare(out, ref)


def recover_A(conv: ConventionSystem, i: int, c: int) -> Fraction:
    return kafc_value(conv, i, c) * sign(c)


# ---------------------------------------------------------------- other authors' signs


def ms_overlap_exponent(N: int, N_prime: int, cdim: int) -> int:
    return ((N_prime - N) * cdim) % 2


def salamon_exponent(N: int, ind: int, cdim: int) -> int:
    return (N * ind + cdim) % 2


def salamon_delta_exponent(dim_W: int, ind: int, cdim: int) -> int:
    """(dim W − dim coker δ) ind δ + dim ker δ · dim coker δ, reduced to dim W · ind δ + dim coker δ."""
    return (dim_W * ind + cdim) % 2


def km_reversal_exponent(delta: FinOperator) -> int:
    return delta.rank % 2


def quillen_cosection(D: FinOperator, sigma: DetLineElement) -> Fraction:
    """c when D is invertible and σ = c · 1 ⊗ 1*, and 0 otherwise."""
    if sigma.operator != D:
        raise ValueError("element does not belong to λ(D)")
    if not D.is_invertible():
        return Fraction(0)
    return sigma.coordinate()


def stabilized_delta(D: FinOperator, Theta: RationalMatrix):
    """δ_Θ: ker D_Θ → Q^N in the canonical basis of ker D_Θ, for surjective D_Θ."""
    n, N = D.domain_dim, Theta.ncols
    DT = FinOperator(hstack(D.matrix, Theta))
    if not DT.is_surjective():
        raise ValueError("D_Θ is not surjective")
    K = DT.kernel
    cols = [b[n:] for b in K.basis]
    return DT, FinOperator(RationalMatrix.from_columns(cols, N))


def km_trivialization(D: FinOperator, Theta: RationalMatrix, sigma: DetLineElement,
                      signed: bool = True) -> DetLineElement:
    """λ(D) ≅ λ(δ_Θ) → λ(ker D_Θ) ⊗ λ*(Q^N).

    ker δ_Θ is ker D ⊕ 0 and Θ identifies coker δ_Θ with coker D. With
    signed=False the λ(δ) sign is dropped, as in the other convention.
    """
    n = D.domain_dim
    DT, delta = stabilized_delta(D, Theta)
    K = DT.kernel
    xs = [K.coords(tuple(x) + (0,) * Theta.ncols) for x in sigma.kernel_part.frame]
    us = []
    for y in sigma.cokernel_part.frame:
        z = solve(DT.matrix, y)
        us.append(z[n:])
    el = det_line(delta, xs, us, sigma.scalar)
    return iso_delta(delta, el, signed=signed)


def ms_overlap_ratio(D: FinOperator, Theta1: RationalMatrix, Theta2: RationalMatrix) -> Fraction:
    """(overlap with the sign dropped) / (baseline overlap) for two stabilizations."""
    g = generator(D)
    r1 = line_compare(km_trivialization(D, Theta1, g, False), km_trivialization(D, Theta1, g))
    r2 = line_compare(km_trivialization(D, Theta2, g, False), km_trivialization(D, Theta2, g))
    return r2 / r1


def translate(target: str, params: dict) -> int:
    """Sign relating the baseline to another convention."""
    p = {k: int(v) for k, v in params.items()}
    if target == "km":
        return sign(p["rank"])
    if target == "ms":
        return sign(ms_overlap_exponent(p["N"], p["Nprime"], p["cdim"]))
    if target == "salamon-seidel":
        return sign(salamon_exponent(p["N"], p["ind"], p["cdim"]))
    raise ValueError(f"unknown convention {target!r}")
