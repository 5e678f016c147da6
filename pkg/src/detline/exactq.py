"""Exact linear algebra over the rationals.

Vectors are tuples of Fractions. Matrices are immutable, row-major, and may
have zero rows or columns. Every subspace is stored by its reduced row
echelon basis, so two subspaces are equal exactly when their bases are.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return rational_from_str(x)
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(Q(x) for x in xs)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def dot(a: Sequence, b: Sequence) -> Fraction:
    s = ZERO
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def is_zero_vec(a: Sequence) -> bool:
    return not any(a)


def combine(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


# ---------------------------------------------------------------- matrices


@dataclass(frozen=True)
class RationalMatrix:
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("matrix shape does not match its rows")

    @staticmethod
    def from_rows(rows: Sequence[Sequence], ncols: int | None = None) -> "RationalMatrix":
        rows = [vec(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        return RationalMatrix(len(rows), ncols, tuple(rows))

    @staticmethod
    def from_columns(cols: Sequence[Sequence], nrows: int) -> "RationalMatrix":
        cols = [vec(c) for c in cols]
        return RationalMatrix(nrows, len(cols),
                              tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    @staticmethod
    def zeros(m: int, n: int) -> "RationalMatrix":
        return RationalMatrix(m, n, tuple((ZERO,) * n for _ in range(m)))

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(n, n, tuple(unit_vec(n, i) for i in range(n)))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(self.ncols, self.nrows,
                              tuple(self.column(j) for j in range(self.ncols)))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} applied to {self.shape} matrix")
        return tuple(dot(r, v) for r in self.rows)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return RationalMatrix(self.nrows, other.ncols,
                              tuple(tuple(dot(r, c) for c in cols) for r in self.rows))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix(self.nrows, self.ncols,
                              tuple(vadd(a, b) for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix(self.nrows, self.ncols,
                              tuple(vsub(a, b) for a, b in zip(self.rows, other.rows)))

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def scale(self, c) -> "RationalMatrix":
        c = Q(c)
        return RationalMatrix(self.nrows, self.ncols, tuple(vscale(c, r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(not any(r) for r in self.rows)

    def rank(self) -> int:
        return len(_rref_rows(self.rows, self.ncols)[1])

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("det of a non-square matrix")
        return det(self.rows)

    def inverse(self) -> "RationalMatrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(self.rows)]
        red, piv = _rref_rows(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ValueError("matrix is singular")
        return RationalMatrix(n, n, tuple(tuple(r[n:]) for r in red[:n]))

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def images(self, vectors: Iterable[Sequence]) -> list:
        return [self.apply(v) for v in vectors]


def hstack(*ms: RationalMatrix) -> RationalMatrix:
    m = ms[0].nrows
    if any(x.nrows != m for x in ms):
        raise ValueError("hstack row mismatch")
    rows = tuple(tuple(e for x in ms for e in x.rows[i]) for i in range(m))
    return RationalMatrix(m, sum(x.ncols for x in ms), rows)


def vstack(*ms: RationalMatrix) -> RationalMatrix:
    n = ms[0].ncols
    if any(x.ncols != n for x in ms):
        raise ValueError("vstack column mismatch")
    return RationalMatrix(sum(x.nrows for x in ms), n, tuple(r for x in ms for r in x.rows))


def block_diag(*ms: RationalMatrix) -> RationalMatrix:
    n = sum(x.ncols for x in ms)
    rows = []
    off = 0
    for x in ms:
        for r in x.rows:
            rows.append((ZERO,) * off + tuple(r) + (ZERO,) * (n - off - x.ncols))
        off += x.ncols
    return RationalMatrix(len(rows), n, tuple(rows))


def blocks(grid: Sequence[Sequence[RationalMatrix]]) -> RationalMatrix:
    return vstack(*[hstack(*row) for row in grid])


# ---------------------------------------------------------------- elimination


def _rref_rows(rows: Iterable[Sequence], ncols: int):
    """Nonzero rows of the reduced row echelon form, and their pivot columns."""
    work = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        p = next((k for k in range(r, len(work)) if work[k][c]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        row = work[r]
        inv = 1 / row[c]
        if inv != 1:
            row = [x * inv for x in row]
            work[r] = row
        nz = [k for k in range(c, ncols) if row[k]]
        for k in range(len(work)):
            if k != r:
                f = work[k][c]
                if f:
                    other = work[k]
                    for j in nz:
                        other[j] -= f * row[j]
        pivots.append(c)
        r += 1
    return [tuple(x) for x in work[:r]], pivots


def rref(m: RationalMatrix):
    """Reduced row echelon form (same shape, zero rows last) and pivot columns."""
    red, piv = _rref_rows(m.rows, m.ncols)
    red = red + [zero_vec(m.ncols)] * (m.nrows - len(red))
    return RationalMatrix(m.nrows, m.ncols, tuple(red)), piv


def det(rows: Sequence[Sequence]) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    d = ONE
    for c in range(n):
        p = next((k for k in range(c, n) if a[k][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d *= piv
        for k in range(c + 1, n):
            f = a[k][c]
            if f:
                f = f / piv
                rk, rc = a[k], a[c]
                for j in range(c + 1, n):
                    if rc[j]:
                        rk[j] -= f * rc[j]
    return d


def rank_of(vectors: Sequence[Sequence], n: int) -> int:
    return len(_rref_rows(vectors, n)[1])


def solve(m: RationalMatrix, b: Sequence):
    """Some x with m x = b, or None when the system is inconsistent."""
    n = m.ncols
    aug = [tuple(r) + (bb,) for r, bb in zip(m.rows, vec(b))]
    red, piv = _rref_rows(aug, n + 1)
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for r, p in zip(red, piv):
        x[p] = r[n]
    return tuple(x)


def right_inverse(m: RationalMatrix) -> RationalMatrix:
    """s with m @ s = id; m must be surjective."""
    cols = []
    for i in range(m.nrows):
        x = solve(m, unit_vec(m.nrows, i))
        if x is None:
            raise ValueError("matrix is not surjective")
        cols.append(x)
    return RationalMatrix.from_columns(cols, m.ncols)


def left_inverse(m: RationalMatrix) -> RationalMatrix:
    """l with l @ m = id; m must be injective."""
    return right_inverse(m.T).T


# ---------------------------------------------------------------- subspaces


def _leading(v: Sequence) -> int:
    return next(i for i, x in enumerate(v) if x)


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim held by its reduced row echelon basis."""

    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = field(default=(), compare=False, repr=False)

    @staticmethod
    def span(n: int, vectors: Iterable[Sequence]) -> "Subspace":
        vs = [vec(v) for v in vectors]
        if any(len(v) != n for v in vs):
            raise ValueError("vector length does not match ambient dimension")
        red, piv = _rref_rows(vs, n)
        return Subspace(n, tuple(red), tuple(piv))

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, (), ())

    @staticmethod
    def whole(n: int) -> "Subspace":
        return Subspace(n, tuple(unit_vec(n, i) for i in range(n)), tuple(range(n)))

    def __post_init__(self):
        if not self.pivots and self.basis:
            object.__setattr__(self, "pivots", tuple(_leading(b) for b in self.basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_whole(self) -> bool:
        return self.dim == self.ambient_dim

    def reduce(self, v: Sequence) -> Vector:
        """Subtract the element of the subspace that zeroes every pivot coordinate."""
        out = list(v)
        for b, p in zip(self.basis, self.pivots):
            c = out[p]
            if c:
                for k, x in enumerate(b):
                    if x:
                        out[k] -= c * x
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_all(self, vs: Iterable[Sequence]) -> bool:
        return all(self.contains(v) for v in vs)

    def coords(self, v: Sequence) -> Vector:
        return tuple(v[p] for p in self.pivots)

    def from_coords(self, c: Sequence) -> Vector:
        return combine(c, self.basis, self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def contains_subspace(self, other: "Subspace") -> bool:
        return self.contains_all(other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        n = self.ambient_dim
        a, b = self.dim, other.dim
        if a == 0 or b == 0:
            return Subspace.zero(n)
        # coefficient pairs (s, t) with sum s_i u_i = sum t_j w_j
        m = RationalMatrix.from_columns(list(self.basis) + [vscale(-1, w) for w in other.basis], n)
        ker = kernel_basis(m)
        return Subspace.span(n, [combine(k[:a], self.basis, n) for k in ker.basis])

    def image(self, m: RationalMatrix) -> "Subspace":
        return Subspace.span(m.nrows, [m.apply(b) for b in self.basis])

    def annihilator(self) -> "Subspace":
        """Functionals (as vectors, paired by the dot product) vanishing here."""
        return kernel_basis(RationalMatrix.from_rows(self.basis, self.ambient_dim))

    def as_matrix(self) -> RationalMatrix:
        return RationalMatrix(self.dim, self.ambient_dim, self.basis)


def kernel_basis(m: RationalMatrix) -> Subspace:
    n = m.ncols
    red, piv = _rref_rows(m.rows, n)
    free = [j for j in range(n) if j not in set(piv)]
    vs = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for r, p in zip(red, piv):
            x[p] = -r[f]
        vs.append(x)
    return Subspace.span(n, vs)


def image_basis(m: RationalMatrix) -> Subspace:
    return Subspace.span(m.nrows, m.columns())


# ---------------------------------------------------------------- quotients


@dataclass(frozen=True)
class QuotientSpace:
    """numerator / denominator inside Q^ambient_dim.

    The numerator defaults to the whole ambient space. A proper numerator
    gives a subquotient, such as a kernel modulo the image of a smaller
    kernel.
    """

    ambient_dim: int
    denominator: Subspace
    numerator: Subspace | None = None
    complement: tuple = field(default=(), compare=False, repr=False)
    complement_pivots: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        n = self.ambient_dim
        if self.numerator is not None and self.numerator.is_whole():
            object.__setattr__(self, "numerator", None)
        num = self.numerator
        if self.denominator.ambient_dim != n or (num is not None and num.ambient_dim != n):
            raise ValueError("ambient dimension mismatch")
        if num is not None and not num.contains_subspace(self.denominator):
            raise ValueError("denominator is not contained in numerator")
        if num is None:
            dp = set(self.denominator.pivots)
            comp = tuple(unit_vec(n, i) for i in range(n) if i not in dp)
            piv = tuple(i for i in range(n) if i not in dp)
        else:
            red, piv = _rref_rows([self.denominator.reduce(b) for b in num.basis], n)
            comp, piv = tuple(red), tuple(piv)
        object.__setattr__(self, "complement", comp)
        object.__setattr__(self, "complement_pivots", piv)

    @property
    def dim(self) -> int:
        return len(self.complement)

    @property
    def top(self) -> Subspace:
        return self.numerator if self.numerator is not None else Subspace.whole(self.ambient_dim)

    def contains(self, v: Sequence) -> bool:
        return self.numerator is None or self.numerator.contains(v)

    def coords(self, v: Sequence) -> Vector:
        r = self.denominator.reduce(v)
        return tuple(r[p] for p in self.complement_pivots)

    def basis_vectors(self) -> tuple:
        return self.complement


def quotient_of(a: Subspace, b: Subspace) -> QuotientSpace:
    return QuotientSpace(a.ambient_dim, b, a)


def project_to_complement(q: QuotientSpace, v: Sequence) -> Vector:
    """The representative of v + denominator with zeros at the denominator's pivots."""
    return q.denominator.reduce(v)


def lift(q: QuotientSpace, coords: Sequence) -> Vector:
    """Ambient vector representing the class with the given quotient coordinates."""
    if len(coords) != q.dim:
        raise ValueError("wrong number of quotient coordinates")
    return combine(vec(coords), q.complement, q.ambient_dim)


def equal_mod(q: QuotientSpace, v: Sequence, w: Sequence) -> bool:
    return q.denominator.contains(vsub(v, w))


# ---------------------------------------------------------------- JSON


def rational_to_str(x) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_from_str(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        p, q = int(p), int(q)
        if q == 0:
            raise ValueError("zero denominator")
        return Fraction(p, q)
    return Fraction(int(s))


def matrix_to_json(m: RationalMatrix) -> list:
    return [[rational_to_str(x) for x in r] for r in m.rows]


def matrix_from_json(data: list, nrows: int | None = None, ncols: int | None = None) -> RationalMatrix:
    rows = [tuple(rational_from_str(x) if isinstance(x, str) else Q(x) for x in r) for r in data]
    if nrows is not None and len(rows) != nrows:
        raise ValueError("row count mismatch")
    if ncols is None:
        if not rows:
            raise ValueError("cannot infer column count of an empty matrix")
        ncols = len(rows[0])
    if nrows is None:
        nrows = len(rows)
    if nrows == 0:
        return RationalMatrix.zeros(0, ncols)
    return RationalMatrix(nrows, ncols, tuple(rows))


def vectors_to_json(vs: Iterable[Sequence]) -> list:
    return [[rational_to_str(x) for x in v] for v in vs]


def vectors_from_json(data: list) -> tuple:
    return tuple(tuple(rational_from_str(x) if isinstance(x, str) else Q(x) for x in v) for v in data)


def solve_within(m: RationalMatrix, within: Subspace, b: Sequence, modulo: Subspace | None = None):
    """Some z in `within` with m z = b (modulo `modulo` in the target), or None."""
    cols = [m.apply(w) for w in within.basis]
    extra = list(modulo.basis) if modulo is not None else []
    a = RationalMatrix.from_columns(cols + [vscale(-1, e) for e in extra], m.nrows)
    c = solve(a, b)
    if c is None:
        return None
    return combine(c[:len(cols)], within.basis, within.ambient_dim)
