"""Random operators, exact triples, squares and stabilizations.

Every generator takes a random.Random, so a (seed, suite, trial) triple
reproduces its data exactly. `max_dim` bounds the dimension of each middle
space of a triple, of each space of a composable chain, and of the domain,
codomain and stabilizing space of a stabilization. In a square each of the
four corner blocks has dimension at most max(1, (max_dim + 1) // 2).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..exactq import RationalMatrix, block_diag, blocks, combine, hstack, vadd, vstack
from ..fredholm import DetLineElement, FinOperator, det_line
from ..triples import EdgeMap, ExactSquare, ExactTriple, StabData, StabRow, stabilize

I = RationalMatrix.identity
Z = RationalMatrix.zeros


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_dim: int = 5
    entry_bound: int = 3
    trials: int = 200


def trial_rng(seed: int, name: str, k: int) -> random.Random:
    # string seeds are hashed with SHA-512, so this is stable across runs
    return random.Random(f"{seed}/{name}/{k}")


def rand_q(rng: random.Random, b: int) -> Fraction:
    p = rng.randint(-b, b)
    q = 1 if rng.random() < 0.75 or b < 2 else rng.randint(2, b)
    return Fraction(p, q)


def rand_nonzero_q(rng: random.Random, b: int) -> Fraction:
    while True:
        x = rand_q(rng, b)
        if x:
            return x


def rand_matrix(rng: random.Random, m: int, n: int, b: int) -> RationalMatrix:
    return RationalMatrix(m, n, tuple(tuple(rand_q(rng, b) for _ in range(n)) for _ in range(m)))


def rand_rank_matrix(rng: random.Random, m: int, n: int, r: int, b: int) -> RationalMatrix:
    """Product of random m×r and r×n matrices; rank r for almost every draw."""
    if r == 0 or m == 0 or n == 0:
        return Z(m, n)
    return rand_matrix(rng, m, r, b) @ rand_matrix(rng, r, n, b)


def rand_invertible(rng: random.Random, n: int, b: int = 2) -> RationalMatrix:
    while True:
        g = rand_matrix(rng, n, n, b)
        if g.is_invertible():
            return g


def gen_operator(rng: random.Random, cfg: GenConfig, n: int | None = None, m: int | None = None,
                 kind: str = "any") -> FinOperator:
    """kind: 'any', 'surjective', 'injective' or 'invertible'."""
    if kind == "invertible":
        n = m = n if n is not None else (m if m is not None else rng.randint(0, cfg.max_dim))
        return FinOperator(rand_invertible(rng, n, cfg.entry_bound))
    # free dimensions are drawn compatibly with the requested kind
    if n is None:
        lo = m if (kind == "surjective" and m is not None) else 0
        n = rng.randint(min(lo, cfg.max_dim), cfg.max_dim)
    if m is None:
        if kind == "surjective":
            m = rng.randint(0, n)
        elif kind == "injective":
            m = rng.randint(n, max(n, cfg.max_dim))
        else:
            m = rng.randint(0, cfg.max_dim)
    if kind == "surjective":
        if m > n:
            raise ValueError("no surjection onto a larger space")
        r = m
    elif kind == "injective":
        if n > m:
            raise ValueError("no injection into a smaller space")
        r = n
    else:
        r = rng.randint(0, min(m, n))
    while True:
        D = FinOperator(rand_rank_matrix(rng, m, n, r, cfg.entry_bound))
        if D.rank == r:
            return D


def rand_row(rng: random.Random, a: int, b: int):
    """Exact row Q^a --i--> Q^{a+b} --j--> Q^b, twisted by a random automorphism."""
    g = rand_invertible(rng, a + b)
    i = g @ vstack(I(a), Z(b, a))
    j = hstack(Z(b, a), I(b)) @ g.inverse()
    return i, j, g


def _split_dims(rng, total):
    a = rng.randint(0, total)
    return a, total - a


def _coupled(rng, cfg, Dp: RationalMatrix, Dpp: RationalMatrix) -> RationalMatrix:
    """[[D', B], [0, D'']] with a random coupling B, zero a fifth of the time."""
    c, b = Dp.nrows, Dpp.ncols
    B = Z(c, b) if rng.random() < 0.2 else rand_matrix(rng, c, b, cfg.entry_bound)
    return blocks([[Dp, B], [Z(Dpp.nrows, Dp.ncols), Dpp]])


def _triple_between(rng, cfg, rowX, rowY, Dp: FinOperator, Dpp: FinOperator) -> ExactTriple:
    iX, jX, gX = rowX
    iY, jY, gY = rowY
    Ds = _coupled(rng, cfg, Dp.matrix, Dpp.matrix)
    D = FinOperator(gY @ Ds @ gX.inverse())
    return ExactTriple(Dp, D, Dpp, iX, jX, iY, jY, check=False)


def gen_triple(rng: random.Random, cfg: GenConfig, kind: str = "any") -> ExactTriple:
    """kind: 'any', 'surjective' (D', D'' onto), 'Dp-invertible', 'Dpp-invertible'."""
    a, b = _split_dims(rng, rng.randint(0, cfg.max_dim))
    if kind == "surjective":
        c, d = rng.randint(0, a), rng.randint(0, b)
    elif kind == "Dp-invertible":
        c = a
        d = rng.randint(0, cfg.max_dim - a)
    elif kind == "Dpp-invertible":
        d = b
        c = rng.randint(0, cfg.max_dim - b)
    else:
        c, d = _split_dims(rng, rng.randint(0, cfg.max_dim))
    kp = {"surjective": "surjective", "Dp-invertible": "invertible"}.get(kind, "any")
    kpp = {"surjective": "surjective", "Dpp-invertible": "invertible"}.get(kind, "any")
    Dp = gen_operator(rng, cfg, a, c, kp)
    Dpp = gen_operator(rng, cfg, b, d, kpp)
    return _triple_between(rng, cfg, rand_row(rng, a, b), rand_row(rng, c, d), Dp, Dpp)


def gen_triple_chain(rng: random.Random, cfg: GenConfig):
    """Two triples t1, t2 with t1's bottom row equal to t2's top row."""
    rows = [rand_row(rng, *_split_dims(rng, rng.randint(0, cfg.max_dim))) for _ in range(3)]
    dims = [(r[0].ncols, r[1].nrows) for r in rows]
    ts = []
    for k in range(2):
        (a, b), (c, d) = dims[k], dims[k + 1]
        ts.append(_triple_between(rng, cfg, rows[k], rows[k + 1],
                                  gen_operator(rng, cfg, a, c), gen_operator(rng, cfg, b, d)))
    return ts[0], ts[1]


def gen_chain(rng: random.Random, cfg: GenConfig, length: int):
    """Composable operators D1: X1 → X2, D2: X2 → X3, …"""
    dims = [rng.randint(0, cfg.max_dim) for _ in range(length + 1)]
    return [gen_operator(rng, cfg, dims[k], dims[k + 1]) for k in range(length)]


def random_frame_change(rng: random.Random, frame, n: int, noise=()):
    k = len(frame)
    if k == 0:
        return ()
    g = rand_invertible(rng, k)
    out = []
    for row in g.rows:
        v = combine(row, frame, n)
        if noise:
            v = vadd(v, combine([Fraction(rng.randint(-2, 2)) for _ in noise], noise, n))
        out.append(v)
    return tuple(out)


def random_element(rng: random.Random, D: FinOperator, b: int = 3) -> DetLineElement:
    """A nonzero element of λ(D) written on random frames."""
    kx = random_frame_change(rng, D.kernel.basis, D.domain_dim)
    cy = random_frame_change(rng, D.cokernel.basis_vectors(), D.codomain_dim, D.image.basis)
    return det_line(D, kx, cy, rand_nonzero_q(rng, b), check=False)


# ---------------------------------------------------------------- squares

CORNERS = ("TL", "TR", "BL", "BR")
SPACES = {
    "TL": ("TL",), "TM": ("TL", "TR"), "TR": ("TR",),
    "CL": ("TL", "BL"), "CM": CORNERS, "CR": ("TR", "BR"),
    "BL": ("BL",), "BM": ("BL", "BR"), "BR": ("BR",),
}
# a block from corner s to corner r may be nonzero only when r ≤ s
_BELOW = {"TL": {"TL"}, "TR": {"TL", "TR"}, "BL": {"TL", "BL"}, "BR": set(CORNERS)}


def _coord_map(src, dst, dims) -> RationalMatrix:
    """Identity on the corners src and dst share, zero elsewhere."""
    def offsets(space):
        out, k = {}, 0
        for c in space:
            out[c] = k
            k += dims[c]
        return out, k
    so, n = offsets(src)
    do, m = offsets(dst)
    rows = [[0] * n for _ in range(m)]
    for c in set(src) & set(dst):
        for t in range(dims[c]):
            rows[do[c] + t][so[c] + t] = 1
    return RationalMatrix.from_rows(rows, n) if m else Z(0, n)


def gen_square(rng: random.Random, cfg: GenConfig) -> ExactSquare:
    k = max(1, (cfg.max_dim + 1) // 2)
    dx = {c: rng.randint(0, k) for c in CORNERS}
    dy = {c: rng.randint(0, k) for c in CORNERS}
    blk = {}
    for s in CORNERS:
        for r in CORNERS:
            if r in _BELOW[s]:
                if r == s:
                    M = gen_operator(rng, cfg, dx[s], dy[r]).matrix
                else:
                    M = rand_matrix(rng, dy[r], dx[s], cfg.entry_bound)
            else:
                M = Z(dy[r], dx[s])
            blk[r, s] = M
    ops = {}
    for name, sp in SPACES.items():
        ops[name] = blocks([[blk[r, s] for s in sp] for r in sp]) if sp else None
    gX = {p: rand_invertible(rng, sum(dx[c] for c in sp)) for p, sp in SPACES.items()}
    gY = {p: rand_invertible(rng, sum(dy[c] for c in sp)) for p, sp in SPACES.items()}
    twisted = {p: FinOperator(gY[p] @ ops[p] @ gX[p].inverse()) for p in SPACES}

    def edge(src, dst):
        mx = gX[dst] @ _coord_map(SPACES[src], SPACES[dst], dx) @ gX[src].inverse()
        my = gY[dst] @ _coord_map(SPACES[src], SPACES[dst], dy) @ gY[src].inverse()
        return EdgeMap(mx, my)

    row_maps = {r: (edge(r + "L", r + "M"), edge(r + "M", r + "R")) for r in "TCB"}
    col_maps = {c: (edge("T" + c, "C" + c), edge("C" + c, "B" + c)) for c in "LMR"}
    return ExactSquare(twisted, row_maps, col_maps)


# ---------------------------------------------------------------- stabilizations


def gen_stab(rng: random.Random, cfg: GenConfig) -> StabData:
    """D_Θ for a random D and an arbitrary Θ: Q^N → Y."""
    D = gen_operator(rng, cfg)
    N = rng.randint(0, cfg.max_dim)
    return stabilize(D, rand_matrix(rng, D.codomain_dim, N, cfg.entry_bound))


def gen_stab_row(rng: random.Random, cfg: GenConfig, t: ExactTriple) -> StabRow:
    """Θ', Θ, Θ'' compatible with the Y row of t."""
    k = max(1, cfg.max_dim // 2)
    a, b = rng.randint(0, k), rng.randint(0, k)
    Tp = rand_matrix(rng, t.Dp.codomain_dim, a, cfg.entry_bound)
    Tt = rand_matrix(rng, t.D.codomain_dim, b, cfg.entry_bound)
    split = hstack(t.iY @ Tp, Tt)
    i, j, g = rand_row(rng, a, b)
    return StabRow(i, j, Tp, split @ g.inverse(), t.jY @ Tt)


def gen_isomorphism(rng: random.Random, t: ExactTriple):
    """Random automorphisms of the six spaces of t and the conjugated triple."""
    dims = [t.Dp.domain_dim, t.D.domain_dim, t.Dpp.domain_dim,
            t.Dp.codomain_dim, t.D.codomain_dim, t.Dpp.codomain_dim]
    g = [rand_invertible(rng, n) for n in dims]
    inv = [x.inverse() for x in g]
    new = ExactTriple(
        FinOperator(g[3] @ t.Dp.matrix @ inv[0]),
        FinOperator(g[4] @ t.D.matrix @ inv[1]),
        FinOperator(g[5] @ t.Dpp.matrix @ inv[2]),
        g[1] @ t.iX @ inv[0], g[2] @ t.jX @ inv[1],
        g[4] @ t.iY @ inv[3], g[5] @ t.jY @ inv[4], check=False)
    return g, new
