"""Ground-truth oracle: explicit string/band modules over a prime field and
exact endomorphism-space dimensions.

Representations are per-vertex dimensions plus per-arrow matrices over F_p
(default p = 32003).  end_dim solves the commutation system
phi_{t(a)} M_a = M_a phi_{s(a)} by exact nullspace computation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .strings import Band, CapExceeded, Context, Str

DEFAULT_PRIME = 32003
SECOND_PRIME = 65521


@dataclass
class Representation:
    dims: dict[str, int]
    mats: dict[str, np.ndarray]  # arrow -> (dim_target x dim_source) over F_p
    prime: int

    def total_dim(self) -> int:
        return sum(self.dims.values())


def string_module(ctx: Context, x: Str, prime: int = DEFAULT_PRIME) -> Representation:
    """M(x): one basis vector per string position; direct syllables act
    forward, inverse syllables backward."""
    p = ctx.presentation
    verts = list(p.vertices)
    positions = [x.src if x.is_zero() else ctx.letter_src(x.letters[0])]
    for l in x.letters:
        positions.append(ctx.letter_dst(l))
    dims = {v: 0 for v in verts}
    index = []  # index[i] = row of position i inside its vertex block
    for v in positions:
        index.append(dims[v])
        dims[v] += 1
    mats = {a: np.zeros((dims[t], dims[s]), dtype=np.int64)
            for a, s, t in p.arrows}
    for i, l in enumerate(x.letters):
        a = l.sym
        if l.inv:
            # the inverse syllable connects position i+1 back to position i
            mats[a][index[i], index[i + 1]] = 1
        else:
            mats[a][index[i + 1], index[i]] = 1
    return Representation(dims, mats, prime)


def band_module(ctx: Context, b: Band, l: int, lam: int,
                prime: int = DEFAULT_PRIME) -> Representation:
    """B(b, l, lambda): each position carries an l-dimensional block; the last
    (direct) syllable acts by the Jordan block J_l(lambda), all others by the
    identity."""
    if lam % prime == 0:
        raise ValueError("lambda must be nonzero")
    if l < 1:
        raise ValueError("l must be >= 1")
    p = ctx.presentation
    letters = b.string.letters
    n = len(letters)
    positions = [ctx.letter_src(letters[0])]
    for lt in letters[:-1]:
        positions.append(ctx.letter_dst(lt))
    dims = {v: 0 for v in p.vertices}
    index = []
    for v in positions:
        index.append(dims[v])
        dims[v] += l
    mats = {a: np.zeros((dims[t], dims[s]), dtype=np.int64)
            for a, s, t in p.arrows}
    ident = np.eye(l, dtype=np.int64)
    jordan = (lam * np.eye(l, dtype=np.int64) + np.eye(l, k=1, dtype=np.int64)) % prime
    for i, lt in enumerate(letters):
        block = jordan if i == n - 1 else ident
        src_pos, dst_pos = i, (i + 1) % n
        if lt.inv:
            # the arrow maps the block at position i+1 back onto position i
            mats[lt.sym][index[src_pos]:index[src_pos] + l,
                         index[dst_pos]:index[dst_pos] + l] = block
        else:
            mats[lt.sym][index[dst_pos]:index[dst_pos] + l,
                         index[src_pos]:index[src_pos] + l] = block
    return Representation(dims, mats, prime)


def relation_defects(ctx: Context, rep: Representation) -> list[str]:
    """Relations whose composed matrix is nonzero (must be empty)."""
    bad = []
    for r in ctx.presentation.relations:
        first = r[0]
        m = rep.mats[first] % rep.prime
        for a in r[1:]:
            m = (rep.mats[a] @ m) % rep.prime
        if np.any(m):
            bad.append(" ".join(r))
    return bad


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        r += 1
        if r == rows:
            break
    return r


def end_dim(ctx: Context, rep: Representation, cap: int = 400) -> int:
    """Dimension of End(M) = nullity of the commutation system over F_p."""
    if rep.total_dim() > cap:
        raise CapExceeded(f"total dimension {rep.total_dim()} exceeds cap {cap}")
    p = rep.prime
    verts = [v for v in ctx.presentation.vertices if rep.dims[v] > 0]
    offs = {}
    n_unknowns = 0
    for v in verts:
        offs[v] = n_unknowns
        n_unknowns += rep.dims[v] * rep.dims[v]
    if n_unknowns == 0:
        return 0
    rows = []
    for a, s, t in ctx.presentation.arrows:
        M = rep.mats[a] % p
        if not np.any(M):
            continue
        dt, ds = rep.dims[t], rep.dims[s]
        # equation (i,j): sum_k phi_t[i,k] M[k,j] - sum_k M[i,k] phi_s[k,j] = 0
        for i in range(dt):
            for j in range(ds):
                row = np.zeros(n_unknowns, dtype=np.int64)
                row[offs[t] + i * dt: offs[t] + i * dt + dt] += M[:, j]
                for k in range(ds):
                    row[offs[s] + k * ds + j] -= M[i, k]
                rows.append(row % p)
    if not rows:
        return n_unknowns
    rank = _rank_mod_p(np.array(rows, dtype=np.int64), p)
    return n_unknowns - rank


def end_dim_string(ctx: Context, x: Str, prime: int = DEFAULT_PRIME, cap: int = 400) -> int:
    return end_dim(ctx, string_module(ctx, x, prime), cap)


def end_dim_band(ctx: Context, b: Band, l: int, lam: int,
                 prime: int = DEFAULT_PRIME, cap: int = 400) -> int:
    return end_dim(ctx, band_module(ctx, b, l, lam, prime), cap)
