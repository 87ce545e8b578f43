"""Exact linear algebra over a FieldCtx.

Matrices and vectors are numpy arrays of integer encodings (ctx.dtype).
Orientation is a signature convention rather than a wrapper type: vectors
of the underlying space V are columns and appear as parameters named `x`,
functionals (elements of the dual) are rows and appear as `xi`.  `matvec`
applies a matrix to a column, `vecmat` applies a functional on the right,
and `pure_tensor(ctx, x, xi)` is the rank-<=1 matrix x * xi.

Elimination is deterministic: reduced row echelon form with the topmost
row supplying each pivot, pivots normalized to 1, full reduction above and
below.  Everything downstream that promises byte-identical output relies
on this.
"""

from __future__ import annotations

import numpy as np

from .gf import AutSpec, FieldCtx


def as_matrix(ctx: FieldCtx, data, square: int | None = None) -> np.ndarray:
    """Validate and convert to a matrix of field-element encodings."""
    A = np.asarray(data, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {A.shape}")
    if A.size and (A.min() < 0 or A.max() >= ctx.q):
        raise ValueError(f"matrix entries must be encodings in [0, {ctx.q})")
    if square is not None and A.shape != (square, square):
        raise ValueError(f"expected a {square} x {square} matrix, got {A.shape}")
    return A.astype(ctx.dtype)


def as_vector(ctx: FieldCtx, data) -> np.ndarray:
    v = np.asarray(data, dtype=np.int64)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    if v.size and (v.min() < 0 or v.max() >= ctx.q):
        raise ValueError(f"vector entries must be encodings in [0, {ctx.q})")
    return v.astype(ctx.dtype)


def identity(ctx: FieldCtx, m: int) -> np.ndarray:
    return np.eye(m, dtype=ctx.dtype)


def zeros(ctx: FieldCtx, shape) -> np.ndarray:
    return np.zeros(shape, dtype=ctx.dtype)


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def dot(ctx: FieldCtx, u, v) -> int:
    """Sum of entrywise products; used e.g. for the pairing xi . x."""
    add, mul = ctx.add, ctx.mul
    acc = 0
    for a, b in zip(np.asarray(u).tolist(), np.asarray(v).tolist(), strict=True):
        if a and b:
            acc = add(acc, mul(a, b))
    return acc


def matmul(ctx: FieldCtx, A, B) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    n, k = A.shape
    k2, m = B.shape
    if k != k2:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    add, mul = ctx.add, ctx.mul
    Al, Bl = A.tolist(), B.tolist()
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai, Oi = Al[i], out[i]
        for kk in range(k):
            a = Ai[kk]
            if a:
                Bk = Bl[kk]
                for j in range(m):
                    if Bk[j]:
                        Oi[j] = add(Oi[j], mul(a, Bk[j]))
    return np.array(out, dtype=ctx.dtype)


def matvec(ctx: FieldCtx, A, x) -> np.ndarray:
    """A applied to a column vector x."""
    return matmul(ctx, A, np.asarray(x).reshape(-1, 1))[:, 0]


def vecmat(ctx: FieldCtx, xi, A) -> np.ndarray:
    """Functional xi (row) times A; the result is again a row."""
    return matmul(ctx, np.asarray(xi).reshape(1, -1), A)[0, :]


def pure_tensor(ctx: FieldCtx, x, xi) -> np.ndarray:
    """Rank-<=1 matrix x * xi (column times row)."""
    x = np.asarray(x)
    xi = np.asarray(xi)
    if x.ndim != 1 or xi.ndim != 1:
        raise ValueError("pure_tensor takes a column x and a functional xi")
    if ctx.mul_table is not None:
        return ctx.mul_table[x[:, None], xi[None, :]].astype(ctx.dtype)
    mul = ctx.mul
    return np.array([[mul(int(a), int(b)) for b in xi.tolist()] for a in x.tolist()],
                    dtype=ctx.dtype)


def trace(ctx: FieldCtx, A) -> int:
    A = np.asarray(A)
    acc = 0
    for i in range(A.shape[0]):
        acc = ctx.add(acc, int(A[i, i]))
    return acc


def trace_product(ctx: FieldCtx, X, M) -> int:
    """Trace of X @ M without forming the product."""
    X = np.asarray(X)
    M = np.asarray(M)
    if X.shape[1] != M.shape[0] or X.shape[0] != M.shape[1]:
        raise ValueError(f"shape mismatch {X.shape} x {M.shape}")
    add, mul = ctx.add, ctx.mul
    Xl, Ml = X.tolist(), M.tolist()
    acc = 0
    for i in range(X.shape[0]):
        Xi = Xl[i]
        for k in range(X.shape[1]):
            a = Xi[k]
            if a:
                b = Ml[k][i]
                if b:
                    acc = add(acc, mul(a, b))
    return acc


def scalar_mul(ctx: FieldCtx, c: int, A) -> np.ndarray:
    """c * A for a scalar c and an array A of any shape."""
    A = np.asarray(A)
    if c == 0:
        return np.zeros_like(A)
    if ctx.mul_table is not None:
        return ctx.mul_table[c][A].astype(ctx.dtype)
    mul = ctx.mul
    flat = [mul(c, int(v)) for v in A.reshape(-1).tolist()]
    return np.array(flat, dtype=ctx.dtype).reshape(A.shape)


def mat_add(ctx: FieldCtx, A, B) -> np.ndarray:
    return ctx.add_np(np.asarray(A), np.asarray(B)).astype(ctx.dtype)


def sigma_entrywise(ctx: FieldCtx, spec: AutSpec, A) -> np.ndarray:
    """Apply sigma to every entry."""
    return spec.table[np.asarray(A)].astype(ctx.dtype)


def sigma_entrywise_inverse(ctx: FieldCtx, spec: AutSpec, A) -> np.ndarray:
    return spec.inv_table[np.asarray(A)].astype(ctx.dtype)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _rref(ctx: FieldCtx, rows: list[list[int]], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns the pivot column list."""
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        row = rows[r]
        pv = row[c]
        if pv != 1:
            f = inv(pv)
            for k in range(c, ncols):
                if row[k]:
                    row[k] = mul(f, row[k])
        for i in range(nrows):
            coef = rows[i][c]
            if i != r and coef:
                nc = neg(coef)
                ri = rows[i]
                for k in range(c, ncols):
                    if row[k]:
                        ri[k] = add(ri[k], mul(nc, row[k]))
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def row_echelon(ctx: FieldCtx, A) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (deterministic)."""
    A = np.asarray(A)
    rows = [list(map(int, r)) for r in A.tolist()]
    pivots = _rref(ctx, rows, A.shape[1])
    return np.array(rows, dtype=ctx.dtype).reshape(A.shape), tuple(pivots)


def rank(ctx: FieldCtx, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    rows = [list(map(int, r)) for r in A.tolist()]
    return len(_rref(ctx, rows, A.shape[1]))


def invert(ctx: FieldCtx, A) -> np.ndarray:
    """Inverse of a square matrix; raises ValueError if singular."""
    A = np.asarray(A)
    m = A.shape[0]
    if A.shape != (m, m):
        raise ValueError(f"invert needs a square matrix, got {A.shape}")
    eye = np.eye(m, dtype=A.dtype)
    rows = [list(map(int, list(r) + list(e))) for r, e in zip(A.tolist(), eye.tolist())]
    pivots = _rref(ctx, rows, 2 * m)
    if pivots[:m] != list(range(m)) or len(pivots) != m:
        raise ValueError("matrix is singular")
    return np.array([r[m:] for r in rows], dtype=ctx.dtype)


def left_kernel(ctx: FieldCtx, A) -> np.ndarray:
    """Canonical basis of {xi : xi A = 0}, one row per basis functional.

    The basis comes from the RREF of A^T in the standard free-variable
    form, so it is deterministic.  Shape (d, m) with d the kernel
    dimension (possibly 0).
    """
    A = np.asarray(A)
    m = A.shape[0]
    rows = [list(map(int, r)) for r in A.T.tolist()]
    pivots = _rref(ctx, rows, m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m):
        if f in pivot_set:
            continue
        v = [0] * m
        v[f] = 1
        for r_idx, pc in enumerate(pivots):
            v[pc] = ctx.neg(rows[r_idx][f])
        basis.append(v)
    return np.array(basis, dtype=ctx.dtype).reshape(len(basis), m)


# ---------------------------------------------------------------------------
# projective normalization and rank-1 factorization
# ---------------------------------------------------------------------------

def normalize_rep(ctx: FieldCtx, arr) -> tuple[np.ndarray, int]:
    """Scale so the first nonzero entry (row-major) becomes 1.

    Returns (normalized, scale) with arr == scale * normalized.  Raises
    ValueError on the zero array.
    """
    arr = np.asarray(arr)
    flat = arr.reshape(-1)
    nz = np.flatnonzero(flat)
    if nz.size == 0:
        raise ValueError("cannot normalize the zero array")
    scale = int(flat[nz[0]])
    if scale == 1:
        return arr.astype(ctx.dtype).copy(), 1
    return scalar_mul(ctx, ctx.inv(scale), arr), scale


def is_scalar_matrix(ctx: FieldCtx, A) -> tuple[bool, int]:
    """Whether A == c*I; returns (flag, c)."""
    A = np.asarray(A)
    m = A.shape[0]
    c = int(A[0, 0])
    expected = scalar_mul(ctx, c, np.eye(m, dtype=ctx.dtype))
    return bool(np.array_equal(A.astype(ctx.dtype), expected)), c


def rank1_factor(ctx: FieldCtx, M) -> tuple[np.ndarray, np.ndarray]:
    """Factor a rank-1 matrix as M = u * zeta (column times row).

    zeta is the first nonzero row of M and u the matching column of
    coefficients, so if M is a normalized projective representative then
    zeta is normalized too.  Raises ValueError if M is zero or has rank
    greater than 1 (the factorization is verified entrywise).
    """
    M = np.asarray(M)
    row_nz = np.flatnonzero((M != 0).any(axis=1))
    if row_nz.size == 0:
        raise ValueError("zero matrix has no rank-1 factorization")
    i0 = int(row_nz[0])
    zeta = M[i0, :].copy()
    j0 = int(np.flatnonzero(zeta)[0])
    piv_inv = ctx.inv(int(zeta[j0]))
    u = scalar_mul(ctx, piv_inv, M[:, j0])
    if not np.array_equal(pure_tensor(ctx, u, zeta), M.astype(ctx.dtype)):
        raise ValueError("matrix does not have rank 1")
    return u, zeta
