"""Twisted embedding of the flag geometry into projective matrix classes.

A flag (point [x], hyperplane [xi]) with xi . x = 0 maps to the projective
class of the rank-1 matrix sigma(x) * xi (column times row, entrywise
sigma on the point side).  With both representatives normalized the image
is already a normalized class representative.  The images of all N flags,
indexed by flag order, form a projective system in the matrix space; a
matrix M cuts the system in the coordinates i where the trace pairing
Tr(X_i M) vanishes, and the codeword of M downstream is exactly that trace
vector.

The span of the system is the full matrix space for sigma != 1 and the
traceless hyperplane for sigma = 1; build_system asserts this dimension.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .gamma import Flag, Gamma, build_gamma
from .gf import AutSpec, FieldCtx, make_autspec, make_field
from .linalg import dot, pure_tensor, sigma_entrywise, trace_product, vecmat


@dataclass(eq=False)
class ProjectiveSystem:
    """The embedded flag system for one (ctx, spec, n)."""

    ctx: FieldCtx
    spec: AutSpec
    n: int
    gamma: Gamma
    mats: np.ndarray            # (N, n+1, n+1) normalized representatives
    flat: np.ndarray            # (N, (n+1)^2) row-major flattening
    span_rank: int
    index_of: dict = field(repr=False)   # flat bytes -> flag index

    @property
    def N(self) -> int:
        return self.flat.shape[0]

    @property
    def k(self) -> int:
        return self.flat.shape[1]

    @property
    def m(self) -> int:
        return self.n + 1

    @property
    def cfg(self) -> tuple:
        """Picklable config tuple; workers rebuild the system from it."""
        return (self.ctx.p, self.ctx.t, self.ctx.modulus, self.spec.j, self.n)

    def class_of(self, M) -> int | None:
        """Flag index of [M] if M is proportional to a system member."""
        from .linalg import normalize_rep
        rep, _ = normalize_rep(self.ctx, np.asarray(M))
        return self.index_of.get(rep.reshape(-1).tobytes())


def embed_flag(ctx: FieldCtx, spec: AutSpec, flag: Flag) -> np.ndarray:
    """Image sigma(x) * xi of one flag, already normalized.

    The first nonzero entry of the product sits where the leading 1 of x
    meets the leading 1 of xi and sigma fixes 1, so no rescaling is needed;
    this is asserted.
    """
    x = np.array(flag.point.rep, dtype=ctx.dtype)
    xi = np.array(flag.functional.rep, dtype=ctx.dtype)
    sx = spec.table[x].astype(ctx.dtype)
    X = pure_tensor(ctx, sx, xi)
    flat = X.reshape(-1)
    assert int(flat[np.flatnonzero(flat)[0]]) == 1, "embedding not normalized"
    return X


def _span_rank(ctx: FieldCtx, flat: np.ndarray, k: int) -> int:
    """Incremental rank of the N x k system matrix, early exit at k."""
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    pivots: dict[int, list[int]] = {}
    for raw in flat.tolist():
        row = list(map(int, raw))
        for c in range(k):
            v = row[c]
            if not v:
                continue
            piv = pivots.get(c)
            if piv is None:
                if v != 1:
                    f = inv(v)
                    row = [mul(f, e) if e else 0 for e in row]
                pivots[c] = row
                break
            nc = neg(v)
            row = [add(e, mul(nc, p)) if p else e for e, p in zip(row, piv)]
        if len(pivots) == k:
            return k
    return len(pivots)


@functools.lru_cache(maxsize=None)
def build_system(ctx: FieldCtx, spec: AutSpec, n: int) -> ProjectiveSystem:
    """Embed every flag of PG(n, q); cached per (ctx, spec, n).

    Asserts injectivity (the N images are pairwise distinct classes) and
    the span dimension ((n+1)^2, or one less when sigma is the identity).
    """
    gamma = build_gamma(ctx, n)
    m = n + 1
    N = gamma.N
    mats = np.zeros((N, m, m), dtype=ctx.dtype)
    # one outer product per flag: sigma(x)[:,None] * xi[None,:], batched per
    # functional since flags are functional-major
    sig_pts = spec.table[gamma.points_arr].astype(ctx.dtype)
    pos = 0
    for fn in gamma.functionals:
        hit = gamma.by_functional[fn.index]
        if hit.size == 0:
            continue
        xs = sig_pts[hit]                      # (h, m)
        xi = np.array(fn.rep, dtype=ctx.dtype)
        block = ctx.mul_np(xs[:, :, None], xi[None, None, :])
        mats[pos:pos + hit.size] = block
        pos += hit.size
    assert pos == N
    flat = mats.reshape(N, m * m)

    index_of: dict[bytes, int] = {}
    for i in range(N):
        key = flat[i].tobytes()
        if key in index_of:
            raise AssertionError(f"embedding not injective: flags "
                                 f"{index_of[key]} and {i} collide")
        index_of[key] = i

    lead_vals = flat[np.arange(N), (flat != 0).argmax(axis=1)]
    assert np.all(lead_vals == 1), "system representatives not normalized"

    srank = _span_rank(ctx, flat, m * m)
    expected = m * m if spec.j != 0 else m * m - 1
    if srank != expected:
        raise AssertionError(f"system span rank {srank}, expected {expected}")
    return ProjectiveSystem(ctx=ctx, spec=spec, n=n, gamma=gamma, mats=mats,
                            flat=flat, span_rank=srank, index_of=index_of)


def make_system(p: int, t: int, j: int, n: int,
                modulus: tuple[int, ...] | None = None) -> ProjectiveSystem:
    """Convenience builder from raw parameters."""
    ctx = make_field(p, t, modulus)
    return build_system(ctx, make_autspec(ctx, j), n)


def saturation_membership(ctx: FieldCtx, spec: AutSpec, x, xi, M) -> bool:
    """Whether the image of the flag (x, xi) lies on the hyperplane cut by M.

    Computed as the vanishing of xi M sigma(x) and cross-checked against
    the direct trace Tr((sigma(x) xi) M); the two routes are asserted equal.
    """
    x = np.asarray(x)
    xi = np.asarray(xi)
    sx = spec.table[x].astype(ctx.dtype)
    via_pairing = dot(ctx, vecmat(ctx, xi, np.asarray(M)), sx)
    via_trace = trace_product(ctx, pure_tensor(ctx, sx, xi), np.asarray(M))
    assert via_pairing == via_trace, "trace pairing identity violated"
    return via_pairing == 0
