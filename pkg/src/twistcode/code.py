"""Codeword-level operations on the embedded flag system.

The quantity driving every weight here is the fixed-functional count of a
nonzero matrix M, written theta(M): the number of functional classes [xi]
with xi M = lambda * sigma(xi) for some lambda, including lambda = 0 (the
left kernel of M).  It ties to the codeword c_M[i] = Tr(X_i M) through the
intersection identity

    #zeros(c_M) = (q^(n+1)-1)(q^(n-1)-1)/(q-1)^2 + theta(M) * q^(n-1),

which is asserted wherever both sides are computed, and hence

    weight(c_M) = q^(n-1) * ((q^(n+1)-1)/(q-1) - theta(M)).

Rank-r matrices obey theta(M) <= m(r) with m(r) as in m_bound(); for
invertible M the solutions with lambda != 0 are few on every line of the
dual space (at most s + 1) and in every r-dimensional subspace (at most
(s^r-1)/(s-1)).  The *_bound helpers probe exactly these statements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bulk
from .embedding import ProjectiveSystem
from .gf import AutSpec, FieldCtx, norm
from .linalg import (as_matrix, dot, invert, left_kernel, matmul, normalize_rep,
                     rank, scalar_mul, sigma_entrywise, vecmat)
from .projgeom import class_reps_range, enumerate_lines, num_classes
from .rng import SplitMix64


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Codeword:
    values: np.ndarray
    matrix: np.ndarray = field(repr=False)

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.values))


@dataclass(frozen=True)
class ThetaReport:
    theta: int
    kernel_classes: int
    proportional_classes: int
    intersection: int          # vanishing coordinates of the codeword
    weight: int
    identity_checked: bool


@dataclass(frozen=True)
class SpectrumTable:
    counts: dict               # weight -> number of words (or samples)
    mode: str                  # "exhaustive" | "sampled"
    classes: int
    identity_checked: bool


@dataclass(frozen=True, eq=False)
class MaxThetaReport:
    rank: int
    max_theta: int
    bound: int
    attains_bound: bool
    witness_index: int
    witness: np.ndarray


@dataclass(frozen=True, eq=False)
class MinimalityReport:
    minimal: bool
    classes_checked: int
    witness_index: int | None = None
    witness: np.ndarray | None = None
    covering: np.ndarray | None = None


@dataclass(frozen=True)
class SecondWeightReport:
    min_weight: int
    second_weight: int
    min_weight_classes: int
    second_weight_classes: int
    rank1_classes: int
    singular_classes: int
    quasi_singular_classes: int
    correspondence_ok: bool
    mode: str
    classes_checked: int


@dataclass(frozen=True)
class AutomorphismReport:
    trials: int
    seed: int
    weight_failures: int
    permutation_failures: int
    kernel_elements_checked: int
    kernel_ok: bool
    nonkernel_trials: int
    nonkernel_all_moved: bool


# ---------------------------------------------------------------------------
# basic evaluations
# ---------------------------------------------------------------------------

def _scalar_mul_col(ctx: FieldCtx, c: int, col: np.ndarray) -> np.ndarray:
    if ctx.mul_table is not None:
        return ctx.mul_table[c][col]
    return scalar_mul(ctx, c, col)


def eval_codeword(sys: ProjectiveSystem, M) -> Codeword:
    """Trace pairing of M against every embedded flag, in flag order."""
    ctx = sys.ctx
    M = as_matrix(ctx, M, square=sys.m)
    w = M.T.reshape(-1)           # w[r*m+c] = M[c,r]
    acc = np.zeros(sys.N, dtype=ctx.dtype)
    for a in range(sys.k):
        wa = int(w[a])
        if wa:
            acc = ctx.add_np(acc, _scalar_mul_col(ctx, wa, sys.flat[:, a]))
    return Codeword(values=acc.astype(ctx.dtype), matrix=M)


def theta(sys: ProjectiveSystem, M, check_identity: bool = True) -> ThetaReport:
    """Fixed-functional count of a nonzero matrix, plus the identity check.

    Scans every functional class once (lambda is read off at the leading 1
    of xi, which sigma fixes).  With check_identity the codeword is also
    evaluated over all flags and the intersection identity asserted; both
    routes are independent.
    """
    ctx, spec = sys.ctx, sys.spec
    M = as_matrix(ctx, M, square=sys.m)
    if not M.any():
        raise ValueError("theta of the zero matrix is undefined")
    funcs = sys.gamma.funcs_arr
    F, m = funcs.shape
    cols = []
    for c in range(m):
        acc = np.zeros(F, dtype=ctx.dtype)
        for i in range(m):
            e = int(M[i, c])
            if e:
                acc = ctx.add_np(acc, _scalar_mul_col(ctx, e, funcs[:, i]))
        cols.append(acc)
    V = np.stack(cols, axis=1)
    lead = (funcs != 0).argmax(axis=1)
    lam = V[np.arange(F), lead]
    sxi = spec.table[funcs]
    ok = (V == ctx.mul_np(lam[:, None], sxi)).all(axis=1)
    kernel = int((ok & (lam == 0)).sum())
    prop = int((ok & (lam != 0)).sum())
    th = kernel + prop

    q, n = ctx.q, sys.n
    base = (q ** (n + 1) - 1) * (q ** (n - 1) - 1) // (q - 1) ** 2
    pts = (q ** (n + 1) - 1) // (q - 1)
    weight = q ** (n - 1) * (pts - th)
    if check_identity:
        cw = eval_codeword(sys, M)
        z = sys.N - cw.weight
        assert z == base + th * q ** (n - 1), \
            f"intersection identity violated: zeros={z}, theta={th}"
        assert cw.weight == weight
    return ThetaReport(theta=th, kernel_classes=kernel,
                       proportional_classes=prop,
                       intersection=base + th * q ** (n - 1),
                       weight=weight, identity_checked=check_identity)


def m_bound(r: int, q: int, n: int, s: int) -> int:
    """Upper bound for theta over rank-r matrices:
    (q^(n+1-r)-1)/(q-1) + (s^r-1)/(s-1)."""
    if not 1 <= r <= n + 1:
        raise ValueError(f"rank r must be in [1, {n + 1}], got {r}")
    return (q ** (n + 1 - r) - 1) // (q - 1) + (s ** r - 1) // (s - 1)


def closed_form_min_distance(sys: ProjectiveSystem) -> int:
    """Closed-form minimum distance (sigma != 1, n >= 2): q^3 - s^3 for an
    involutory twist in the plane, q^(2n-1) - q^(n-1) otherwise."""
    ctx, spec, n = sys.ctx, sys.spec, sys.n
    if spec.j == 0:
        raise ValueError("closed-form distance needs sigma != 1")
    if n < 2:
        raise ValueError("closed-form distance needs n >= 2")
    q = ctx.q
    if spec.order == 2 and n == 2:
        return q ** 3 - spec.s ** 3
    return q ** (2 * n - 1) - q ** (n - 1)


def min_distance(sys: ProjectiveSystem, exhaustive: bool = False,
                 threads: int = 1) -> int:
    """Closed-form minimum distance; optionally verified by full sweep."""
    d = closed_form_min_distance(sys)
    if exhaustive:
        table = weight_spectrum(sys, threads=threads)
        observed = min(w for w in table.counts if w > 0)
        assert observed == d, f"spectrum minimum {observed} != closed form {d}"
    return d


# ---------------------------------------------------------------------------
# exhaustive sweeps
# ---------------------------------------------------------------------------

def _fold_theta_hist(sys, opts, threads):
    b_F = len(sys.gamma.functionals)
    hist = np.zeros(b_F + 1, dtype=np.int64)
    extras = {"identity_violations": 0, "first_identity_violation": None,
              "cond_count": 0, "cond_mismatches": 0, "first_cond_mismatch": None,
              "rank1_count": 0, "qsns_count": 0, "sing_count": 0,
              "w1_violations": 0, "first_w1": None,
              "w2_violations": 0, "first_w2": None,
              "classes": 0, "max_by_rank": {}}
    total = num_classes(sys.ctx.q, sys.k)
    for res in bulk.iter_sweep(sys.cfg, opts, total, threads=threads):
        hist[:len(res["theta_hist"])] += res["theta_hist"]
        extras["classes"] += res["classes"]
        for key in ("identity_violations", "cond_mismatches", "cond_count",
                    "rank1_count", "qsns_count", "sing_count",
                    "w1_violations", "w2_violations"):
            if key in res:
                extras[key] += res[key]
        for key in ("first_identity_violation", "first_cond_mismatch",
                    "first_w1", "first_w2"):
            if res.get(key) is not None and extras[key] is None:
                extras[key] = res[key]
        for r, (mx, idx) in res.get("max_by_rank", {}).items():
            cur = extras["max_by_rank"].get(r)
            if cur is None or mx > cur[0] or (mx == cur[0] and idx < cur[1]):
                extras["max_by_rank"][r] = (mx, idx)
    assert extras["classes"] == total
    return hist, extras


def weight_spectrum(sys: ProjectiveSystem, sample: int | None = None,
                    seed: int = 0, threads: int = 1,
                    flag_check: bool | None = None) -> SpectrumTable:
    """Weight distribution, exhaustive over all matrix classes or sampled.

    Exhaustive mode walks the (q^k-1)/(q-1) classes (cap 2*10^7), counts
    each class with multiplicity q-1 and adds the zero word; the counts
    then sum to q^k exactly, which is asserted, as is the closed-form
    minimum distance when it applies.  flag_check additionally recomputes
    every codeword's zero count from the flags and asserts the
    intersection identity per class (default: on when classes*N is small).
    """
    ctx = sys.ctx
    q, n = ctx.q, sys.n
    pts = (q ** (n + 1) - 1) // (q - 1)
    qn1 = q ** (n - 1)

    if sample is not None:
        if sample <= 0:
            raise ValueError("sample size must be positive")
        thetas = bulk.sampled_theta(sys.cfg, sample, seed)
        counts: dict[int, int] = {}
        for th in thetas.tolist():
            w = qn1 * (pts - th)
            counts[w] = counts.get(w, 0) + 1
        return SpectrumTable(counts=dict(sorted(counts.items())),
                             mode="sampled", classes=sample,
                             identity_checked=False)

    total = num_classes(q, sys.k)
    if total > bulk.EXHAUSTIVE_CAP:
        raise ValueError(f"{total} classes exceed the exhaustive cap "
                         f"{bulk.EXHAUSTIVE_CAP}; pass sample=")
    if flag_check is None:
        flag_check = total * sys.N <= 10 ** 9
    opts = {"kind": "theta", "flag_check": bool(flag_check)}
    hist, extras = _fold_theta_hist(sys, opts, threads)
    if flag_check:
        assert extras["identity_violations"] == 0, \
            f"intersection identity violated first at class " \
            f"{extras['first_identity_violation']}"
    counts = {0: 1}
    for th, cnt in enumerate(hist.tolist()):
        if cnt:
            w = qn1 * (pts - th)
            counts[w] = counts.get(w, 0) + cnt * (q - 1)
    assert sum(counts.values()) == q ** sys.k, "spectrum does not sum to q^k"
    if sys.spec.j != 0 and n >= 2:
        d = closed_form_min_distance(sys)
        observed = min(w for w in counts if w > 0)
        assert observed == d, f"minimum weight {observed} != closed form {d}"
    return SpectrumTable(counts=dict(sorted(counts.items())),
                         mode="exhaustive", classes=total,
                         identity_checked=bool(flag_check))


def max_theta_by_rank(sys: ProjectiveSystem, r: int,
                      threads: int = 1) -> MaxThetaReport:
    """Maximum theta over all classes of rank r, with the first witness.

    Exhaustive; vectorized for 3 x 3 matrices (n = 2).  Reports whether
    the maximum attains the m(r) bound.
    """
    ctx, spec = sys.ctx, sys.spec
    if not 1 <= r <= sys.m:
        raise ValueError(f"rank must be in [1, {sys.m}]")
    total = num_classes(ctx.q, sys.k)
    if total > bulk.EXHAUSTIVE_CAP:
        raise ValueError(f"{total} classes exceed the exhaustive cap")
    bound = m_bound(r, ctx.q, sys.n, spec.s)
    if sys.m == 3:
        opts = {"kind": "theta", "max_by_rank": True}
        _, extras = _fold_theta_hist(sys, opts, threads)
        mx, idx = extras["max_by_rank"][r]
    else:
        if total > 10 ** 5:
            raise ValueError("generic rank filter capped at 1e5 classes; "
                             "only n = 2 is vectorized")
        mx, idx = -1, -1
        chunk = 1 << 12
        for s0 in range(0, total, chunk):
            R = class_reps_range(ctx.q, sys.k, s0, min(s0 + chunk, total),
                                 dtype=ctx.dtype)
            th, _ = bulk.theta_batch(bulk._bundle(sys.cfg), R)
            for bi in range(R.shape[0]):
                if th[bi] > mx and rank(ctx, R[bi].reshape(sys.m, sys.m)) == r:
                    mx, idx = int(th[bi]), s0 + bi
    witness = class_reps_range(ctx.q, sys.k, idx, idx + 1,
                               dtype=ctx.dtype)[0].reshape(sys.m, sys.m)
    assert rank(ctx, witness) == r
    assert mx <= bound, f"theta {mx} exceeds the rank-{r} bound {bound}"
    return MaxThetaReport(rank=r, max_theta=mx, bound=bound,
                          attains_bound=mx == bound,
                          witness_index=idx, witness=witness)


def is_minimal(sys: ProjectiveSystem, threads: int = 1) -> MinimalityReport:
    """Exhaustive minimality: each codeword's zero set must span a
    hyperplane of the matrix space.

    For every class [M], the embedded flags where c_M vanishes are rank
    k-1 exactly when no codeword covers c_M other than its multiples;
    sweeping all classes decides minimality of the whole code.  Rejects
    sigma = 1 (the identity-embedding code is classically non-minimal for
    the parameters of interest and the k-1 criterion no longer applies to
    its smaller span).
    """
    if sys.spec.j == 0:
        raise ValueError("minimality sweep requires sigma != 1")
    total = num_classes(sys.ctx.q, sys.k)
    if total > bulk.EXHAUSTIVE_CAP:
        raise ValueError(f"{total} classes exceed the exhaustive cap")
    opts = {"kind": "minimality"}
    bad_count = 0
    first_bad = None
    checked = 0
    for res in bulk.iter_sweep(sys.cfg, opts, total, threads=threads):
        checked += res["classes"]
        bad_count += res["bad_count"]
        if res["bad"] and first_bad is None:
            first_bad = res["bad"][0]
    assert checked == total
    if bad_count == 0:
        return MinimalityReport(minimal=True, classes_checked=total)
    ctx = sys.ctx
    witness = class_reps_range(ctx.q, sys.k, first_bad, first_bad + 1,
                               dtype=ctx.dtype)[0].reshape(sys.m, sys.m)
    cw = eval_codeword(sys, witness)
    rows = sys.flat[cw.values == 0]
    ann = left_kernel(ctx, rows.T)      # {w : rows w = 0}
    target = witness.T.reshape(-1)
    covering = None
    for v in ann:
        vn, _ = normalize_rep(ctx, v)
        tn, _ = normalize_rep(ctx, target)
        if not np.array_equal(vn, tn):
            covering = v.reshape(sys.m, sys.m).T
            break
    return MinimalityReport(minimal=False, classes_checked=total,
                            witness_index=first_bad, witness=witness,
                            covering=covering)


# ---------------------------------------------------------------------------
# minimum-weight characterizations
# ---------------------------------------------------------------------------

def _solutions(sys: ProjectiveSystem, M) -> list[tuple[tuple[int, ...], int]]:
    """All (xi rep, lambda) with xi M = lambda sigma(xi), lambda != 0."""
    ctx, spec = sys.ctx, sys.spec
    M = as_matrix(ctx, M, square=sys.m)
    out = []
    for fn in sys.gamma.functionals:
        xi = np.array(fn.rep, dtype=ctx.dtype)
        v = vecmat(ctx, xi, M)
        lead = next(i for i, e in enumerate(fn.rep) if e)
        lam = int(v[lead])
        if lam == 0:
            continue
        sxi = spec.table[xi].astype(ctx.dtype)
        if np.array_equal(v, scalar_mul(ctx, lam, sxi)):
            out.append((fn.rep, lam))
    return out


def min_weight_condition_n2(sys: ProjectiveSystem, M) -> bool:
    """Minimum-weight test for n = 2, involutory sigma.

    True iff some norm class of lambda values admits three linearly
    independent solution functionals; by the plane classification this is
    exactly when the codeword of M has the minimum weight q^3 - s^3.
    """
    ctx, spec = sys.ctx, sys.spec
    if sys.n != 2:
        raise ValueError("this characterization is specific to n = 2")
    if spec.order != 2:
        raise ValueError("needs an involutory sigma != 1")
    groups: dict[int, list] = {}
    for rep, lam in _solutions(sys, M):
        groups.setdefault(norm(ctx, spec, lam), []).append(rep)
    for reps in groups.values():
        if len(reps) >= 3 and rank(ctx, np.array(reps, dtype=ctx.dtype)) >= 3:
            return True
    return False


def min_weight_sweep(sys: ProjectiveSystem, threads: int = 1) -> dict:
    """Exhaustive check that minimum weight <=> the three-solution condition.

    Vectorized via line containment of the solution set, which matches the
    norm-grouped statement only when the fixed subfield is GF(2) (single
    norm class); larger s must use min_weight_condition_n2 per matrix.
    """
    ctx, spec = sys.ctx, sys.spec
    if sys.n != 2 or spec.order != 2:
        raise ValueError("sweep requires n = 2 and involutory sigma")
    if spec.s != 2:
        raise ValueError("vectorized sweep requires fixed subfield GF(2)")
    total = num_classes(ctx.q, sys.k)
    if total > bulk.EXHAUSTIVE_CAP:
        raise ValueError("class count exceeds the exhaustive cap")
    target = m_bound(sys.m, ctx.q, sys.n, spec.s)   # theta at minimum weight
    opts = {"kind": "theta", "cond_theta": target}
    _, extras = _fold_theta_hist(sys, opts, threads)
    return {
        "classes": extras["classes"],
        "condition_classes": extras["cond_count"],
        "mismatches": extras["cond_mismatches"],
        "first_mismatch": extras["first_cond_mismatch"],
        "ok": extras["cond_mismatches"] == 0,
    }


def second_weight_check(sys: ProjectiveSystem, threads: int = 1,
                        rank1_only: bool = False) -> SecondWeightReport:
    """Characterize the two lightest weights via rank-1 classes.

    Full mode sweeps every matrix class and checks the set equalities
    {theta = m(1)} == {rank 1, pairing != 0} and {theta = m(1)-1} ==
    {rank 1, pairing == 0}.  rank1_only enumerates just the rank-1
    classes and certifies the rest through the m(r) bounds (valid when
    max over r >= 2 of m(r) < m(1) - 1, asserted); that is a complete
    proof too, just resting on the bound theorem instead of enumeration.
    """
    ctx, spec = sys.ctx, sys.spec
    if spec.j == 0:
        raise ValueError("second-weight analysis needs sigma != 1")
    q, n = ctx.q, sys.n
    pts = (q ** (n + 1) - 1) // (q - 1)
    qn1 = q ** (n - 1)
    m1 = m_bound(1, q, n, spec.s)
    worst = max(m_bound(r, q, n, spec.s) for r in range(2, sys.m + 1))
    if worst >= m1 - 1:
        raise ValueError(
            f"the two lightest weights are not governed by rank 1 here: "
            f"max theta over rank >= 2 is {worst}, m(1) is {m1}")
    w_min = qn1 * (pts - m1)
    w_second = qn1 * (pts - (m1 - 1))
    P = num_classes(q, sys.m)

    if rank1_only:
        b = bulk._bundle(sys.cfg)
        reps = []
        pair_nz = []
        pts_reps = class_reps_range(q, sys.m, 0, P, dtype=ctx.dtype)
        for u in pts_reps:
            su = spec.table[u].astype(ctx.dtype)
            for fn in sys.gamma.functionals:
                zeta = np.array(fn.rep, dtype=ctx.dtype)
                Mflat = ctx.mul_np(np.asarray(u)[:, None],
                                   zeta[None, :]).reshape(-1)
                reps.append(Mflat)
                pair_nz.append(dot(ctx, zeta, su) != 0)
        R = np.array(reps, dtype=ctx.dtype)
        th, _ = bulk.theta_batch(b, R)
        pnz = np.array(pair_nz)
        v1 = int(((th == m1) != pnz).sum())
        v2 = int(((th == m1 - 1) != ~pnz).sum())
        return SecondWeightReport(
            min_weight=w_min, second_weight=w_second,
            min_weight_classes=int((th == m1).sum()),
            second_weight_classes=int((th == m1 - 1).sum()),
            rank1_classes=len(reps),
            singular_classes=int((~pnz).sum()),
            quasi_singular_classes=int(pnz.sum()),
            correspondence_ok=(v1 == 0 and v2 == 0),
            mode="rank1+bounds", classes_checked=len(reps))

    if sys.m != 3:
        raise ValueError("full sweep is vectorized for n = 2 only; "
                         "use rank1_only elsewhere")
    total = num_classes(q, sys.k)
    if total > bulk.EXHAUSTIVE_CAP:
        raise ValueError("class count exceeds the exhaustive cap")
    opts = {"kind": "theta", "rank_pairing": True, "m1": m1}
    hist, extras = _fold_theta_hist(sys, opts, threads)
    assert int(hist[m1 + 1:].sum()) == 0, \
        "theta exceeded m(1); rank-1 maximality violated"
    return SecondWeightReport(
        min_weight=w_min, second_weight=w_second,
        min_weight_classes=int(hist[m1]),
        second_weight_classes=int(hist[m1 - 1]),
        rank1_classes=extras["rank1_count"],
        singular_classes=extras["sing_count"],
        quasi_singular_classes=extras["qsns_count"],
        correspondence_ok=(extras["w1_violations"] == 0
                           and extras["w2_violations"] == 0),
        mode="exhaustive", classes_checked=extras["classes"])


# ---------------------------------------------------------------------------
# group action
# ---------------------------------------------------------------------------

def act(ctx: FieldCtx, spec: AutSpec, g, M) -> np.ndarray:
    """Action g^(-1) M sigma(g) of an invertible g on the matrix space."""
    g = as_matrix(ctx, g)
    M = as_matrix(ctx, M)
    gi = invert(ctx, g)
    return matmul(ctx, matmul(ctx, gi, M), sigma_entrywise(ctx, spec, g))


def random_nonzero_matrix(ctx: FieldCtx, m: int, rng: SplitMix64) -> np.ndarray:
    while True:
        A = np.array(rng.elements(ctx.q, m * m),
                     dtype=ctx.dtype).reshape(m, m)
        if A.any():
            return A


def random_invertible(ctx: FieldCtx, m: int, rng: SplitMix64) -> np.ndarray:
    while True:
        A = random_nonzero_matrix(ctx, m, rng)
        if rank(ctx, A) == m:
            return A


def _conj_permutation(sys: ProjectiveSystem, g):
    """pi and lambda with sigma(g) X_i g^(-1) = lambda_i X_pi(i)."""
    ctx, spec = sys.ctx, sys.spec
    gs = sigma_entrywise(ctx, spec, g)
    gi = invert(ctx, g)
    imgs = bulk.conj_images(ctx, gs, sys.mats, gi).reshape(sys.N, sys.k)
    lead = (imgs != 0).argmax(axis=1)
    lam = imgs[np.arange(sys.N), lead].astype(ctx.dtype)
    inv_lam = ctx.inv_table[lam]
    reps = ctx.mul_np(inv_lam[:, None], imgs).astype(ctx.dtype)
    perm = np.empty(sys.N, dtype=np.int64)
    for i in range(sys.N):
        perm[i] = sys.index_of[reps[i].tobytes()]
    return perm, lam


def automorphism_check(sys: ProjectiveSystem, trials: int, seed: int,
                       nonkernel_probes: int = 1000) -> AutomorphismReport:
    """Randomized check that conjugation acts monomially on the code.

    For each sampled pair (g, M): the codeword of g^(-1) M sigma(g) must be
    the lambda-scaled pi-permutation of the codeword of M, where pi and
    lambda come from the conjugation action on the embedded flags; weights
    are compared as well.  Kernel probes assert that every scalar matrix
    with entry in the fixed subfield acts trivially, and that random
    non-kernel elements move at least one elementary-matrix codeword.
    """
    ctx, spec = sys.ctx, sys.spec
    rng = SplitMix64(seed)
    m = sys.m
    weight_failures = 0
    perm_failures = 0
    for _ in range(trials):
        g = random_invertible(ctx, m, rng)
        M = random_nonzero_matrix(ctx, m, rng)
        Y = act(ctx, spec, g, M)
        cM = eval_codeword(sys, M)
        cY = eval_codeword(sys, Y)
        if cY.weight != cM.weight:
            weight_failures += 1
        perm, lam = _conj_permutation(sys, g)
        expected = ctx.mul_np(lam, cM.values[perm]).astype(ctx.dtype)
        if not np.array_equal(cY.values, expected):
            perm_failures += 1

    # kernel: alpha I with alpha in the fixed subfield fixes every codeword
    fixed_scalars = [a for a in range(1, ctx.q) if spec.tlist[a] == a]
    kernel_ok = True
    for alpha in fixed_scalars:
        gI = scalar_mul(ctx, alpha, np.eye(m, dtype=ctx.dtype))
        for _ in range(4):
            M = random_nonzero_matrix(ctx, m, rng)
            Y = act(ctx, spec, gI, M)
            if not np.array_equal(Y, M.astype(ctx.dtype)):
                kernel_ok = False
            if not np.array_equal(eval_codeword(sys, Y).values,
                                  eval_codeword(sys, M).values):
                kernel_ok = False

    # non-kernel: some elementary matrix codeword must move
    moved_all = True
    probes = 0
    while probes < nonkernel_probes:
        g = random_invertible(ctx, m, rng)
        scal, alpha = _is_fixed_scalar(ctx, spec, g)
        if scal:
            continue
        probes += 1
        moved = False
        for a in range(m):
            for bcol in range(m):
                E = np.zeros((m, m), dtype=ctx.dtype)
                E[a, bcol] = 1
                Y = act(ctx, spec, g, E)
                if not np.array_equal(Y, E):
                    if not np.array_equal(eval_codeword(sys, Y).values,
                                          eval_codeword(sys, E).values):
                        moved = True
                        break
            if moved:
                break
        if not moved:
            moved_all = False
    return AutomorphismReport(trials=trials, seed=seed,
                              weight_failures=weight_failures,
                              permutation_failures=perm_failures,
                              kernel_elements_checked=len(fixed_scalars),
                              kernel_ok=kernel_ok,
                              nonkernel_trials=probes,
                              nonkernel_all_moved=moved_all)


def _is_fixed_scalar(ctx: FieldCtx, spec: AutSpec, g) -> tuple[bool, int]:
    g = np.asarray(g)
    alpha = int(g[0, 0])
    if alpha == 0 or spec.tlist[alpha] != alpha:
        return False, alpha
    expected = scalar_mul(ctx, alpha, np.eye(g.shape[0], dtype=ctx.dtype))
    return bool(np.array_equal(g.astype(ctx.dtype), expected)), alpha


# ---------------------------------------------------------------------------
# solution bounds (line and subspace)
# ---------------------------------------------------------------------------

def _solution_index_set(sys: ProjectiveSystem, M) -> set[int]:
    from .projgeom import class_index
    idx = set()
    for rep, _lam in _solutions(sys, M):
        idx.add(class_index(sys.ctx.q, sys.m, rep))
    return idx


def line_solution_bound(sys: ProjectiveSystem, M) -> dict:
    """Max number of solutions on a line of the dual space, against s + 1.

    Solutions are the functional classes with xi M = lambda sigma(xi),
    lambda != 0; for invertible M no line carries more than s + 1 of them.
    """
    ctx, spec = sys.ctx, sys.spec
    M = as_matrix(ctx, M, square=sys.m)
    if rank(ctx, M) != sys.m:
        raise ValueError("the line bound applies to invertible matrices")
    sols = _solution_index_set(sys, M)
    worst = 0
    worst_line = None
    for li, line in enumerate(enumerate_lines(ctx, sys.m)):
        hits = sum(1 for i in line if i in sols)
        if hits > worst:
            worst, worst_line = hits, li
    bound = spec.s + 1
    return {"solutions": len(sols), "max_on_a_line": worst,
            "line_index": worst_line, "bound": bound,
            "ok": worst <= bound}


def subspace_solution_bound(sys: ProjectiveSystem, M, samples: int = 100,
                            seed: int = 0) -> dict:
    """Solutions inside random subspaces of the dual, against (s^r-1)/(s-1).

    Draws `samples` subspaces of random dimension r in [1, n+1] and counts
    the solution classes each contains; for invertible M the count never
    exceeds (s^r - 1)/(s - 1).
    """
    from .projgeom import class_index, span_classes
    ctx, spec = sys.ctx, sys.spec
    M = as_matrix(ctx, M, square=sys.m)
    if rank(ctx, M) != sys.m:
        raise ValueError("the subspace bound applies to invertible matrices")
    sols = _solution_index_set(sys, M)
    rng = SplitMix64(seed)
    worst_ratio = 0.0
    violations = 0
    checked = 0
    while checked < samples:
        r = 1 + rng.below(sys.m)
        B = np.array(rng.elements(ctx.q, r * sys.m),
                     dtype=ctx.dtype).reshape(r, sys.m)
        if rank(ctx, B) != r:
            continue
        checked += 1
        inside = sum(1 for rep in span_classes(ctx, B)
                     if class_index(ctx.q, sys.m, rep) in sols)
        bound = (spec.s ** r - 1) // (spec.s - 1)
        if inside > bound:
            violations += 1
        if bound and inside / bound > worst_ratio:
            worst_ratio = inside / bound
    return {"samples": checked, "violations": violations,
            "worst_fill_ratio": worst_ratio, "ok": violations == 0}
