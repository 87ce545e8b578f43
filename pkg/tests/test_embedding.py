"""The twisted embedding of flags into matrix space."""

import numpy as np
import pytest

from twistcode import embed_flag, make_autspec, make_field, make_system
from twistcode.embedding import saturation_membership
from twistcode.linalg import rank

import naive_ref
from helpers import golden, prime_power, system


def test_embedded_flats_match_golden():
    want = golden("embedding_4_2_1")
    ps = system(2, 2, 1, 2)
    assert ps.N == len(want["flats"]) == 105
    assert ps.flat.tolist() == want["flats"]
    for fl, (x, xi) in zip(ps.gamma.flags, want["flags"]):
        assert list(fl.point.rep) == x and list(fl.functional.rep) == xi


def test_embedding_matches_naive_oracle():
    for q, n, j in [(8, 1, 1), (9, 1, 1), (4, 2, 1)]:
        ps = system(*prime_power(q), j, n)
        nf = naive_ref.make_naive(q)
        for flag, got in zip(naive_ref.naive_flags(nf, n), ps.flat):
            assert naive_ref.naive_embed(nf, j, flag) == tuple(got.tolist())


def test_span_ranks():
    assert system(2, 2, 1, 2).span_rank == 9     # full ambient space
    assert system(2, 2, 0, 2).span_rank == 8     # identity twist drops one
    assert system(2, 2, 1, 3).span_rank == 16
    assert system(3, 2, 1, 2).span_rank == 9


def test_embedding_is_injective():
    ps = system(2, 2, 1, 2)
    assert len(ps.index_of) == ps.N
    for i, fl in enumerate(ps.gamma.flags):
        assert ps.class_of(ps.mats[i]) == i == fl.index


def test_members_are_rank_one_tensors():
    ps = system(3, 2, 1, 1)
    ctx, spec = ps.ctx, ps.spec
    for i, fl in enumerate(ps.gamma.flags):
        X = ps.mats[i]
        assert rank(ctx, X) == 1
        x, xi = fl.point.rep, fl.functional.rep
        for r in range(ps.m):
            for c in range(ps.m):
                want = ctx.mul(int(spec.tlist[x[r]]), xi[c])
                assert int(X[r, c]) == want


def test_embed_flag_normalizes():
    ps = system(2, 2, 1, 2)
    X = embed_flag(ps.ctx, ps.spec, ps.gamma.flags[17])
    lead = X.reshape(-1)[np.flatnonzero(X.reshape(-1))[0]]
    assert lead == 1


def test_saturation_membership_agrees_with_the_codeword():
    from twistcode import eval_codeword
    ps = system(2, 2, 1, 2)
    ctx, spec = ps.ctx, ps.spec
    M = ps.mats[11]
    cw = eval_codeword(ps, M)
    hits = 0
    for fl, val in zip(ps.gamma.flags, cw.values.tolist()):
        member = saturation_membership(ctx, spec, fl.point.rep,
                                       fl.functional.rep, M)
        assert member == (val == 0)
        hits += member
    assert 0 < hits < ps.N


def test_make_system_validation():
    with pytest.raises(ValueError):
        make_system(2, 2, 1, 0)
    with pytest.raises(ValueError):
        make_system(4, 1, 0, 2)
