"""Hyperplane classification, cardinalities and the two searches."""

import numpy as np
import pytest

from twistcode import (SearchBudgetExhausted, base_cardinality, classify,
                       find_fpf_collineation, find_spread, norm_proportional,
                       phi_fixed_points, quasi_singular_cardinality,
                       singular_cardinality, spread_type_cardinality, theta)
from twistcode.code import random_invertible, random_nonzero_matrix
from twistcode.linalg import pure_tensor
from twistcode.projgeom import class_reps_range, num_classes
from twistcode.rng import SplitMix64

from helpers import system


def test_cardinality_formulas():
    assert base_cardinality(4, 2) == 21
    assert singular_cardinality(4, 2) == 41
    assert quasi_singular_cardinality(4, 2) == 45
    assert spread_type_cardinality(4, 2) == 21
    assert base_cardinality(9, 3) == 8200


def test_classify_named_examples():
    ps = system(2, 2, 1, 2)
    E12 = np.zeros((3, 3), dtype=ps.ctx.dtype); E12[0, 1] = 1
    E11 = np.zeros((3, 3), dtype=ps.ctx.dtype); E11[0, 0] = 1
    h12 = classify(ps, E12)
    assert (h12.kind, h12.cardinality, h12.pairing) == ("singular", 41, 0)
    assert h12.is_hyperplane
    # the defining pair of a singular class is an incident flag
    ps.gamma.flag_index(h12.defining_point, h12.defining_functional)
    h11 = classify(ps, E11)
    assert (h11.kind, h11.cardinality) == ("quasi_singular", 45)
    assert h11.pairing != 0 and h11.is_hyperplane
    with pytest.raises(KeyError):
        ps.gamma.flag_index(h11.defining_point, h11.defining_functional)


def test_classify_all_rank_one_classes_small():
    ps = system(2, 2, 1, 2)
    ctx = ps.ctx
    counts = {"singular": 0, "quasi_singular": 0}
    P = num_classes(4, 3)
    reps = list(class_reps_range(4, 3, 0, P))
    for u in reps:
        for zeta in reps:
            M = pure_tensor(ctx, np.array(u, dtype=ctx.dtype),
                            np.array(zeta, dtype=ctx.dtype))
            rep = classify(ps, M, check_hyperplane=False)
            counts[rep.kind] += 1
            assert rep.rank == 1
            assert rep.cardinality + rep.weight == ps.N
    assert counts == {"singular": 105, "quasi_singular": 336}


def test_classify_all_rank_one_classes_octal():
    # sigma of order 3 here, so the twisted pairing really matters
    ps = system(2, 3, 1, 2)
    ctx = ps.ctx
    counts = {"singular": 0, "quasi_singular": 0}
    P = num_classes(8, 3)
    reps = list(class_reps_range(8, 3, 0, P))
    for u in reps:
        for zeta in reps:
            M = pure_tensor(ctx, np.array(u, dtype=ctx.dtype),
                            np.array(zeta, dtype=ctx.dtype))
            rep = classify(ps, M, check_hyperplane=False)
            counts[rep.kind] += 1
    assert counts == {"singular": 657, "quasi_singular": 4672}


def test_plain_and_theta_zero_classes():
    ps = system(2, 2, 1, 2)
    ident = np.eye(3, dtype=ps.ctx.dtype)
    h = classify(ps, ident)
    assert h.kind == "plain" and h.theta == 7 and h.pairing is None
    # a theta = 0 class stays plain at even n despite the matching count
    rng = SplitMix64(7)
    while True:
        M = random_invertible(ps.ctx, 3, rng)
        if theta(ps, M, check_identity=False).theta == 0:
            break
    h0 = classify(ps, M)
    assert h0.kind == "plain"
    assert h0.cardinality == spread_type_cardinality(4, 2)


def test_cardinality_weight_split_is_universal():
    for cfg in [(2, 2, 1, 2), (3, 2, 1, 2)]:
        ps = system(*cfg)
        rng = SplitMix64(13)
        for _ in range(15):
            M = random_nonzero_matrix(ps.ctx, 3, rng)
            rep = classify(ps, M, check_hyperplane=False)
            assert rep.cardinality + rep.weight == ps.N
            assert rep.is_hyperplane is None


def test_point_functional_duality_under_involution():
    # for sigma of order 2, the point map of M^T fixes exactly the
    # lambda != 0 part of theta(M); kernels explain the difference
    ps = system(2, 2, 1, 2)
    rng = SplitMix64(99)
    for _ in range(60):
        M = random_nonzero_matrix(ps.ctx, 3, rng)
        rep = theta(ps, M, check_identity=False)
        assert phi_fixed_points(ps, M.T) == rep.proportional_classes


def test_norm_proportional_examples():
    ps = system(2, 2, 1, 2)
    assert norm_proportional(ps.ctx, ps.spec, np.eye(3, dtype=ps.ctx.dtype))
    E11 = np.zeros((3, 3), dtype=ps.ctx.dtype); E11[0, 0] = 1
    assert not norm_proportional(ps.ctx, ps.spec, E11)
    # scaling never changes the answer
    two = np.eye(3, dtype=ps.ctx.dtype) * 2
    assert norm_proportional(ps.ctx, ps.spec, two)


def test_classify_rejects_zero():
    ps = system(2, 2, 1, 2)
    with pytest.raises(ValueError):
        classify(ps, np.zeros((3, 3), dtype=ps.ctx.dtype))


def test_find_spread_preconditions():
    with pytest.raises(ValueError):
        find_spread(system(2, 2, 1, 2))        # n even
    with pytest.raises(ValueError):
        find_spread(system(2, 3, 1, 1))        # sigma of order 3
    with pytest.raises(ValueError):
        find_spread(system(2, 2, 0, 1))        # identity twist


def test_find_spread_exhausts_with_constant_histogram():
    # every norm-one candidate fixes the full subfield subgeometry
    ps = system(2, 2, 1, 1)
    with pytest.raises(SearchBudgetExhausted) as info:
        find_spread(ps, attempts=80, seed=4)
    err = info.value
    assert err.attempts == 80 and err.seed == 4
    assert err.histogram == {3: 80}            # (s^2-1)/(s-1) every time
    assert "80" in str(err)


def test_find_fpf_small_success():
    ps = system(3, 2, 1, 1)                    # gcd(10, 2) = 2
    w = find_fpf_collineation(ps)
    assert w.theta == 0
    assert w.weight == ps.N == 10              # every coordinate nonzero
    assert w.cardinality == base_cardinality(9, 1) == 0
    assert w.model_degree == 4
    assert theta(ps, w.matrix).theta == 0


def test_find_fpf_larger_success():
    ps = system(2, 4, 2, 1)                    # q=16, sigma=x^4, gcd(17, 3)=1?
    # gcd((16^2-1)/15, 2^2-1) = gcd(17, 3) = 1: no twist can be free
    with pytest.raises(ValueError):
        find_fpf_collineation(ps)


def test_find_fpf_gate():
    for cfg in [(2, 2, 1, 3), (2, 2, 1, 2), (3, 2, 1, 2)]:
        with pytest.raises(ValueError):
            find_fpf_collineation(system(*cfg))
    with pytest.raises(ValueError):
        find_fpf_collineation(system(2, 2, 0, 1))   # identity twist
