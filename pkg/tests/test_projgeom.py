"""Projective class enumeration, indexing, lines and fixed classes."""

import pytest

from twistcode import class_index, class_reps_range, enumerate_pg, \
    make_autspec, make_field, num_classes, sigma_fixed_points
from twistcode.projgeom import (enumerate_lines, incident, line_through,
                                normalize_tuple, span_classes)

import naive_ref
from helpers import prime_power


def test_enumeration_matches_naive_order():
    for q, k in [(4, 3), (8, 2), (9, 3), (16, 2)]:
        ctx = make_field(*prime_power(q))
        want = naive_ref.naive_class_reps(q, k)
        assert num_classes(q, k) == len(want)
        got = [tuple(int(e) for e in r)
               for r in class_reps_range(q, k, 0, len(want))]
        assert got == want


def test_rep_at_agrees_with_full_enumeration():
    q, k = 9, 3
    reps = naive_ref.naive_class_reps(q, k)
    for idx in [0, 1, 17, 90, len(reps) - 1]:
        assert naive_ref.naive_class_rep_at(q, k, idx) == reps[idx]


def test_class_index_inverts_enumeration():
    ctx = make_field(2, 2)
    pg = enumerate_pg(ctx, 3)
    assert len(pg) == num_classes(4, 3) == 21
    for cls in pg:
        assert class_index(4, 3, cls.rep) == cls.index
    with pytest.raises(ValueError):
        class_index(4, 3, (0, 2, 1))          # not normalized
    with pytest.raises(ValueError):
        class_index(4, 3, (0, 0, 0))


def test_normalize_tuple_matches_naive():
    ctx = make_field(2, 3)
    nf = naive_ref.make_naive(8)
    from twistcode.rng import SplitMix64
    rng = SplitMix64(23)
    for _ in range(100):
        v = rng.elements(8, 3)
        if not any(v):
            continue
        assert normalize_tuple(ctx, v) == naive_ref.naive_normalize(nf, v)


def test_incidence_is_the_dot_test():
    ctx = make_field(3, 2)
    nf = naive_ref.make_naive(9)
    pg = enumerate_pg(ctx, 2)
    for pt in pg:
        for fn in pg:
            want = naive_ref.naive_dot(nf, pt.rep, fn.rep) == 0
            assert incident(ctx, pt.rep, fn.rep) == want


def test_lines_partition_pairs():
    # every line has q+1 points; every point pair lies on exactly one line
    for q, dim in [(4, 3), (9, 2)]:
        ctx = make_field(*prime_power(q))
        P = num_classes(q, dim)
        lines = enumerate_lines(ctx, dim)
        assert all(len(ln) == q + 1 for ln in lines)
        pair_count = sum(len(ln) * (len(ln) - 1) // 2 for ln in lines)
        assert pair_count == P * (P - 1) // 2
        assert len(set(lines)) == len(lines)


def test_line_through_is_symmetric_and_closed():
    ctx = make_field(2, 2)
    a, b = (1, 0, 2), (0, 1, 3)
    ln = line_through(ctx, a, b)
    assert len(ln) == 5
    assert set(line_through(ctx, b, a)) == set(ln)
    for rep in ln:
        assert class_index(4, 3, rep) >= 0     # all normalized


def test_span_classes_sizes():
    ctx = make_field(2, 2)
    # one generator: the class itself; two independent: a full line
    assert span_classes(ctx, [(1, 0, 0)]) == [(1, 0, 0)]
    two = span_classes(ctx, [(1, 0, 0), (0, 1, 0)])
    assert len(two) == 5 and two == sorted(two)
    # dependent generators collapse
    assert span_classes(ctx, [(1, 0, 0), (2, 0, 0)]) == [(1, 0, 0)]


def test_sigma_fixed_points_are_the_subfield_classes():
    cases = [(4, 1, 3, 7), (8, 1, 3, 7), (9, 1, 4, 40), (16, 2, 2, 5)]
    for q, j, dim, count in cases:
        ctx = make_field(*prime_power(q))
        spec = make_autspec(ctx, j)
        fixed = sigma_fixed_points(ctx, spec, dim)
        assert len(fixed) == count == (spec.s ** dim - 1) // (spec.s - 1)
        for cls in fixed:
            assert tuple(int(spec.tlist[e]) for e in cls.rep) == tuple(cls.rep)
