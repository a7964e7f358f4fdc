"""Code construction, distance, and the syndrome decoder against ground truth."""

import random

import pytest

from gptrank.attacks import BruteForceDecoder
from gptrank.errors import DecodeFailure, ParameterError
from gptrank.fields import get_field
from gptrank.gabidulin import GabidulinCode, moore_matrix
from gptrank.linalg import (
    mat_mul,
    rank_over_base,
    sample_error,
    transpose,
    vec_add,
    vec_sub,
)


def test_moore_matrix_frozen_row():
    # g = (1, alpha, alpha^2, alpha^3) in GF(2^4); squaring each entry gives
    # (1, alpha^2, alpha + 1, alpha^3 + alpha^2)
    ctx = get_field(2, 4)
    g = [1, 2, 4, 8]
    M = moore_matrix(ctx, g, 2)
    assert M[0] == [1, 2, 4, 8]
    assert M[1] == [1, 4, 3, 12]


def test_moore_matrix_start_offset():
    ctx = get_field(2, 8)
    rng = random.Random(41)
    g = [ctx.rand_elem(rng) for _ in range(5)]
    M = moore_matrix(ctx, g, 3, start=2)
    for i in range(3):
        for j in range(5):
            assert M[i][j] == ctx.frobenius(g[j], i + 2)


def test_generator_is_moore_of_g():
    ctx = get_field(2, 8)
    rng = random.Random(42)
    code = GabidulinCode.random(ctx, 7, 3, rng)
    assert code.G == moore_matrix(ctx, code.g, 3)
    assert rank_over_base(ctx, code.g) == 7


def test_parity_check_annihilates_generator():
    rng = random.Random(43)
    for q, N, n, k in ((2, 8, 8, 3), (2, 10, 7, 4), (3, 5, 5, 2)):
        ctx = get_field(q, N)
        code = GabidulinCode.random(ctx, n, k, rng)
        prod = mat_mul(ctx, code.G, transpose(code.H))
        assert all(v == 0 for row in prod for v in row)
        assert rank_over_base(ctx, code.h) == n


def test_rejects_dependent_evaluation_points():
    ctx = get_field(2, 6)
    with pytest.raises(ParameterError):
        GabidulinCode(ctx, [1, 2, 3], 1)  # 3 = 1 + 2 over F_2
    with pytest.raises(ParameterError):
        GabidulinCode(ctx, [1, 2, 4], 3)  # k must stay below n
    with pytest.raises(ParameterError):
        GabidulinCode(get_field(2, 4), [1, 2, 4, 8, 5], 2)  # n above N


def test_encode_is_linear():
    ctx = get_field(2, 8)
    rng = random.Random(44)
    code = GabidulinCode.random(ctx, 6, 2, rng)
    m1 = [ctx.rand_elem(rng) for _ in range(2)]
    m2 = [ctx.rand_elem(rng) for _ in range(2)]
    s = [ctx.add(a, b) for a, b in zip(m1, m2)]
    assert code.encode(s) == vec_add(ctx, code.encode(m1), code.encode(m2))


def test_minimum_distance_is_maximal():
    # rank distance d = n - k + 1, verified by enumerating the whole code
    rng = random.Random(45)
    ctx = get_field(2, 5)
    code = GabidulinCode.random(ctx, 5, 2, rng)
    assert BruteForceDecoder(code).min_distance() == 4
    ctx4 = get_field(2, 4)
    code4 = GabidulinCode.random(ctx4, 4, 2, rng)
    assert BruteForceDecoder(code4).min_distance() == 3


def test_decode_clean_word():
    ctx = get_field(2, 8)
    rng = random.Random(46)
    code = GabidulinCode.random(ctx, 8, 3, rng)
    m = [ctx.rand_elem(rng) for _ in range(3)]
    got_m, got_e = code.decode(code.encode(m))
    assert got_m == m
    assert got_e == [0] * 8


@pytest.mark.parametrize("q,N,n,k", [(2, 8, 8, 3), (2, 12, 12, 6), (3, 5, 5, 1)])
def test_decode_roundtrip_all_ranks(q, N, n, k):
    ctx = get_field(q, N)
    rng = random.Random(100 * n + k)
    code = GabidulinCode.random(ctx, n, k, rng)
    for r in range(code.t + 1):
        for _ in range(8):
            m = [ctx.rand_elem(rng) for _ in range(k)]
            e = sample_error(ctx, n, r, rng)
            got_m, got_e = code.decode(vec_add(ctx, code.encode(m), e))
            assert got_m == m
            assert got_e == e


def test_decoder_agrees_with_exhaustive_search():
    ctx = get_field(2, 4)
    rng = random.Random(47)
    code = GabidulinCode.random(ctx, 4, 2, rng)
    oracle = BruteForceDecoder(code)
    for _ in range(60):
        y = [ctx.rand_elem(rng) for _ in range(4)]
        m_o, c_o, d, unique = oracle.nearest(y)
        if d <= code.t and unique:
            m, e = code.decode(y)
            assert m == m_o
            assert vec_sub(ctx, y, e) == c_o
        else:
            with pytest.raises(DecodeFailure):
                code.decode(y)


def test_beyond_radius_never_silently_wrong():
    # rank t + 1 errors either fail loudly or return a self-consistent pair
    ctx = get_field(2, 10)
    rng = random.Random(48)
    code = GabidulinCode.random(ctx, 10, 4, rng)
    failures = 0
    for _ in range(30):
        m = [ctx.rand_elem(rng) for _ in range(4)]
        e = sample_error(ctx, 10, code.t + 1, rng)
        y = vec_add(ctx, code.encode(m), e)
        try:
            got_m, got_e = code.decode(y)
        except DecodeFailure:
            failures += 1
            continue
        assert vec_add(ctx, code.encode(got_m), got_e) == y
        assert rank_over_base(ctx, got_e) <= code.t
    assert failures > 0


def test_decode_rejects_wrong_length():
    ctx = get_field(2, 8)
    rng = random.Random(49)
    code = GabidulinCode.random(ctx, 6, 2, rng)
    with pytest.raises(ParameterError):
        code.decode([0] * 5)


def test_syndromes_of_codeword_vanish():
    ctx = get_field(2, 8)
    rng = random.Random(50)
    code = GabidulinCode.random(ctx, 7, 3, rng)
    m = [ctx.rand_elem(rng) for _ in range(3)]
    assert all(s == 0 for s in code.syndromes(code.encode(m)))
