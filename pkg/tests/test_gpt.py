"""Key generation, encryption, decryption, and the scrambler rank budget."""

import random

import pytest

from gptrank.errors import DecodeFailure, ParameterError
from gptrank.gpt import (
    GptParams,
    ScramblerMode,
    Variant,
    build_scrambler,
    decrypt,
    encrypt,
    keygen,
    lemma1_check,
    preset,
    public_key_size_bits,
)
from gptrank.fields import get_field
from gptrank.linalg import (
    identity_matrix,
    is_base_field,
    mat_mul,
    rank_ext,
    rank_over_base,
    sample_error,
    vec_mat_mul,
    vec_sub,
)

DESK = dict(q=2, N=12, n=12, k=6)

VARIANT_CASES = [
    GptParams(**DESK, t1=2, s_ext=1),
    GptParams(**DESK, t1=1, t2=2, s_ext=1, variant=4),
    GptParams(**DESK, t1=1, t2=2, s_ext=1, variant=5, p=1),
    GptParams(**DESK, t1=1, t2=1, s_ext=1, variant=6, m_cols=2),
]


def rand_message(params, rng):
    ctx = params.field()
    return [ctx.rand_elem(rng) for _ in range(params.pub_rows)]


# -- parameter validation ------------------------------------------------


def test_defaults_fill_the_decodability_budget():
    p3 = GptParams(q=2, N=28, n=28, k=14, t1=3)
    assert p3.t == 7 and p3.s_ext == 4
    p4 = GptParams(**DESK, t1=1, t2=1, variant=4)
    assert p4.s_ext == p4.t - 1
    p6 = GptParams(**DESK, t1=1, t2=1, variant=6, m_cols=1)
    assert p6.s_ext == p6.t - 2


def test_budget_overflow_rejected():
    with pytest.raises(ParameterError):
        GptParams(**DESK, t1=4)  # t1 > t
    with pytest.raises(ParameterError):
        GptParams(**DESK, t1=2, s_ext=2)  # 2 + 2 > t = 3
    with pytest.raises(ParameterError):
        GptParams(**DESK, t1=1, t2=2, s_ext=2, variant=4)  # 2 + 2 > 3
    with pytest.raises(ParameterError):
        GptParams(**DESK, t1=2, t2=1, s_ext=1, variant=6, m_cols=1)  # 1+2+1 > 3


def test_base_field_mode_forbids_extension_columns():
    p = GptParams(**DESK, t1=3, scrambler_mode="base_field")
    assert p.s_ext == 0
    with pytest.raises(ParameterError):
        GptParams(**DESK, t1=2, s_ext=1, scrambler_mode="base_field")
    # the full radius is available when no budget goes to the scrambler
    assert GptParams(**DESK, t1=3, scrambler_mode="base_field").t1 == 3


def test_variant_field_applicability():
    with pytest.raises(ParameterError):
        GptParams(**DESK, t1=2, t2=1)  # t2 without a concatenation variant
    with pytest.raises(ParameterError):
        GptParams(**DESK, t1=1, t2=1, variant=4, p=1)  # p needs variant 5
    with pytest.raises(ParameterError):
        GptParams(**DESK, t1=1, t2=1, variant=4, m_cols=2)  # m_cols needs 6
    with pytest.raises(ParameterError):
        GptParams(**DESK, t1=1, t2=1, variant=5)  # p required
    with pytest.raises(ParameterError):
        GptParams(**DESK, t1=1, t2=1, variant=6)  # m_cols required


def test_variant_and_mode_parsing():
    assert Variant.parse("simple") == Variant.SIMPLE
    assert Variant.parse(4) == Variant.EXTENDED
    assert Variant.parse("rectangular_s") == Variant.RECTANGULAR_S
    assert Variant.parse("6") == Variant.TWO_DISTORTION
    with pytest.raises(ParameterError):
        Variant.parse("7")
    assert ScramblerMode.parse("extension_field_V") == ScramblerMode.EXTENSION_FIELD
    assert ScramblerMode.parse("base") == ScramblerMode.BASE_FIELD
    with pytest.raises(ParameterError):
        ScramblerMode.parse("ext??")


def test_x_ordinary_rank_bounds():
    p = GptParams(**DESK, t1=2, t2=1, s_ext=0, variant=4)
    assert p.x_ordinary_rank == 2
    q = GptParams(**DESK, t1=2, t2=1, s_ext=0, variant=4, x_ordinary_rank=1)
    assert q.x_ordinary_rank == 1
    with pytest.raises(ParameterError):
        GptParams(**DESK, t1=2, t2=1, s_ext=0, variant=4, x_ordinary_rank=3)


def test_shape_properties():
    p = VARIANT_CASES[1]
    assert (p.pub_rows, p.pub_cols) == (6, 13)
    r = VARIANT_CASES[2]
    assert (r.pub_rows, r.pub_cols) == (5, 13)
    d = VARIANT_CASES[3]
    assert (d.pub_rows, d.pub_cols) == (6, 14)
    assert VARIANT_CASES[0].kept_offset == 0
    assert p.kept_offset == 1 and d.kept_offset == 2


def test_presets():
    p = preset("paper-28")
    assert (p.q, p.N, p.n, p.k, p.t1, p.s_ext) == (2, 28, 28, 28 // 2, 3, 4)
    d = preset("desk-12")
    assert (d.N, d.n, d.k, d.t1, d.s_ext) == (12, 12, 6, 2, 1)
    o = preset("desk-12", t1=1, s_ext=2)
    assert (o.t1, o.s_ext) == (1, 2)
    with pytest.raises(ParameterError):
        preset("desk-99")


def test_public_key_size():
    assert public_key_size_bits(preset("paper-28")) == 10976
    assert public_key_size_bits(preset("desk-12")) == 864


# -- scrambler structure ------------------------------------------------


def test_scrambler_pair_is_inverse():
    ctx = get_field(2, 12)
    rng = random.Random(61)
    for kept, s_ext in ((12, 0), (12, 2), (10, 1)):
        P, P_inv = build_scrambler(ctx, 12, s_ext, rng, kept=kept)
        assert mat_mul(ctx, P, P_inv) == identity_matrix(12)


def test_base_field_scrambler_is_base_field():
    ctx = get_field(2, 12)
    rng = random.Random(62)
    P, P_inv = build_scrambler(ctx, 12, 0, rng, base_field=True)
    assert is_base_field(ctx, P) and is_base_field(ctx, P_inv)
    assert mat_mul(ctx, P, P_inv) == identity_matrix(12)


def test_scrambled_error_rank_obeys_budget():
    # rank(e P_inv restricted to the kept block) <= rank(e) + s_ext
    ctx = get_field(2, 12)
    rng = random.Random(63)
    size, kept, s_ext = 14, 12, 2
    P, P_inv = build_scrambler(ctx, size, s_ext, rng, kept=kept)
    for r in (1, 2, 3):
        for _ in range(40):
            e = sample_error(ctx, size, r, rng)
            y = vec_mat_mul(ctx, e, P_inv)[size - kept :]
            assert rank_over_base(ctx, y) <= r + s_ext


def test_base_field_scrambler_preserves_rank_exactly():
    ctx = get_field(2, 12)
    rng = random.Random(64)
    P, P_inv = build_scrambler(ctx, 12, 0, rng, base_field=True)
    for r in (1, 2, 4):
        e = sample_error(ctx, 12, r, rng)
        assert rank_over_base(ctx, vec_mat_mul(ctx, e, P_inv)) == r


def test_unbudgeted_extension_scrambler_breaks_the_radius():
    # an all-extension inverse scrambler inflates error ranks past t,
    # which is why s_ext has to be budgeted at all
    ctx = get_field(2, 12)
    rng = random.Random(65)
    P, P_inv = build_scrambler(ctx, 12, 12, rng, kept=12)
    t = (12 - 6) // 2
    blown = 0
    for _ in range(50):
        e = sample_error(ctx, 12, 2, rng)
        if rank_over_base(ctx, vec_mat_mul(ctx, e, P_inv)) > t:
            blown += 1
    assert blown > 0


# -- keygen, encrypt, decrypt ------------------------------------------------


@pytest.mark.parametrize("params", VARIANT_CASES, ids=lambda p: f"variant{int(p.variant)}")
def test_roundtrip_extension_scrambler(params):
    rng = random.Random(int(params.variant))
    pub, priv = keygen(params, rng)
    assert len(pub.matrix) == params.pub_rows
    assert all(len(row) == params.pub_cols for row in pub.matrix)
    assert rank_ext(params.field(), pub.matrix) == params.pub_rows
    for _ in range(20):
        m = rand_message(params, rng)
        c = encrypt(pub, m, rng)
        assert decrypt(priv, c) == m


@pytest.mark.parametrize("params", VARIANT_CASES, ids=lambda p: f"variant{int(p.variant)}")
def test_roundtrip_base_field_scrambler(params):
    from dataclasses import replace

    base = replace(params, scrambler_mode=ScramblerMode.BASE_FIELD, s_ext=0)
    rng = random.Random(100 + int(params.variant))
    pub, priv = keygen(base, rng)
    for _ in range(10):
        m = rand_message(base, rng)
        c = encrypt(pub, m, rng)
        assert decrypt(priv, c) == m


def test_simple_ciphertext_error_has_exact_rank():
    params = VARIANT_CASES[0]
    rng = random.Random(67)
    pub, priv = keygen(params, rng)
    ctx = params.field()
    for _ in range(20):
        m = rand_message(params, rng)
        c = encrypt(pub, m, rng)
        e = vec_sub(ctx, c, vec_mat_mul(ctx, m, pub.matrix))
        assert rank_over_base(ctx, e) == params.t1


def test_concatenation_variants_bound_error_rank():
    params = VARIANT_CASES[1]
    rng = random.Random(68)
    pub, priv = keygen(params, rng)
    ctx = params.field()
    ranks = set()
    for _ in range(60):
        m = rand_message(params, rng)
        c = encrypt(pub, m, rng)
        e = vec_sub(ctx, c, vec_mat_mul(ctx, m, pub.matrix))
        r = rank_over_base(ctx, e)
        assert r <= params.t2
        ranks.add(r)
    assert len(ranks) > 1  # the bound is a bound, not a constant


def test_lemma_one_rank_budget_all_variants():
    for params in VARIANT_CASES:
        rng = random.Random(200 + int(params.variant))
        _, priv = keygen(params, rng)
        ctx = params.field()
        for _ in range(50):
            if params.error_rank_is_exact:
                e = sample_error(ctx, params.pub_cols, params.t1, rng)
            else:
                e = sample_error(ctx, params.pub_cols, params.error_rank, rng)
            assert lemma1_check(priv, e) <= params.t


def test_rectangular_message_is_shorter():
    params = VARIANT_CASES[2]
    assert params.pub_rows == params.k - params.p
    rng = random.Random(69)
    pub, priv = keygen(params, rng)
    m = rand_message(params, rng)
    assert len(m) == 5
    assert decrypt(priv, encrypt(pub, m, rng)) == m


def test_garbage_ciphertext_fails_loudly():
    params = VARIANT_CASES[0]
    rng = random.Random(70)
    pub, priv = keygen(params, rng)
    ctx = params.field()
    failures = 0
    for _ in range(20):
        junk = [ctx.rand_elem(rng) for _ in range(params.pub_cols)]
        try:
            decrypt(priv, junk)
        except DecodeFailure:
            failures += 1
    assert failures >= 18  # a random word essentially never sits near the code


def test_encrypt_validates_input():
    params = VARIANT_CASES[0]
    rng = random.Random(71)
    pub, priv = keygen(params, rng)
    with pytest.raises(ParameterError):
        encrypt(pub, [0] * (params.pub_rows + 1), rng)
    with pytest.raises(ValueError):
        encrypt(pub, [1 << 12] + [0] * (params.pub_rows - 1), rng)
    with pytest.raises(ParameterError):
        decrypt(priv, [0] * (params.pub_cols - 1))


def test_keygen_is_reproducible_from_seed():
    params = preset("desk-12")
    pub1, priv1 = keygen(params, random.Random(123))
    pub2, priv2 = keygen(params, random.Random(123))
    assert pub1.matrix == pub2.matrix
    assert priv1.code.g == priv2.code.g
    assert priv1.P == priv2.P and priv1.S == priv2.S
