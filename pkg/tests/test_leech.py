from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from e8voa.leech import (MINIMAL_SHAPES, build_leech, block_norm4_count,
                         certify_minimum, embed_sqrt2E8_cubed,
                         minimal_coset_survey, sigma_tilde_order)


def test_leech_lattice_invariants():
    ctx = build_leech()
    assert ctx.lattice.rank == 24
    assert ctx.lattice.det_gram() == 1
    assert ctx.lattice.is_even()


def test_minimum_norm_certified():
    assert certify_minimum(budget_seconds=600)


def test_embedding_gram_and_orthogonality():
    ctx = build_leech()
    emb = embed_sqrt2E8_cubed(ctx)
    assert emb.det_gram() == 256 ** 3
    for a in range(24):
        for b in range(24):
            if a // 8 != b // 8:
                assert emb.gram[a][b] == 0
    from e8voa.rootsys import e8_paper_data
    cart = e8_paper_data()["lattice"].gram
    for k in range(3):
        for fr in [ctx.block_frames[k]]:
            for i in range(8):
                for j in range(8):
                    dot = sum(x * y for x, y in zip(fr[i], fr[j]))
                    assert dot == 2 * cart[i][j]


def test_each_block_has_240_minimal_vectors():
    ctx = build_leech()
    for k in range(3):
        assert block_norm4_count(ctx, k) == 240


def test_sigma_tilde_orders_match_labels():
    for i, n in enumerate((1, 2, 3, 4, 5, 6, 4, 2, 3)):
        assert sigma_tilde_order(i) == n


def test_survey_basic_counts():
    survey = minimal_coset_survey()
    assert len(survey) == 256
    counts = Counter(int(c["min_norm"]) for c in survey)
    assert counts == {0: 1, 1: 120, 2: 135}


def test_survey_minimal_vector_counts():
    survey = minimal_coset_survey()
    for c in survey:
        if c["min_norm"] == 0:
            assert c["n_minimal"] == 1
        elif c["min_norm"] == 1:
            assert c["n_minimal"] == 2
        else:
            assert c["n_minimal"] == 16


def test_survey_norm2_splittings():
    survey = minimal_coset_survey()
    for c in survey:
        if c["min_norm"] != 2:
            assert c["split"] is None
            continue
        a, b = c["split"]
        assert sum(x * x for x in a) == 1
        assert sum(x * x for x in b) == 1
        assert sum(x * y for x, y in zip(a, b)) == 0
        assert tuple(x + y for x, y in zip(a, b)) == tuple(c["rep"])


def test_shape_list_is_exactly_eleven():
    assert len(MINIMAL_SHAPES) == 11
    norms = sorted(set(sum(F(x) * F(x) for x in s) for s in MINIMAL_SHAPES))
    assert norms == [0, 1, 2]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 24 - 1), st.integers(0, 2 ** 24 - 1))
def test_phase_map_is_additive(mask_a, mask_b):
    ctx = build_leech()
    basis = ctx.lattice.basis
    embed_sqrt2E8_cubed(ctx)
    frame = ctx.block_frames[0]
    from e8voa.rootsys import extended_e8_node
    glue = extended_e8_node(5).glue_coords
    beta = [F(0)] * 24
    for c, m in zip(glue, frame):
        for t in range(24):
            beta[t] += c * m[t]

    def vec(mask):
        out = [F(0)] * 24
        for bit in range(24):
            if mask >> bit & 1:
                for t in range(24):
                    out[t] += basis[bit][t]
        return out

    from e8voa.scalars import phase
    va, vb = vec(mask_a), vec(mask_b)
    ta = sum(x * y for x, y in zip(beta, va))
    tb = sum(x * y for x, y in zip(beta, vb))
    tsum = sum(x * y for x, y in zip(beta, [p + q for p, q in zip(va, vb)]))
    assert phase(ta) * phase(tb) == phase(tsum)
