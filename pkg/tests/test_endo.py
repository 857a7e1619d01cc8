import numpy as np
import pytest

from stringbricks.endo import (DEFAULT_PRIME, SECOND_PRIME, band_module,
                               end_dim, end_dim_band, end_dim_string,
                               relation_defects, string_module)
from stringbricks.strings import CapExceeded


def test_simple_module(l3):
    for v in ("v1", "v2", "v3"):
        for i in (1, -1):
            rep = string_module(l3, l3.zero(v, i))
            assert rep.total_dim() == 1
            assert end_dim(l3, rep) == 1


def test_string_module_a(l3):
    a = l3.parse_literal("b1 a1'")
    rep = string_module(l3, a)
    assert rep.dims == {"v1": 1, "v2": 2, "v3": 0}
    # both b1 and a1 hit the single v1 basis vector
    assert rep.mats["b1"].shape == (1, 2)
    assert rep.mats["b1"].sum() == 1 and rep.mats["a1"].sum() == 1
    assert end_dim(l3, rep) == 1


def test_end_dims_hand_checked(l3):
    assert end_dim_string(l3, l3.parse_literal("b1 a1'")) == 1
    assert end_dim_string(l3, l3.parse_literal("b1 a1' a2' b2")) == 2


def test_relation_matrices_vanish(gam, l3, corpus):
    for ctx in (gam, l3, *corpus[:5]):
        for x in ctx.enumerate_strings(5):
            assert relation_defects(ctx, string_module(ctx, x)) == []
        for b in ctx.enumerate_bands(6):
            for l in (1, 2):
                assert relation_defects(ctx, band_module(ctx, b, l, 2)) == []


def test_band_module_dims(l3):
    b, _ = l3.is_band(l3.parse_literal("a2' b2"))
    rep = band_module(l3, b, 1, 5)
    assert rep.dims == {"v1": 0, "v2": 1, "v3": 1}
    assert rep.mats["a2"][0, 0] == 1
    assert rep.mats["b2"][0, 0] == 5
    rep2 = band_module(l3, b, 2, 5)
    assert rep2.dims == {"v1": 0, "v2": 2, "v3": 2}
    # b2 acts by the Jordan block J_2(5)
    assert np.array_equal(rep2.mats["b2"], np.array([[5, 1], [0, 5]]))
    assert end_dim(l3, rep2) >= 2


def test_band_lambda_zero_rejected(l3):
    b, _ = l3.is_band(l3.parse_literal("a2' b2"))
    with pytest.raises(ValueError):
        band_module(l3, b, 1, 0)


def test_end_dim_at_least_one(l3, gam):
    for ctx in (l3, gam):
        for x in ctx.enumerate_strings(5):
            assert end_dim_string(ctx, x) >= 1


def test_end_dim_inversion_invariant(l3, gam):
    for ctx in (l3, gam):
        for x in ctx.enumerate_strings(5):
            if x.is_zero():
                continue
            assert end_dim_string(ctx, x) == end_dim_string(ctx, x.inverse())


def test_band_value_rotation_inversion_invariant(l3):
    from stringbricks.strings import Band
    b, _ = l3.is_band(l3.parse_literal("a1' a2' b2 b1"))
    letters = b.string.letters
    base = end_dim_band(l3, b, 1, 2)
    for r in range(1, len(letters)):
        rot = l3.try_string(letters[r:] + letters[:r])
        assert rot is not None  # all rotations of a band are strings
        cand, _ = l3.is_band(rot)
        if cand is not None:
            assert end_dim_band(l3, cand, 1, 2) == base
    # the canonical form ranges over rotations of b and of its inverse
    canon = Band(l3.band_canonical(b))
    assert end_dim_band(l3, canon, 1, 2) == base


def test_two_primes_agree(l3, gam):
    for ctx in (l3, gam):
        for x in ctx.enumerate_strings(6):
            assert end_dim_string(ctx, x, DEFAULT_PRIME) == \
                end_dim_string(ctx, x, SECOND_PRIME)
        for b in ctx.enumerate_bands(6):
            for l in (1, 2):
                assert end_dim_band(ctx, b, l, 2, DEFAULT_PRIME) == \
                    end_dim_band(ctx, b, l, 2, SECOND_PRIME)


def test_dimension_cap(l3):
    x = l3.parse_literal("b1 a1' a2' b2")
    rep = string_module(l3, x)
    with pytest.raises(CapExceeded):
        end_dim(l3, rep, cap=3)
