import random

from stringbricks.bricks import (band_brick_automaton, band_brick_direct,
                                 band_brick_endo, string_brick_automaton,
                                 string_brick_direct, string_brick_endo)
from stringbricks.endo import end_dim_band, end_dim_string
from stringbricks.strings import Context
from stringbricks.words import BiInf, Letter, RightInf, Window


def L(tok):
    return Letter(tok[:-1], True) if tok.endswith("'") else Letter(tok, False)


def lits(text):
    return tuple(L(t) for t in text.split())


# --- named cases -----------------------------------------------------------------

def test_a_is_brick(l3):
    a = l3.parse_literal("b1 a1'")
    assert string_brick_direct(l3, a).verdict
    assert string_brick_automaton(l3, a).verdict
    assert end_dim_string(l3, a) == 1


def test_ab_is_not_brick(l3):
    ab = l3.parse_literal("b1 a1' a2' b2")
    rep = string_brick_direct(l3, ab)
    assert not rep.verdict
    w = rep.witness
    assert w is not None and w.content == "1(v2,+1)"
    assert (w.factor.start, w.factor.end) == (0, 0)
    assert (w.image.start, w.image.end) == (4, 4)
    assert not string_brick_automaton(l3, ab).verdict
    assert end_dim_string(l3, ab) == 2


def test_band_brick_named(l3):
    b, _ = l3.is_band(l3.parse_literal("a2' b2"))
    for lam in (1, 2, 5):
        assert band_brick_direct(l3, b, 1, lam).verdict
    assert band_brick_automaton(l3, b, 1).verdict
    assert end_dim_band(l3, b, 1, 1) == 1
    rep = band_brick_direct(l3, b, 2, 1)
    assert not rep.verdict and rep.reason == "l must be 1"
    assert not band_brick_automaton(l3, b, 2).verdict
    assert end_dim_band(l3, b, 2, 1) >= 2


def test_rotated_aabb_band_not_brick(l3):
    b, _ = l3.is_band(l3.parse_literal("a1' b1 a1' a2' b2 a2' b2 b1"))
    assert b is not None
    rep = band_brick_direct(l3, b, 1, 1)
    assert not rep.verdict
    assert rep.witness is not None and rep.witness.content == "1(v2,+1)"
    assert not band_brick_automaton(l3, b, 1).verdict
    assert end_dim_band(l3, b, 1, 1) >= 2


def test_periodic_string_not_brick(l3):
    q = lits("a2' b2")
    rep = string_brick_direct(l3, BiInf(q, (), q))
    assert not rep.verdict and rep.periodicity == "periodic"
    rep2 = string_brick_automaton(l3, BiInf(q, (), q))
    assert not rep2.verdict and rep2.periodicity == "periodic"
    rep3 = string_brick_direct(l3, RightInf((), q))
    assert not rep3.verdict


# --- the oracle triangle -----------------------------------------------------------

def triangle_strings(ctx, max_len):
    for x in ctx.enumerate_strings(max_len):
        d = string_brick_direct(ctx, x).verdict
        a = string_brick_automaton(ctx, x).verdict
        e = end_dim_string(ctx, x) == 1
        assert d == a == e, Context.format_literal(x)


def test_triangle_lambda3_gamma(l3, gam):
    triangle_strings(l3, 8)
    triangle_strings(gam, 8)


def test_triangle_corpus_sample(corpus):
    for ctx in corpus[:6]:
        triangle_strings(ctx, 6)


def test_band_triangle(l3, gam):
    for ctx in (l3, gam):
        for b in ctx.enumerate_bands(8):
            for l in (1, 2):
                for lam in (1, 2):
                    d = band_brick_direct(ctx, b, l, lam).verdict
                    a = band_brick_automaton(ctx, b, l).verdict
                    e = end_dim_band(ctx, b, l, lam) == 1
                    assert d == a == e
                    if l == 2:
                        assert not d


# --- invariances ----------------------------------------------------------------

def test_inversion_invariance(l3, gam):
    for ctx in (l3, gam):
        for x in ctx.enumerate_strings(6):
            if x.is_zero():
                continue
            assert string_brick_direct(ctx, x).verdict == \
                string_brick_direct(ctx, x.inverse()).verdict


def test_band_rotation_invariance(l3):
    b, _ = l3.is_band(l3.parse_literal("a1' a2' b2 b1"))
    letters = b.string.letters
    base = band_brick_direct(l3, b, 1, 1).verdict
    for r in range(1, len(letters)):
        rot = l3.try_string(letters[r:] + letters[:r])
        cand, _ = l3.is_band(rot)
        if cand is not None:
            assert band_brick_direct(l3, cand, 1, 1).verdict == base


def test_band_lambda_invariance(l3, gam):
    for ctx in (l3, gam):
        for b in ctx.enumerate_bands(6):
            verdicts = {band_brick_direct(ctx, b, 1, lam).verdict for lam in (1, 2, 5)}
            assert len(verdicts) == 1
            dims = {end_dim_band(ctx, b, 1, lam) for lam in (1, 2, 5)}
            assert len(dims) == 1


def test_witness_bound_soundness(l3, gam, corpus):
    for ctx in (l3, gam, *corpus):
        for b in ctx.enumerate_bands(8):
            w1 = band_brick_direct(ctx, b, 1, 1, length_bound_factor=1).witness
            w3 = band_brick_direct(ctx, b, 1, 1, length_bound_factor=3).witness
            assert (w1 is None) == (w3 is None)


def _is_inverse_token(tok):
    return tok is not None and tok.endswith("'")


def test_witness_replays(l3, gam, corpus):
    # every reported witness re-classifies: factor boundaries are
    # (inverse before, direct after), image boundaries the mirror
    for ctx in (l3, gam, *corpus[:5]):
        for x in ctx.enumerate_strings(6):
            rep = string_brick_direct(ctx, x)
            if rep.witness is None:
                continue
            w = rep.witness
            assert w.factor.before is None or _is_inverse_token(w.factor.before)
            assert w.factor.after is None or not _is_inverse_token(w.factor.after)
            assert w.image.before is None or not _is_inverse_token(w.image.before)
            assert w.image.after is None or _is_inverse_token(w.image.after)


def test_endo_reports(l3):
    a = l3.parse_literal("b1 a1'")
    rep = string_brick_endo(l3, a)
    assert rep.verdict and rep.method == "endo" and "end_dim=1" in rep.reason
    b, _ = l3.is_band(l3.parse_literal("a2' b2"))
    rep = band_brick_endo(l3, b, 2, 1)
    assert not rep.verdict and "end_dim=2" in rep.reason


def test_automaton_on_arrow_alphabet_agrees(l3, gam):
    # the debugging flag evaluates over M_Lambda instead of the binary MIA
    for ctx in (l3, gam):
        for x in ctx.enumerate_strings(5):
            assert string_brick_automaton(ctx, x, use_binary=False).verdict == \
                string_brick_automaton(ctx, x, use_binary=True).verdict


def test_window_direct_matches_automaton(l3):
    rng = random.Random(13)
    blocks = {"a": lits("b1 a1'"), "b": lits("a2' b2")}
    for _ in range(20):
        word = "".join(rng.choice("ab") for _ in range(rng.randint(4, 12)))
        letters = tuple(s for c in word for s in blocks[c])
        win = Window(letters, False, "random", left_closed=False, right_closed=False)
        d = string_brick_direct(l3, win)
        a = string_brick_automaton(l3, win)
        assert (d.witness is None) == (a.witness is None)
