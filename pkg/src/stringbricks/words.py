"""Alphabet-generic words over signed alphabets.

A word lives over an alphabet A together with formal inverses A'; letters are
(symbol, inverted) pairs.  Infinite words exist only as eventually periodic
representations (right-, left- or two-sided) or as finite windows sampled from
a generated word.  All values are immutable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union


class WordError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Letter:
    """A base symbol or its formal inverse; (b')' == b."""

    sym: str
    inv: bool = False

    def inverse(self) -> "Letter":
        return Letter(self.sym, not self.inv)

    def __str__(self) -> str:
        return self.sym + "'" if self.inv else self.sym


Letters = tuple  # tuple[Letter, ...]


def letters(*items: Letter) -> Letters:
    return tuple(items)


def inv_seq(seq: Sequence[Letter]) -> Letters:
    """Letterwise inverse with order reversal."""
    return tuple(x.inverse() for x in reversed(seq))


def primitive_root(seq: Sequence[Letter]) -> Letters:
    """Shortest r with seq = r^k."""
    seq = tuple(seq)
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and seq == seq[:d] * (n // d):
            return seq[:d]
    return seq


def _rot_left(seq: Letters) -> Letters:
    return seq[1:] + seq[:1]


def _rot_right(seq: Letters) -> Letters:
    return seq[-1:] + seq[:-1]


@dataclass(frozen=True)
class Finite:
    letters: Letters

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))


@dataclass(frozen=True)
class RightInf:
    """prefix . period^infinity; the period is primitive and the prefix is
    shortened as far as rotation allows, so equal words get equal reps."""

    prefix: Letters
    period: Letters

    def __post_init__(self):
        prefix, period = tuple(self.prefix), tuple(self.period)
        if not period:
            raise WordError("empty period")
        period = primitive_root(period)
        while prefix and prefix[-1] == period[-1]:
            period = _rot_right(period)
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)


@dataclass(frozen=True)
class LeftInf:
    """period^infinity . suffix, normalized like RightInf."""

    period: Letters
    suffix: Letters

    def __post_init__(self):
        period, suffix = tuple(self.period), tuple(self.suffix)
        if not period:
            raise WordError("empty period")
        period = primitive_root(period)
        while suffix and suffix[0] == period[0]:
            period = _rot_left(period)
            suffix = suffix[1:]
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "suffix", suffix)


@dataclass(frozen=True)
class BiInf:
    """left_period^infinity . core . right_period^infinity.

    The core is absorbed into the periods (left side first) so that purely
    periodic words normalize to an empty core with equal periods.
    """

    left_period: Letters
    core: Letters
    right_period: Letters

    def __post_init__(self):
        lp, core, rp = tuple(self.left_period), tuple(self.core), tuple(self.right_period)
        if not lp or not rp:
            raise WordError("empty period")
        lp, rp = primitive_root(lp), primitive_root(rp)
        while core and core[0] == lp[0]:
            lp = _rot_left(lp)
            core = core[1:]
        while core and core[-1] == rp[-1]:
            rp = _rot_right(rp)
            core = core[:-1]
        object.__setattr__(self, "left_period", lp)
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "right_period", rp)


@dataclass(frozen=True)
class Window:
    """A finite view of a word that may extend beyond either edge.

    left_closed / right_closed record which edges are genuine word ends;
    certified_aperiodic is set by generators that can certify aperiodicity of
    the full word (e.g. an irrational-slope Sturmian generator).
    """

    letters: Letters
    certified_aperiodic: bool = False
    origin: str = ""
    left_closed: bool = False
    right_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))


WordRep = Union[Finite, RightInf, LeftInf, BiInf, Window]


def invert(w: WordRep) -> WordRep:
    """Letterwise inversion with order reversal; swaps left/right infinitude."""
    if isinstance(w, Finite):
        return Finite(inv_seq(w.letters))
    if isinstance(w, RightInf):
        return LeftInf(period=inv_seq(w.period), suffix=inv_seq(w.prefix))
    if isinstance(w, LeftInf):
        return RightInf(prefix=inv_seq(w.suffix), period=inv_seq(w.period))
    if isinstance(w, BiInf):
        return BiInf(inv_seq(w.right_period), inv_seq(w.core), inv_seq(w.left_period))
    if isinstance(w, Window):
        return Window(inv_seq(w.letters), w.certified_aperiodic, w.origin,
                      left_closed=w.right_closed, right_closed=w.left_closed)
    raise WordError(f"not a word rep: {w!r}")


def unfold_right(w: WordRep, n: int) -> Letters:
    """First n letters reading rightward from the left anchor (all of them for
    finite reps shorter than n)."""
    if isinstance(w, (Finite, Window)):
        return w.letters[:n]
    if isinstance(w, RightInf):
        out = list(w.prefix[:n])
        while len(out) < n:
            out.extend(w.period)
        return tuple(out[:n])
    raise WordError(f"cannot unfold {type(w).__name__} rightward")


def unfold_left(w: WordRep, n: int) -> Letters:
    """Last n letters of a leftward rep, in left-to-right order."""
    if isinstance(w, (Finite, Window)):
        return w.letters[-n:] if n else ()
    if isinstance(w, LeftInf):
        out = list(w.suffix)
        while len(out) < n:
            out = list(w.period) + out
        return tuple(out[-n:]) if n else ()
    raise WordError(f"cannot unfold {type(w).__name__} leftward")


def rep_length(w: WordRep) -> int | None:
    """Letter count for finite reps, None for infinite ones."""
    if isinstance(w, (Finite, Window)):
        return len(w.letters)
    return None


@dataclass(frozen=True)
class SubwordHits:
    """Occurrence offsets inside the canonical search domain.

    For infinite reps the domain covers the preperiod plus two periods on each
    infinite side and `period` flags that occurrences repeat with that period
    beyond it; offsets for BiInf are relative to the core start (negative =
    left of the seam), for LeftInf relative to the right end (all negative).
    """

    offsets: tuple[int, ...]
    period: int | None
    domain: tuple[int, int]


def _scan(hay: Sequence[Letter], needle: Sequence[Letter], base: int) -> list[int]:
    k = len(needle)
    return [i + base for i in range(len(hay) - k + 1) if tuple(hay[i:i + k]) == tuple(needle)]


def find_subword(needle: Sequence[Letter], hay: WordRep) -> SubwordHits:
    """All occurrences of a finite nonempty needle in hay, canonically reported."""
    needle = tuple(needle)
    if not needle:
        raise WordError("empty needle")
    k = len(needle)
    if isinstance(hay, (Finite, Window)):
        offs = _scan(hay.letters, needle, 0)
        return SubwordHits(tuple(offs), None, (0, len(hay.letters)))
    if isinstance(hay, RightInf):
        p = len(hay.period)
        dom = len(hay.prefix) + 2 * p
        text = unfold_right(hay, dom + k + p)
        offs = [o for o in _scan(text, needle, 0) if o < dom]
        periodic = any(o >= len(hay.prefix) for o in offs)
        return SubwordHits(tuple(offs), p if periodic else None, (0, dom))
    if isinstance(hay, LeftInf):
        p = len(hay.period)
        dom = len(hay.suffix) + 2 * p
        text = unfold_left(hay, dom + k + p)
        # offsets are needle start positions; the last letter sits at -1, so an
        # occurrence filling the last k letters starts at -k
        offs = [o - len(text) for o in _scan(text, needle, 0)]
        offs = [o for o in offs if o + k > -dom]
        periodic = any(o + k <= -len(hay.suffix) for o in offs)
        return SubwordHits(tuple(offs), p if periodic else None, (-dom, 0))
    if isinstance(hay, BiInf):
        lp, rp = len(hay.left_period), len(hay.right_period)
        lext, rext = lp + k + lp, len(hay.core) + rp + k + rp
        left = unfold_left(LeftInf(hay.left_period, ()), lext)
        right = unfold_right(RightInf((), hay.right_period), rext - len(hay.core))
        text = left + hay.core + right
        base = -lext
        dom = (-lp, len(hay.core) + rp)
        offs = [o for o in _scan(text, needle, base) if dom[0] <= o < dom[1]]
        periodic = any(o < 0 or o + k > len(hay.core) for o in offs)
        per = math.lcm(lp, rp)
        return SubwordHits(tuple(offs), per if periodic else None, dom)
    raise WordError(f"not a word rep: {hay!r}")


FINITE = "finite"
PERIODIC = "periodic"
ALMOST_LEFT = "almost-periodic-left"
ALMOST_RIGHT = "almost-periodic-right"
ALMOST_BOTH = "almost-periodic-both"
APERIODIC = "aperiodic-certified"
UNKNOWN = "unknown-window"


def classify_periodicity(w: WordRep) -> str:
    """Periodicity class of the represented word.

    Eventually periodic reps are periodic when the preperiod/core is absorbed
    by normalization, almost periodic otherwise; windows are aperiodic only
    when their generator certified it.
    """
    if isinstance(w, Finite):
        return FINITE
    if isinstance(w, RightInf):
        return PERIODIC if not w.prefix else ALMOST_RIGHT
    if isinstance(w, LeftInf):
        return PERIODIC if not w.suffix else ALMOST_LEFT
    if isinstance(w, BiInf):
        if not w.core and w.left_period == w.right_period:
            return PERIODIC
        return ALMOST_BOTH
    if isinstance(w, Window):
        return APERIODIC if w.certified_aperiodic else UNKNOWN
    raise WordError(f"not a word rep: {w!r}")


def complexity_profile(w: Window, max_len: int) -> list[int]:
    """p(k) = number of distinct length-k subwords of the window, k = 1..max_len.

    Requires window length >= 4*max_len so that edge truncation cannot hide
    factors at the requested lengths.
    """
    if not isinstance(w, Window):
        raise WordError("complexity_profile expects a Window")
    n = len(w.letters)
    if n < 4 * max_len:
        raise WordError(f"window too short: {n} < 4*{max_len}")
    out = []
    for k in range(1, max_len + 1):
        seen = {w.letters[i:i + k] for i in range(n - k + 1)}
        out.append(len(seen))
    return out
