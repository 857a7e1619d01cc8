"""Strings, bands and factor/image substrings over a validated presentation.

A string is a composable, non-backtracking syllable sequence avoiding the
relations and their inverses; zero-length strings carry a vertex and a side
sign.  The Context object binds a presentation with its sign maps and is the
factory for all string values.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .algebra import Presentation, SignMaps, solve_sign_maps
from .words import (BiInf, Finite, LeftInf, Letter, RightInf, WordRep, Window,
                    inv_seq, unfold_left, unfold_right)


class StringError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        super().__init__(message if position is None else f"{message} at position {position}")


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Str:
    """A validated string with cached endpoints and signs.

    Zero-length strings have empty letters and carry (vertex, side); positive
    strings have vertex=side=None.  Values are context-free once built.
    """

    letters: tuple[Letter, ...]
    vertex: Optional[str]
    side: Optional[int]
    src: str
    dst: str
    sig: int
    eps: int

    def is_zero(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "Str":
        if self.is_zero():
            return Str((), self.vertex, -self.side, self.src, self.dst, self.eps, self.sig)
        return Str(inv_seq(self.letters), None, None, self.dst, self.src, self.eps, self.sig)

    def key(self):
        """Deterministic sort key."""
        if self.is_zero():
            return (0, self.vertex, self.side)
        return (1, tuple((l.sym, l.inv) for l in self.letters))


@dataclass(frozen=True)
class Band:
    """A cyclic primitive string, first syllable inverse, last direct."""

    string: Str


@dataclass(frozen=True)
class SubstringOcc:
    """A factor/image substring occurrence: span in gap coordinates plus the
    clause that fired ('equal', 'left', 'right', 'interior')."""

    substring: Str
    start: int
    end: int
    clause: str


class Context:
    """Presentation + sign maps, with the derived tables every string
    operation needs."""

    def __init__(self, presentation: Presentation, signs: SignMaps | None = None):
        self.presentation = presentation
        self.signs = signs if signs is not None else solve_sign_maps(presentation)
        self.amap = presentation.arrow_map()
        self.rels = set(presentation.relations)
        self.maxrel = max((len(r) for r in presentation.relations), default=2)
        self.cache: dict = {}

    # syllable-level accessors -------------------------------------------------
    def letter_src(self, l: Letter) -> str:
        s, t = self.amap[l.sym]
        return t if l.inv else s

    def letter_dst(self, l: Letter) -> str:
        s, t = self.amap[l.sym]
        return s if l.inv else t

    def sig(self, l: Letter) -> int:
        return self.signs.sig(l)

    def eps(self, l: Letter) -> int:
        return self.signs.eps(l)

    def syllables(self) -> list[Letter]:
        out = []
        for a in sorted(self.amap):
            out.append(Letter(a, False))
            out.append(Letter(a, True))
        return out

    # construction -------------------------------------------------------------
    def zero(self, vertex: str, side: int) -> Str:
        if vertex not in self.presentation.vertices:
            raise StringError(f"unknown vertex {vertex}")
        if side not in (1, -1):
            raise StringError("side must be +1 or -1")
        return Str((), vertex, side, vertex, vertex, -side, side)

    def _check_window(self, letters: Sequence[Letter], i: int) -> None:
        """Check relation clauses for windows ending at index i."""
        for L in range(2, self.maxrel + 1):
            if i - L + 1 < 0:
                break
            win = letters[i - L + 1:i + 1]
            if all(not l.inv for l in win):
                if tuple(l.sym for l in win) in self.rels:
                    raise StringError(f"relation {' '.join(l.sym for l in win)} violated", i)
            if all(l.inv for l in win):
                if tuple(l.sym for l in reversed(win)) in self.rels:
                    raise StringError(
                        "inverse of relation "
                        + " ".join(l.sym for l in reversed(win)) + " violated", i)

    def make_string(self, syllables: Iterable[Letter]) -> Str:
        """Validate a syllable sequence; raises StringError naming the violated
        clause and position."""
        seq = tuple(syllables)
        if not seq:
            raise StringError("empty syllable sequence (use zero(v, side) for 1_(v,i))")
        for l in seq:
            if l.sym not in self.amap:
                raise StringError(f"unknown arrow {l.sym}")
        for i in range(1, len(seq)):
            if self.letter_dst(seq[i - 1]) != self.letter_src(seq[i]):
                raise StringError(
                    f"composition mismatch t({seq[i-1]})={self.letter_dst(seq[i-1])}"
                    f" != s({seq[i]})={self.letter_src(seq[i])}", i)
            if seq[i - 1] == seq[i].inverse():
                raise StringError(f"backtrack {seq[i-1]} {seq[i]}", i)
        for i in range(len(seq)):
            self._check_window(seq, i)
        return Str(seq, None, None,
                   self.letter_src(seq[0]), self.letter_dst(seq[-1]),
                   self.sig(seq[0]), self.eps(seq[-1]))

    def try_string(self, syllables: Iterable[Letter]) -> Optional[Str]:
        try:
            return self.make_string(syllables)
        except StringError:
            return None

    def concat(self, x: Str, y: Str) -> Str:
        """Defined iff t(x)=s(y), sigma(y)=-eps(x) and the join is a valid
        string; zero-length strings act as one-sided identities."""
        if x.dst != y.src:
            raise StringError(f"undefined concatenation: t(x)={x.dst} != s(y)={y.src}")
        if y.sig != -x.eps:
            raise StringError(f"undefined concatenation: sigma(y)={y.sig} != -eps(x)={-x.eps}")
        if x.is_zero():
            return y
        if y.is_zero():
            return x
        try:
            return self.make_string(x.letters + y.letters)
        except StringError as err:
            raise StringError(f"undefined concatenation: {err}")

    # literals -----------------------------------------------------------------
    def parse_literal(self, text: str) -> Str:
        """Parse 'b1 a1'' style literals or zero-length '1(v2,+1)'."""
        text = text.strip()
        if text.startswith("1(") and text.endswith(")"):
            body = text[2:-1]
            try:
                vertex, side = body.split(",")
                return self.zero(vertex.strip(), int(side))
            except ValueError:
                raise StringError(f"malformed zero-length literal {text!r}")
        toks = text.split()
        if not toks:
            raise StringError("empty string literal")
        seq = []
        for tok in toks:
            if tok.endswith("'"):
                seq.append(Letter(tok[:-1], True))
            else:
                seq.append(Letter(tok, False))
        return self.make_string(seq)

    @staticmethod
    def format_literal(x: Str) -> str:
        if x.is_zero():
            return f"1({x.vertex},{x.side:+d})"
        return " ".join(str(l) for l in x.letters)

    # gap bookkeeping ----------------------------------------------------------
    def gap_zero(self, letters: Sequence[Letter], g: int) -> Str:
        """The zero-length string sitting at gap g of a syllable sequence.

        At interior gaps the sign is forced by the preceding syllable; at the
        left end it is -sigma of the first syllable.
        """
        if g > 0:
            prev = letters[g - 1]
            return self.zero(self.letter_dst(prev), self.eps(prev))
        first = letters[0]
        return self.zero(self.letter_src(first), -self.sig(first))

    # factor / image substrings --------------------------------------------------
    def factor_substrings(self, x) -> list[SubstringOcc]:
        return self._substrings(x, image=False)

    def image_substrings(self, x) -> list[SubstringOcc]:
        return self._substrings(x, image=True)

    def _boundary_ok(self, before: Letter | None, after: Letter | None, image: bool) -> bool:
        if image:
            return (before is None or not before.inv) and (after is None or after.inv)
        return (before is None or before.inv) and (after is None or not after.inv)

    @staticmethod
    def _clause(before: Letter | None, after: Letter | None) -> str:
        if before is None and after is None:
            return "equal"
        if before is None:
            return "left"
        if after is None:
            return "right"
        return "interior"

    def _substrings(self, x, image: bool) -> list[SubstringOcc]:
        if isinstance(x, Str):
            if x.is_zero():
                return [SubstringOcc(x, 0, 0, "equal")]
            return self._substrings_window(x.letters, True, True, image)
        return self._substrings_inf(x, image)

    def _substrings_window(self, letters: tuple[Letter, ...], left_closed: bool,
                           right_closed: bool, image: bool,
                           offset: int = 0) -> list[SubstringOcc]:
        n = len(letters)
        out = []
        for i in range(n + 1):
            if i == 0 and not left_closed:
                continue
            for j in range(i, n + 1):
                if j == n and not right_closed:
                    continue
                before = letters[i - 1] if i > 0 else None
                after = letters[j] if j < n else None
                if not self._boundary_ok(before, after, image):
                    continue
                if i == j:
                    sub = self.gap_zero(letters, i)
                else:
                    sub = self.make_string(letters[i:j])
                out.append(SubstringOcc(sub, i + offset, j + offset,
                                        self._clause(before, after)))
        return out

    def _substrings_inf(self, rep: WordRep, image: bool) -> list[SubstringOcc]:
        """Finite factor/image substrings of an eventually periodic rep within
        the canonical domain (spans repeat with the period beyond it)."""
        if isinstance(rep, RightInf):
            p = len(rep.period)
            dom = len(rep.prefix) + 2 * p
            text = unfold_right(rep, dom + p + 1)
            occs = self._substrings_window(text, True, False, image)
            return [o for o in occs if o.start < dom]
        if isinstance(rep, LeftInf):
            p = len(rep.period)
            dom = len(rep.suffix) + 2 * p
            text = unfold_left(rep, dom + p + 1)
            occs = self._substrings_window(text, False, True, image,
                                           offset=-len(text))
            return [o for o in occs if o.end > -dom]
        if isinstance(rep, BiInf):
            lp, rp = len(rep.left_period), len(rep.right_period)
            lext, rext = 2 * lp + 1, len(rep.core) + 2 * rp + 1
            left = unfold_left(LeftInf(rep.left_period, ()), lext)
            right = unfold_right(RightInf((), rep.right_period), rext - len(rep.core))
            text = left + rep.core + right
            occs = self._substrings_window(text, False, False, image, offset=-lext)
            return [o for o in occs
                    if -lp <= o.start and o.end < len(rep.core) + rp]
        if isinstance(rep, Window):
            return self._substrings_window(rep.letters, rep.left_closed,
                                           rep.right_closed, image)
        raise StringError(f"unsupported representation {type(rep).__name__}")

    # bands ----------------------------------------------------------------------
    def is_band(self, x: Str):
        """Return (Band, []) or (None, reasons)."""
        reasons = []
        if x.is_zero():
            return None, ["zero-length"]
        if x.src != x.dst:
            reasons.append(f"not cyclic: s={x.src}, t={x.dst}")
        root = _primitive_root_letters(x.letters)
        if len(root) != len(x.letters):
            reasons.append(f"not primitive: power of length {len(root)}")
        if not x.letters[0].inv:
            reasons.append("first syllable is direct")
        if x.letters[-1].inv:
            reasons.append("last syllable is inverse")
        if not reasons:
            if self.try_string(x.letters + x.letters) is None:
                reasons.append("square is not a string")
        if reasons:
            return None, reasons
        return Band(x), []

    def band_canonical(self, b: Band) -> Str:
        """Lexicographically least rotation of b or b^{-1} that satisfies the
        band boundary clauses; used for deduplication."""
        seqs = []
        for base in (b.string.letters, inv_seq(b.string.letters)):
            n = len(base)
            for r in range(n):
                rot = base[r:] + base[:r]
                if rot[0].inv and not rot[-1].inv:
                    seqs.append(rot)
        best = min(seqs, key=lambda s: tuple((l.sym, l.inv) for l in s))
        return self.make_string(best)

    # enumeration ------------------------------------------------------------------
    def continuations(self, seq: Sequence[Letter]) -> list[Letter]:
        """Syllables extending a valid string by one letter."""
        last = seq[-1]
        out = []
        for nxt in self.syllables():
            if self.letter_src(nxt) != self.letter_dst(last):
                continue
            if nxt == last.inverse():
                continue
            tail = tuple(seq[-(self.maxrel - 1):]) + (nxt,)
            try:
                for i in range(len(tail)):
                    self._check_window(tail, i)
            except StringError:
                continue
            out.append(nxt)
        return out

    def enumerate_strings(self, max_len: int, cap: int = 200000) -> list[Str]:
        """All strings of length <= max_len, zero-length ones included."""
        out = [self.zero(v, i) for v in self.presentation.vertices for i in (1, -1)]
        if max_len == 0:
            return out
        stack = [(l,) for l in self.syllables()]
        while stack:
            seq = stack.pop()
            out.append(self.make_string(seq))
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} strings")
            if len(seq) < max_len:
                for nxt in self.continuations(seq):
                    stack.append(seq + (nxt,))
        out.sort(key=Str.key)
        return out

    def enumerate_bands(self, max_len: int, cap: int = 200000) -> list[Band]:
        """All bands of length <= max_len up to rotation/inversion, in
        canonical form."""
        seen: dict = {}
        for x in self.enumerate_strings(max_len, cap):
            if x.is_zero() or x.src != x.dst:
                continue
            band, _ = self.is_band(x)
            if band is None:
                continue
            canon = self.band_canonical(band)
            seen[canon.key()] = Band(canon)
        return [seen[k] for k in sorted(seen)]

    # infinite representations -------------------------------------------------
    def validate_inf_str(self, rep: WordRep) -> None:
        """Check that every unfolded window of an eventually periodic rep is a
        valid string (sufficient up to preperiod + two periods + margin)."""
        if isinstance(rep, RightInf):
            n = len(rep.prefix) + 2 * len(rep.period) + self.maxrel
            self.make_string(unfold_right(rep, n))
        elif isinstance(rep, LeftInf):
            n = len(rep.suffix) + 2 * len(rep.period) + self.maxrel
            self.make_string(unfold_left(rep, n))
        elif isinstance(rep, BiInf):
            ln = 2 * len(rep.left_period) + self.maxrel
            rn = 2 * len(rep.right_period) + self.maxrel
            text = (unfold_left(LeftInf(rep.left_period, ()), ln)
                    + rep.core
                    + unfold_right(RightInf((), rep.right_period), rn))
            self.make_string(text)
        elif isinstance(rep, Window):
            self.make_string(rep.letters)
        else:
            raise StringError(f"unsupported representation {type(rep).__name__}")


def _primitive_root_letters(seq: tuple[Letter, ...]) -> tuple[Letter, ...]:
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and seq == seq[:d] * (n // d):
            return seq[:d]
    return seq
