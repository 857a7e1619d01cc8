"""Characteristic Sturmian prefixes, the window criterion, and the bridge to
the double Kronecker algebra.

The generator unfolds the standard-word recurrence s_{-1} = b, s_0 = a,
s_k = s_{k-1}^{d_k} s_{k-2} driven by a directive sequence (the continued
fraction of the slope).  Prefixes of an infinite directive sequence are
certified aperiodic.  The bridge realizes an {a,b}-window as a string over
Lambda_3 (a = b1 a1', b = a2' b2), transports it to the binary MIA, and runs
the windowed brick check next to the Sturmian subword criterion.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import solve_sign_maps
from .bricks import BrickReport, string_brick_automaton
from .construct import binary_word
from .mia import PointedWord, _Hasher, _lce
from .presets import lambda3
from .strings import Context
from .words import Letter, Window

A = Letter("a", False)
B = Letter("b", False)

PREFIX_CAP = 1 << 20


class SturmianError(ValueError):
    pass


@dataclass(frozen=True)
class DirectiveSequence:
    """(d1, d2, ...) with d1 >= 0 and dn >= 1 afterwards; a nonempty period
    makes the sequence (and the generated word) infinite."""

    head: tuple[int, ...]
    period: tuple[int, ...] = ()

    def __post_init__(self):
        terms = self.head + self.period
        if not terms:
            raise SturmianError("directive sequence needs at least one term")
        if terms[0] < 0:
            raise SturmianError("d1 must be >= 0")
        if any(d < 1 for d in terms[1:]):
            raise SturmianError("directive terms after the first must be >= 1")
        if self.period and any(d < 1 for d in self.period):
            raise SturmianError("period terms must be >= 1")
        object.__setattr__(self, "period", _primitive(self.period))

    def is_infinite(self) -> bool:
        return bool(self.period)

    def term(self, k: int) -> int:
        """1-based term d_k."""
        if k <= len(self.head):
            return self.head[k - 1]
        if not self.period:
            raise IndexError(k)
        return self.period[(k - len(self.head) - 1) % len(self.period)]

    @classmethod
    def parse(cls, text: str) -> "DirectiveSequence":
        """Comma list with an optional parenthesized period: ``1,(1)``."""
        text = text.strip()
        head_part, body = text, ""
        if "(" in text:
            head_part, _, rest = text.partition("(")
            body, closed, tail = rest.partition(")")
            if not closed or tail.strip():
                raise SturmianError(f"malformed directive sequence {text!r}")
        try:
            head = tuple(int(t) for t in head_part.split(",") if t.strip())
            period = tuple(int(t) for t in body.split(",") if t.strip())
        except ValueError:
            raise SturmianError(f"malformed directive sequence {text!r}")
        return cls(head, period)

    def __str__(self) -> str:
        parts = [str(d) for d in self.head]
        if self.period:
            parts.append("(" + ",".join(str(d) for d in self.period) + ")")
        return ",".join(parts)


def _primitive(seq: tuple[int, ...]) -> tuple[int, ...]:
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and seq == seq[:d] * (n // d):
            return seq[:d]
    return seq


def characteristic_prefix(d: DirectiveSequence, n: int) -> Window:
    """Length-n prefix of the standard word of d, as an {a,b} window.

    The window is certified aperiodic exactly when the directive sequence is
    infinite (irrational slope)."""
    if n < 1:
        raise SturmianError("prefix length must be >= 1")
    if n > PREFIX_CAP:
        raise SturmianError(f"prefix length exceeds cap {PREFIX_CAP}")
    prev = "b"  # s_{-1}
    cur = "a"   # s_0
    k = 0
    while len(cur) < n:
        k += 1
        try:
            dk = d.term(k)
        except IndexError:
            break
        prev, cur = cur, cur * dk + prev
    if len(cur) < n:
        raise SturmianError(
            f"finite directive sequence generates only {len(cur)} letters")
    letters = tuple(A if c == "a" else B for c in cur[:n])
    return Window(letters, certified_aperiodic=d.is_infinite(),
                  origin=f"characteristic({d})", left_closed=True,
                  right_closed=False)


@dataclass(frozen=True)
class SturmianViolation:
    infix: tuple[Letter, ...]
    a_position: int  # start of the a<infix>a occurrence
    b_position: int


def sturmian_window_check(w: Window) -> Optional[SturmianViolation]:
    """Search the window for an infix w' with both a w' a and b w' b present
    (the Sturmian balance criterion fails iff one exists); None means no
    violation within the window."""
    u = w.letters
    n = len(u)
    codes = [1 if l == A else 2 for l in u]
    h = _Hasher(codes)
    a_pos = [i for i, l in enumerate(u) if l == A]
    b_pos = [i for i, l in enumerate(u) if l == B]
    for i in a_pos:
        for j in b_pos:
            m = _lce(h, i + 1, h, j + 1)
            ia, jb = i + 1 + m, j + 1 + m
            if ia < n and jb < n and u[ia] == A and u[jb] == B:
                return SturmianViolation(u[i + 1:ia], i, j)
    return None


@dataclass(frozen=True)
class BridgeResult:
    string_window: Window
    word: PointedWord
    report: BrickReport
    violation: Optional[SturmianViolation]

    def consistent(self) -> bool:
        """Window-scale reading of the equivalence: a brick-word witness
        exists iff the Sturmian criterion is violated."""
        return (self.report.witness is None) == (self.violation is None)


_LAMBDA3_CTX: Optional[Context] = None


def lambda3_context() -> Context:
    global _LAMBDA3_CTX
    if _LAMBDA3_CTX is None:
        p = lambda3()
        _LAMBDA3_CTX = Context(p, solve_sign_maps(p))
    return _LAMBDA3_CTX


RIGHT_INFINITE = "right-infinite-at-v2"
BI_INFINITE = "bi-infinite"

_BLOCKS = {
    A: (Letter("b1", False), Letter("a1", True)),
    B: (Letter("a2", True), Letter("b2", False)),
}


def bridge(w: Window, side: str = BI_INFINITE) -> BridgeResult:
    """Realize an {a,b} window over Lambda_3, transport it to the binary MIA,
    and run the windowed brick check next to the Sturmian check.

    side selects whether the window samples a right-infinite word starting at
    v2 (left edge closed) or a bi-infinite word (both edges open)."""
    if side not in (RIGHT_INFINITE, BI_INFINITE):
        raise SturmianError(f"unknown side {side!r}")
    if any(l not in _BLOCKS for l in w.letters):
        raise SturmianError("bridge windows must be over the letters a, b")
    ctx = lambda3_context()
    letters = tuple(s for l in w.letters for s in _BLOCKS[l])
    string_window = Window(letters, w.certified_aperiodic, w.origin,
                           left_closed=(side == RIGHT_INFINITE),
                           right_closed=False)
    ctx.make_string(letters)  # substitution always yields a valid string
    word = binary_word(ctx, string_window)
    report = string_brick_automaton(ctx, string_window)
    violation = sturmian_window_check(w)
    return BridgeResult(string_window, word, report, violation)
