"""The automaton of a string algebra, its parity relabeling, and the
bijection between strings and pointed words.

States are zero-length strings, syllables, and proper left substrings of
relations and of inverses of relations; the transition on a letter lands on
the maximal right substring of the extended string that is again a state.
"""
from __future__ import annotations

import re
from typing import Optional

from .mia import Mia, PointedWord, transport
from .strings import Context, Str, StringError
from .words import (BiInf, Finite, LeftInf, Letter, RightInf, Window, WordRep,
                    inv_seq)


def zero_label(vertex: str, side: int) -> str:
    return f"1({vertex},{side:+d})"


_ZERO_RE = re.compile(r"^1\((.+),([+-]1)\)$")


def parse_zero_label(label: str) -> Optional[tuple[str, int]]:
    m = _ZERO_RE.match(label)
    if not m:
        return None
    return m.group(1), int(m.group(2))


def state_label(x: Str) -> str:
    if x.is_zero():
        return zero_label(x.vertex, x.side)
    return ".".join(str(l) for l in x.letters)


def build_mia(ctx: Context) -> Mia:
    """The MIA associated with the string algebra (cached on the context)."""
    if "mia" in ctx.cache:
        return ctx.cache["mia"]
    p = ctx.presentation

    state_strs: list[Str] = []
    for v in p.vertices:
        for i in (1, -1):
            state_strs.append(ctx.zero(v, i))
    for l in ctx.syllables():
        state_strs.append(ctx.make_string((l,)))
    for r in p.relations:
        word = tuple(Letter(a, False) for a in r)
        for x in (word, inv_seq(word)):
            for k in range(2, len(x)):
                state_strs.append(ctx.make_string(x[:k]))
    state_strs = sorted({s.key(): s for s in state_strs}.values(), key=Str.key)

    labels = {s.key(): state_label(s) for s in state_strs}
    nonzero_keys = {s.letters: labels[s.key()] for s in state_strs if not s.is_zero()}

    def max_right_state(letters: tuple[Letter, ...]) -> str:
        for k in range(len(letters)):
            lab = nonzero_keys.get(letters[k:])
            if lab is not None:
                return lab
        raise AssertionError("single syllables are always states")

    trans: dict[tuple[str, Letter], str] = {}
    for s in state_strs:
        lab = labels[s.key()]
        for b in ctx.syllables():
            if s.is_zero():
                if ctx.letter_src(b) != s.vertex or ctx.sig(b) != -s.side:
                    continue
                joined = (b,)
            else:
                joined = s.letters + (b,)
                if ctx.try_string(joined) is None:
                    continue
            trans[(lab, b)] = max_right_state(joined)

    e = {}
    inv = {}
    initial = []
    for s in state_strs:
        lab = labels[s.key()]
        if s.is_zero():
            initial.append(lab)
            inv[lab] = zero_label(s.vertex, -s.side)
            e[lab] = lab
        else:
            e[lab] = zero_label(s.dst, s.eps)

    mia = Mia(
        states=tuple(labels[s.key()] for s in state_strs),
        initial=tuple(initial),
        inv=inv,
        e=e,
        alphabet=tuple(sorted(ctx.amap)),
        trans=trans,
    )
    ctx.cache["mia"] = mia
    ctx.cache["mia_states"] = {labels[s.key()]: s for s in state_strs}
    return mia


def state_strings(ctx: Context) -> dict[str, Str]:
    """Label -> the string each automaton state stands for."""
    build_mia(ctx)
    return ctx.cache["mia_states"]


def parity_map(ctx: Context) -> dict[str, str]:
    return {a: "0" for a in ctx.amap}


def parity_mia(ctx: Context) -> tuple[dict[str, str], Mia]:
    """Collapse all arrows to the single symbol 0 (so inverse syllables read
    as 1); a local bijection because every state has at most one defined
    direct and one defined inverse letter."""
    if not ctx.amap:
        raise StringError("parity relabeling needs a nonempty arrow set")
    if "parity" in ctx.cache:
        return ctx.cache["parity"]
    from .mia import relabel
    phi = parity_map(ctx)
    delta = relabel(build_mia(ctx), phi)
    ctx.cache["parity"] = (phi, delta)
    return phi, delta


def string_to_word(ctx: Context, x) -> PointedWord:
    """The canonical pointed word of a string: basepoint at the right end for
    finite strings, at the representation's anchor for infinite ones."""
    if isinstance(x, Str):
        if x.is_zero():
            return PointedWord(Finite(()), zero_label(x.vertex, x.side), Finite(()))
        return PointedWord(Finite(x.letters), zero_label(x.dst, x.eps), Finite(()))
    if isinstance(x, RightInf):
        ctx.validate_inf_str(x)
        first = x.prefix[0] if x.prefix else x.period[0]
        base = zero_label(ctx.letter_src(first), -ctx.sig(first))
        return PointedWord(Finite(()), base, x)
    if isinstance(x, LeftInf):
        ctx.validate_inf_str(x)
        last = x.suffix[-1] if x.suffix else x.period[-1]
        base = zero_label(ctx.letter_dst(last), ctx.eps(last))
        return PointedWord(x, base, Finite(()))
    if isinstance(x, BiInf):
        ctx.validate_inf_str(x)
        last = x.left_period[-1]
        base = zero_label(ctx.letter_dst(last), ctx.eps(last))
        return PointedWord(LeftInf(x.left_period, ()), base,
                           RightInf(x.core, x.right_period))
    if isinstance(x, Window):
        ctx.validate_inf_str(x)
        first = x.letters[0]
        base = zero_label(ctx.letter_src(first), -ctx.sig(first))
        return PointedWord(Finite(()), base, x)
    raise StringError(f"unsupported input {type(x).__name__}")


def word_to_string(ctx: Context, w: PointedWord):
    """Concatenate the two sides back into a string (the inverse of
    string_to_word up to basepoint equivalence)."""
    l, r = w.left, w.right
    if isinstance(l, Finite) and isinstance(r, Finite):
        letters = l.letters + r.letters
        if not letters:
            parsed = parse_zero_label(w.base)
            if parsed is None:
                raise StringError(f"basepoint {w.base!r} is not a zero-length state")
            return ctx.zero(*parsed)
        return ctx.make_string(letters)
    if isinstance(l, Finite) and isinstance(r, RightInf):
        rep: WordRep = RightInf(l.letters + r.prefix, r.period)
    elif isinstance(l, LeftInf) and isinstance(r, Finite):
        rep = LeftInf(l.period, l.suffix + r.letters)
    elif isinstance(l, LeftInf) and isinstance(r, RightInf):
        rep = BiInf(l.period, l.suffix + r.prefix, r.period)
    elif isinstance(r, Window) and isinstance(l, Finite) and not l.letters:
        rep = r
    else:
        raise StringError(f"unsupported word shape {type(l).__name__}+{type(r).__name__}")
    ctx.validate_inf_str(rep)
    return rep


def binary_word(ctx: Context, x) -> PointedWord:
    """The parity-transported pointed word of a string over M_{Lambda delta}."""
    phi, _ = parity_mia(ctx)
    return transport(build_mia(ctx), phi, string_to_word(ctx, x))


def to_dot(m: Mia) -> str:
    """DOT rendering: initial states doubly circled, inverse letters primed
    (binary MIAs label edges 0/1)."""
    binary = m.is_binary()

    def letter_label(l: Letter) -> str:
        if binary:
            return "1" if l.inv else "0"
        return str(l)

    lines = ["digraph mia {", "  rankdir=LR;"]
    iset = set(m.initial)
    for x in m.states:
        shape = "doublecircle" if x in iset else "circle"
        lines.append(f'  "{x}" [shape={shape}];')
    for (x, l), y in sorted(m.trans.items(), key=lambda kv: (kv[0][0], str(kv[0][1]), kv[1])):
        lines.append(f'  "{x}" -> "{y}" [label="{letter_label(l)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
