"""String-algebra presentations: parsing, validation, sign maps.

A presentation is a finite quiver with a set of monomial relations, written in
string order (the target of each arrow is the source of the next).  The sign
maps assign each arrow a pair (sigma, eps) in {+1,-1}^2 subject to the three
local compatibility conditions; they are either declared in the input file or
solved for deterministically.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .words import Letter


class PresentationError(ValueError):
    """Raised on malformed presentation input; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class SignError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)
    relations: tuple[tuple[str, ...], ...]
    declared_signs: Optional[Mapping[str, tuple[int, int]]] = None

    def arrow_map(self) -> dict[str, tuple[str, str]]:
        return {a: (s, t) for a, s, t in self.arrows}

    def src(self, arrow: str) -> str:
        return self.arrow_map()[arrow][0]

    def dst(self, arrow: str) -> str:
        return self.arrow_map()[arrow][1]


@dataclass(frozen=True)
class SignMaps:
    """Per-arrow (sigma, eps) with the standard extension to inverse syllables
    and zero-length strings."""

    table: Mapping[str, tuple[int, int]]

    def sig(self, letter: Letter) -> int:
        s, e = self.table[letter.sym]
        return e if letter.inv else s

    def eps(self, letter: Letter) -> int:
        s, e = self.table[letter.sym]
        return s if letter.inv else e


@dataclass(frozen=True)
class ValidationReport:
    is_string_algebra: bool
    is_gentle: bool
    admissibility_bound: Optional[int]
    violations: tuple[tuple[str, str], ...]  # (condition code, locus)

    def codes(self) -> set[str]:
        return {c for c, _ in self.violations}


def parse_presentation(text: str) -> Presentation:
    """Parse the line-oriented presentation format.

    Directives: ``vertex <id>``, ``arrow <id> <src> <dst>``,
    ``relation <arrow> <arrow> ...`` (string order),
    ``sign <arrow> <+1|-1> <+1|-1>`` (sigma then eps; all arrows or none).
    ``#`` starts a comment.
    """
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    relations: list[tuple[str, ...]] = []
    signs: dict[str, tuple[int, int]] = {}
    vset: set[str] = set()
    aset: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind == "vertex":
            if len(args) != 1:
                raise PresentationError("vertex takes one identifier", lineno)
            if args[0] in vset:
                raise PresentationError(f"duplicate vertex {args[0]}", lineno)
            vset.add(args[0])
            vertices.append(args[0])
        elif kind == "arrow":
            if len(args) != 3:
                raise PresentationError("arrow takes <id> <src> <dst>", lineno)
            name, s, t = args
            if name in aset:
                raise PresentationError(f"duplicate arrow {name}", lineno)
            if s not in vset or t not in vset:
                raise PresentationError(f"unknown vertex in arrow {name}", lineno)
            aset.add(name)
            arrows.append((name, s, t))
        elif kind == "relation":
            if len(args) < 2:
                raise PresentationError("relation needs at least two arrows", lineno)
            for a in args:
                if a not in aset:
                    raise PresentationError(f"unknown arrow {a} in relation", lineno)
            amap = {a: (s, t) for a, s, t in arrows}
            for x, y in zip(args, args[1:]):
                if amap[x][1] != amap[y][0]:
                    raise PresentationError(
                        f"relation not composable in string order: "
                        f"t({x})={amap[x][1]} != s({y})={amap[y][0]}", lineno)
            relations.append(tuple(args))
        elif kind == "sign":
            if len(args) != 3:
                raise PresentationError("sign takes <arrow> <sigma> <eps>", lineno)
            name = args[0]
            if name not in aset:
                raise PresentationError(f"unknown arrow {name} in sign", lineno)
            try:
                sv, ev = int(args[1]), int(args[2])
            except ValueError:
                raise PresentationError("sign values must be +1 or -1", lineno)
            if sv not in (1, -1) or ev not in (1, -1):
                raise PresentationError("sign values must be +1 or -1", lineno)
            signs[name] = (sv, ev)
        else:
            raise PresentationError(f"unknown directive {kind!r}", lineno)

    if signs and set(signs) != aset:
        missing = sorted(aset - set(signs))
        raise PresentationError(f"signs are all-or-none; missing {missing}")

    return Presentation(
        vertices=tuple(vertices),
        arrows=tuple(arrows),
        relations=_normalize_relations(relations),
        declared_signs=dict(signs) if signs else None,
    )


def _normalize_relations(relations: Sequence[tuple[str, ...]]) -> tuple[tuple[str, ...], ...]:
    """Deduplicate and drop any relation containing another as a contiguous
    subpath (the generated ideal is unchanged)."""
    uniq = sorted(set(relations), key=lambda r: (len(r), r))
    kept: list[tuple[str, ...]] = []
    for r in uniq:
        redundant = False
        for s in kept:
            if len(s) <= len(r):
                if any(r[i:i + len(s)] == s for i in range(len(r) - len(s) + 1)):
                    redundant = True
                    break
        if not redundant:
            kept.append(r)
    return tuple(sorted(kept))


def format_presentation(p: Presentation) -> str:
    """Emit the presentation file format; parse(format(p)) == p."""
    out = []
    for v in p.vertices:
        out.append(f"vertex {v}")
    for a, s, t in p.arrows:
        out.append(f"arrow {a} {s} {t}")
    for r in p.relations:
        out.append("relation " + " ".join(r))
    if p.declared_signs:
        for a, _, _ in p.arrows:
            sv, ev = p.declared_signs[a]
            out.append(f"sign {a} {sv:+d} {ev:+d}")
    return "\n".join(out) + "\n"


def validate_string_algebra(p: Presentation) -> ValidationReport:
    """Check conditions I (vertex degree caps), II (unique continuations),
    III (bounded relation-free paths) and the gentle refinements IIa/IIb."""
    violations: list[tuple[str, str]] = []
    amap = p.arrow_map()
    rels = set(p.relations)

    for r in p.relations:
        if len(r) < 2:
            violations.append(("REL", f"relation {' '.join(r)} shorter than 2"))

    for v in p.vertices:
        outs = [a for a, s, _ in p.arrows if s == v]
        ins = [a for a, _, t in p.arrows if t == v]
        if len(outs) > 2:
            violations.append(("I", f"vertex {v} has {len(outs)} outgoing arrows"))
        if len(ins) > 2:
            violations.append(("I", f"vertex {v} has {len(ins)} incoming arrows"))

    def allowed_next(a: str) -> list[str]:
        return [b for b in amap if amap[a][1] == amap[b][0] and (a, b) not in rels]

    def allowed_prev(a: str) -> list[str]:
        return [b for b in amap if amap[b][1] == amap[a][0] and (b, a) not in rels]

    for a in amap:
        nxt, prv = allowed_next(a), allowed_prev(a)
        if len(nxt) > 1:
            violations.append(("II", f"arrow {a} has allowed continuations {sorted(nxt)}"))
        if len(prv) > 1:
            violations.append(("II", f"arrow {a} has allowed predecessors {sorted(prv)}"))

    bound = _admissibility_bound(p)
    if bound is None:
        violations.append(("III", "relation-free paths are unbounded"))

    gentle_violations: list[tuple[str, str]] = []
    if any(len(r) != 2 for r in p.relations):
        gentle_violations.append(("REL", "gentle requires all relations of length 2"))
    for a in amap:
        forb_next = [b for b in amap if (a, b) in rels]
        forb_prev = [b for b in amap if (b, a) in rels]
        if len(forb_next) > 1:
            gentle_violations.append(("IIa", f"arrow {a} has forbidden continuations {sorted(forb_next)}"))
        if len(forb_prev) > 1:
            gentle_violations.append(("IIb", f"arrow {a} has forbidden predecessors {sorted(forb_prev)}"))

    is_string = not violations
    is_gentle = is_string and not gentle_violations
    return ValidationReport(
        is_string_algebra=is_string,
        is_gentle=is_gentle,
        admissibility_bound=bound,
        violations=tuple(violations + (gentle_violations if is_string else [])),
    )


def _admissibility_bound(p: Presentation) -> Optional[int]:
    """Length of the longest relation-free path, or None when unbounded.

    Nodes are sliding windows of the last (max relation length - 1) arrows of
    a relation-free path; a cycle among reachable nodes means unbounded paths.
    """
    amap = p.arrow_map()
    rels = set(p.relations)
    maxrel = max((len(r) for r in p.relations), default=2)
    w = max(maxrel - 1, 1)

    def extensions(window: tuple[str, ...]) -> list[tuple[str, ...]]:
        out = []
        last = window[-1]
        for b in amap:
            if amap[last][1] != amap[b][0]:
                continue
            seq = window + (b,)
            if any(seq[i:] in rels for i in range(len(seq))):
                continue
            out.append(seq[-w:])
        return out

    starts = [(a,) for a in amap if (a,) not in rels]
    # cycle detection over reachable windows
    color: dict[tuple[str, ...], int] = {}

    def has_cycle(node: tuple[str, ...]) -> bool:
        color[node] = 1
        for nxt in extensions(node):
            c = color.get(nxt, 0)
            if c == 1:
                return True
            if c == 0 and has_cycle(nxt):
                return True
        color[node] = 2
        return False

    for s in starts:
        if color.get(s, 0) == 0 and has_cycle(s):
            return None

    # longest path in the resulting DAG, counting arrows
    memo: dict[tuple[str, ...], int] = {}

    def longest_from(node: tuple[str, ...]) -> int:
        if node in memo:
            return memo[node]
        best = 0
        for nxt in extensions(node):
            best = max(best, 1 + longest_from(nxt))
        memo[node] = best
        return best

    if not amap:
        return 0
    best = 0
    for s in starts:
        best = max(best, 1 + longest_from(s))
    return best


def _sign_constraints(p: Presentation) -> list[tuple[tuple[int, str], tuple[int, str], str]]:
    """Anti-equality constraints x = -y between sign unknowns.

    Unknown keys are (0, arrow) for sigma and (1, arrow) for eps, so sigma
    unknowns sort before eps unknowns for the anchoring rule.
    """
    amap = p.arrow_map()
    rels = set(p.relations)
    cons = []
    names = sorted(amap)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if amap[a][0] == amap[b][0]:
                cons.append(((0, a), (0, b), f"(a) s({a})=s({b})"))
            if amap[a][1] == amap[b][1]:
                cons.append(((1, a), (1, b), f"(b) t({a})=t({b})"))
    for a in names:
        for b in names:
            if amap[a][1] == amap[b][0] and (a, b) not in rels:
                cons.append(((1, a), (0, b), f"(c) {a}{b} not in rho"))
    return cons


def solve_sign_maps(p: Presentation) -> SignMaps:
    """Return sign maps satisfying conditions (a)-(c).

    Declared signs are verified and returned verbatim.  Otherwise the parity
    constraint system over the 2|Q1| unknowns is solved by union-find with
    parity, anchoring the smallest unknown of each component to +1; output is
    deterministic.  Raises SignError on declared violations or an infeasible
    system (reporting a conflicting constraint cycle).
    """
    if p.declared_signs is not None:
        bad = verify_sign_conditions(p, SignMaps(p.declared_signs))
        if bad:
            raise SignError("declared signs violate " + "; ".join(bad))
        return SignMaps(dict(p.declared_signs))

    cons = _sign_constraints(p)
    parent: dict[tuple[int, str], tuple[int, str]] = {}
    parity: dict[tuple[int, str], int] = {}  # sign relative to root, +1/-1
    why: dict[tuple[int, str], tuple] = {}

    def find(x):
        if parent.setdefault(x, x) == x:
            parity.setdefault(x, 1)
            return x, 1
        root, par = find(parent[x])
        parent[x] = root
        parity[x] *= par
        return root, parity[x]

    def trail(x) -> list[str]:
        out = []
        while x in why:
            x, label = why[x]
            out.append(label)
        return out

    for x, y, label in cons:
        rx, px = find(x)
        ry, py = find(y)
        if rx == ry:
            if px * py != -1:
                cycle = [label] + trail(x) + trail(y)
                raise SignError("infeasible sign system; conflicting constraints: "
                                + "; ".join(cycle))
            continue
        parent[ry] = rx
        parity[ry] = -px * py
        why[ry] = (rx, label)

    unknowns = sorted({(k, a) for k in (0, 1) for a, _, _ in p.arrows})
    values: dict[tuple[int, str], int] = {}
    anchored: dict[tuple[int, str], int] = {}
    for u in unknowns:
        root, par = find(u)
        if root not in anchored:
            # u is the smallest unknown of its component: anchor it to +1
            anchored[root] = par
        values[u] = par * anchored[root]

    table = {a: (values[(0, a)], values[(1, a)]) for a, _, _ in p.arrows}
    maps = SignMaps(table)
    bad = verify_sign_conditions(p, maps)
    if bad:
        raise SignError("solver produced invalid signs: " + "; ".join(bad))
    return maps


def verify_sign_conditions(p: Presentation, maps: SignMaps) -> list[str]:
    """Direct check of conditions (a)-(c); returns human-readable violations."""
    amap = p.arrow_map()
    rels = set(p.relations)
    t = maps.table
    out = []
    names = sorted(amap)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if amap[a][0] == amap[b][0] and t[a][0] != -t[b][0]:
                out.append(f"(a): arrows {a},{b} share a source but sigma agrees")
            if amap[a][1] == amap[b][1] and t[a][1] != -t[b][1]:
                out.append(f"(b): arrows {a},{b} share a target but eps agrees")
    for a in names:
        for b in names:
            if amap[a][1] == amap[b][0] and (a, b) not in rels and t[a][1] != -t[b][0]:
                out.append(f"(c): eps({a}) != -sigma({b}) though {a}{b} is not a relation")
    return out
