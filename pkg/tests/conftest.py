import random

import pytest

from stringbricks.algebra import (SignError, parse_presentation,
                                  validate_string_algebra)
from stringbricks.presets import gamma, lambda3
from stringbricks.strings import CapExceeded, Context

CORPUS_SEED = 20240809
CORPUS_SIZE = 20
CORPUS_MAX_STRINGS = 600


@pytest.fixture(scope="session")
def l3():
    return Context(lambda3())


@pytest.fixture(scope="session")
def gam():
    return Context(gamma())


def random_presentation(rng: random.Random):
    nv = rng.randint(1, 4)
    vertices = [f"v{i}" for i in range(1, nv + 1)]
    lines = [f"vertex {v}" for v in vertices]
    arrows = []
    for i in range(rng.randint(1, 6)):
        s, t = rng.choice(vertices), rng.choice(vertices)
        arrows.append((f"x{i}", s, t))
        lines.append(f"arrow x{i} {s} {t}")
    amap = {a: (s, t) for a, s, t in arrows}
    pairs = [(a, b) for a in amap for b in amap if amap[a][1] == amap[b][0]]
    rng.shuffle(pairs)
    rels = [pair for pair in pairs if rng.random() < 0.6]
    triples = [(a, b, c) for (a, b) in pairs for c in amap
               if amap[b][1] == amap[c][0]
               and (a, b) not in rels and (b, c) not in rels]
    rng.shuffle(triples)
    rels.extend(triples[:rng.randint(0, 2)])
    for r in rels:
        lines.append("relation " + " ".join(r))
    return parse_presentation("\n".join(lines))


def corpus_algebras(count=CORPUS_SIZE, seed=CORPUS_SEED,
                    max_strings=CORPUS_MAX_STRINGS):
    """The first `count` seeded random presentations that validate as string
    algebras with solvable signs and a bounded length-8 string census."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        assert attempts < 20000, "corpus generation stalled"
        try:
            p = random_presentation(rng)
        except Exception:
            continue
        if not validate_string_algebra(p).is_string_algebra:
            continue
        try:
            ctx = Context(p)
            ctx.enumerate_strings(8, cap=max_strings)
        except (SignError, CapExceeded):
            continue
        out.append(ctx)
    return out


@pytest.fixture(scope="session")
def corpus():
    return corpus_algebras()
