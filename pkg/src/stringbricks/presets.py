"""Built-in presentations: the Lambda_N family and the running barbell-style
example, with its published sign choice."""
from __future__ import annotations

from .algebra import Presentation, parse_presentation


def lambda_n_text(n: int) -> str:
    """Lambda_N: vertices v1..vN, arrows a_i, b_i: v_{i+1} -> v_i, relations
    b_{i+1} a_i and a_{i+1} b_i (string order)."""
    if n < 2:
        raise ValueError("need at least two vertices")
    lines = [f"vertex v{i}" for i in range(1, n + 1)]
    for i in range(1, n):
        lines.append(f"arrow a{i} v{i+1} v{i}")
        lines.append(f"arrow b{i} v{i+1} v{i}")
    for i in range(1, n - 1):
        lines.append(f"relation b{i+1} a{i}")
        lines.append(f"relation a{i+1} b{i}")
    return "\n".join(lines) + "\n"


def lambda_n(n: int) -> Presentation:
    return parse_presentation(lambda_n_text(n))


def lambda3() -> Presentation:
    return lambda_n(3)


GAMMA_TEXT = """\
vertex v1
vertex v2
vertex v3
vertex v4
vertex v5
vertex v6
arrow a1 v1 v2
arrow a2 v3 v2
arrow a3 v3 v1
arrow b v1 v4
arrow c1 v4 v5
arrow c2 v6 v5
arrow c3 v6 v4
relation a3 b c1
relation a3 a1
relation c3 c1
sign a1 +1 -1
sign a2 +1 +1
sign a3 -1 +1
sign b -1 +1
sign c1 -1 +1
sign c2 +1 -1
sign c3 -1 -1
"""


def gamma() -> Presentation:
    return parse_presentation(GAMMA_TEXT)
