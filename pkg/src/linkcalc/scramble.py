"""
Random diagrams of the unlink, for testing the recognizer on inputs whose
answer is known.

Start from k crossingless loops.  Optionally a finger of one loop is
pushed twice through another loop K; these two R2 additions leave K in
bundled form with two strands.  Each twist along K by q = +1 or -1 (keeping
K) is followed by a twist back by -q.  Then random R1/R2 additions follow.  Every step is an isotopy or is undone
by its partner, so the result is always an unlink diagram.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagram import LinkDiagram, parse_pd
from .moves import MoveSpec, apply_move, enumerate_moves
from .surgery import detect_bundle, twist

__all__ = ["ScrambleLog", "scramble_unlink", "thread_component"]


@dataclass
class ScrambleLog:
    k: int
    moves: list = field(default_factory=list)
    twists: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "moves": [m.to_json() for m in self.moves],
            "twists": self.twists,
        }


def _r2_adds(d: LinkDiagram, a: int, b: int) -> list[MoveSpec]:
    comp = d.component_of
    out = []
    for m in enumerate_moves(d, d.n_crossings + 2):
        if m.kind != "R2Add":
            continue
        c = {comp[m.site[0][0]], comp[m.site[1][0]]}
        if c == {a, b}:
            out.append(m)
    return out


def thread_component(d: LinkDiagram, k: int, j: int, rng: random.Random):
    """Two R2 additions between components ``k`` and ``j`` that bundle ``k`` with m=2.

    Returns ``(diagram, [m1, m2])`` or ``None`` if no such pair exists.
    """
    options = []
    for m1 in _r2_adds(d, k, j):
        d1 = apply_move(d, m1)
        for m2 in _r2_adds(d1, k, j):
            d2 = apply_move(d1, m2)
            site = detect_bundle(d2, k)
            if site is not None and site.m == 2:
                options.append((m1, m2, d2))
    if not options:
        return None
    m1, m2, d2 = rng.choice(options)
    return d2, [m1, m2]


def scramble_unlink(
    k: int,
    rng: random.Random | int,
    additions: int = 6,
    twists: int = 2,
    slides: int = 0,
) -> tuple[LinkDiagram, ScrambleLog]:
    """A random diagram of the k-component unlink.

    ``additions`` counts all R1/R2 additions, including the two used to
    thread a component when ``twists > 0`` and ``k >= 2``.  ``slides``
    R3 moves, where available, are interleaved with the additions; they
    keep greedy R1/R2 removal from undoing the scramble on its own.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if isinstance(rng, int):
        rng = random.Random(rng)
    d = parse_pd(" ".join(f"O[{i + 1}]" for i in range(k)))
    log = ScrambleLog(k)
    budget = additions
    if twists and k >= 2 and budget >= 2:
        K, j = rng.sample(range(k), 2)
        threaded = thread_component(d, K, j, rng)
        if threaded is not None:
            d, moves = threaded
            log.moves += moves
            budget -= 2
            for _ in range(twists):
                q = rng.choice((1, -1))
                d = twist(d, detect_bundle(d, K), q, keep=True)
                d = twist(d, detect_bundle(d, K), -q, keep=True)
                log.twists.append({"component": K, "q": q})
    steps = ["add"] * budget + ["slide"] * slides
    rng.shuffle(steps)
    for step in steps:
        kinds = ("R1Add", "R2Add") if step == "add" else ("R3",)
        moves = [m for m in enumerate_moves(d, d.n_crossings + 2) if m.kind in kinds]
        if not moves:
            continue
        m = rng.choice(moves)
        d = apply_move(d, m)
        log.moves.append(m)
    return d, log
