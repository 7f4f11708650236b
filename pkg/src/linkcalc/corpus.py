"""
Named example diagrams with expected annotations.

Where a link type has no small diagram with a bundled component, two
entries are kept: the standard minimal diagram and a ``-bundled``
presentation of the same link that twist and slope commands can use
without search.  Annotations list what recomputation must confirm;
``trivial`` is the verdict kind expected under the default budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import LinkDiagram, parse_pd

__all__ = ["CorpusEntry", "CORPUS", "corpus_load", "corpus_names"]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    pd: str
    description: str
    expected: dict = field(default_factory=dict)

    def load(self) -> LinkDiagram:
        return parse_pd(self.pd)


_ENTRIES = [
    CorpusEntry(
        "unknot",
        "O[1]",
        "a single crossingless loop",
        {"components": 1, "crossings": 0, "linking": [[0]], "bundled": [0], "trivial": "Trivial"},
    ),
    CorpusEntry(
        "unlink2",
        "O[1] O[2]",
        "two crossingless loops",
        {"components": 2, "crossings": 0, "bundled": [0, 1], "trivial": "Trivial"},
    ),
    CorpusEntry(
        "unlink3",
        "O[1] O[2] O[3]",
        "three crossingless loops",
        {"components": 3, "crossings": 0, "bundled": [0, 1, 2], "trivial": "Trivial"},
    ),
    CorpusEntry(
        "kink",
        "X[1,2,2,1]",
        "unknot with one removable curl",
        {"components": 1, "crossings": 1, "writhe": -1, "bundled": [], "trivial": "Trivial"},
    ),
    CorpusEntry(
        "double-kink",
        "X[1,4,2,1] X[2,3,3,4]",
        "unknot with two curls of the same sign",
        {"components": 1, "crossings": 2, "writhe": -2, "bundled": [], "trivial": "Trivial"},
    ),
    CorpusEntry(
        "trefoil",
        "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]",
        "right-handed trefoil, writhe +3",
        {
            "components": 1,
            "crossings": 3,
            "writhe": 3,
            "bundled": [],
            "brunnian": "Trivial",
            "trivial": "Inconclusive",
        },
    ),
    CorpusEntry(
        "hopf",
        "X[4,1,3,2] X[2,3,1,4]",
        "Hopf link, both components bundled with one strand each",
        {
            "components": 2,
            "crossings": 2,
            "linking": [[0, -1], [-1, 0]],
            "bundled": [0, 1],
            "homologically_trivial": False,
            "htb": "refuted",
            "trivial": "Nontrivial",
        },
    ),
    CorpusEntry(
        "whitehead",
        "X[6,1,7,2] X[10,7,5,8] X[4,5,1,6] X[2,10,3,9] X[8,4,9,3]",
        "Whitehead link, standard 5-crossing diagram",
        {
            "components": 2,
            "crossings": 5,
            "linking": [[0, 0], [0, 0]],
            "bundled": [],
            "homologically_trivial": True,
            "brunnian": "Trivial",
            "htb": "confirmed",
            "trivial": "Inconclusive",
        },
    ),
    CorpusEntry(
        "whitehead-bundled",
        "X[1,6,2,7] X[9,1,10,8] X[5,2,6,3] X[7,11,8,10] X[12,3,9,4] X[4,11,5,12]",
        "Whitehead link with component 1 as a round circle threaded twice",
        {
            "components": 2,
            "crossings": 6,
            "linking": [[0, 0], [0, 0]],
            "bundled": [1],
            "homologically_trivial": True,
            "brunnian": "Trivial",
            "htb": "confirmed",
            "trivial": "Inconclusive",
        },
    ),
    CorpusEntry(
        "borromean",
        "X[6,1,7,2] X[12,8,9,7] X[4,12,1,11] X[10,5,11,6] X[8,4,5,3] X[2,9,3,10]",
        "Borromean rings, standard alternating 6-crossing diagram",
        {
            "components": 3,
            "crossings": 6,
            "linking": [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
            "bundled": [],
            "homologically_trivial": True,
            "brunnian": "Trivial",
            "htb": "confirmed",
            "trivial": "Inconclusive",
        },
    ),
    CorpusEntry(
        "borromean-bundled",
        "X[4,12,1,5] X[11,1,12,2] X[8,3,9,2] X[3,8,4,7] "
        "X[16,5,13,6] X[6,15,7,16] X[9,15,10,14] X[13,11,14,10]",
        "Borromean rings with components 0 and 2 each a round circle threaded twice",
        {
            "components": 3,
            "crossings": 8,
            "linking": [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
            "bundled": [0, 2],
            "homologically_trivial": True,
            "brunnian": "Trivial",
            "htb": "confirmed",
            "trivial": "Inconclusive",
        },
    ),
    CorpusEntry(
        "key-chain",
        "X[2,6,1,5] X[8,2,5,1] X[4,7,3,6] X[7,4,8,3]",
        "two unlinked loops each passing once through a round ring",
        {
            "components": 3,
            "crossings": 4,
            "linking": [[0, 0, 1], [0, 0, 1], [1, 1, 0]],
            "bundled": [0, 1, 2],
            "homologically_trivial": False,
            "htb": "refuted",
            "trivial": "Nontrivial",
        },
    ),
    CorpusEntry(
        "chain4",
        "X[6,14,1,7] X[13,1,14,2] X[10,5,11,4] X[5,10,6,9] X[2,19,3,20] "
        "X[19,4,20,3] X[18,7,15,8] X[8,17,9,18] X[11,17,12,16] X[15,13,16,12]",
        "Borromean rings plus a small ring around component 0",
        {
            "components": 4,
            "crossings": 10,
            "linking": [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]],
            "bundled": [2, 3],
            "homologically_trivial": False,
            "htb": "refuted",
            "trivial": "Nontrivial",
        },
    ),
    CorpusEntry(
        "brunnian4",
        "X[2,16,3,13] X[15,3,16,4] X[14,9,15,8] X[9,14,10,13] X[17,12,18,1] "
        "X[20,2,21,1] X[10,22,11,21] X[11,24,12,17] X[32,4,33,5] X[25,6,26,5] "
        "X[6,30,7,31] X[7,28,8,27] X[18,25,19,34] X[33,20,34,19] X[22,28,23,29] "
        "X[29,23,30,24] X[31,27,32,26]",
        "4-component Brunnian link: one Borromean ring replaced by its Bing double",
        {
            "components": 4,
            "crossings": 17,
            "linking": [[0] * 4 for _ in range(4)],
            "bundled": [1],
            "homologically_trivial": True,
        },
    ),
]

CORPUS: dict[str, CorpusEntry] = {e.name: e for e in _ENTRIES}


def corpus_names() -> list[str]:
    return list(CORPUS)


def corpus_load(name: str) -> LinkDiagram:
    try:
        return CORPUS[name].load()
    except KeyError:
        raise KeyError(f"unknown corpus entry {name!r}; known: {', '.join(CORPUS)}") from None
