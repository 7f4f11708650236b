"""
1/q surgery on unknotted components, done as a diagram rewrite.

A component K is in *bundled form* when it has no self-crossings and,
on one side of K (its "inside"), every crossing of K is joined to another
crossing of K by a bare arc.  These arcs (chords) must be parallel.
Along K the crossings split into one run where K passes under and one
run where K passes over.  The chords are the strands piercing the disk K
bounds.  Twisting q times along that disk inserts the full-twist braid
(s_1 ... s_{m-1})^(m q) on the m strands just outside K's over-run;
dropping K afterwards gives L(..., 1/q, ...).

Positive q inserts right-handed twists: two co-oriented strands through
K acquire linking number +q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .diagram import LinkDiagram, delete_component, linking_matrix
from .moves import _splice

__all__ = [
    "TwistSite",
    "StaleSite",
    "Star",
    "Infinity",
    "OneOverQ",
    "STAR",
    "INFINITY",
    "detect_bundle",
    "twist",
    "full_twist_word",
    "predicted_linking_after_twist",
    "parse_slopes",
    "format_slopes",
    "apply_slopes",
    "SlopeFailure",
]


class StaleSite(ValueError):
    pass


@dataclass(frozen=True)
class TwistSite:
    """A bundled component.

    ``under_run``/``over_run`` are the crossing indices where K passes
    under/over, in K's direction of travel; strand ``j`` runs from
    ``under_run[j]`` to ``over_run[m-1-j]``.  ``ports`` are the
    (crossing, slot) pairs where each strand leaves ``over_run`` on the
    outside.
    """

    component: int
    inside: str  # "L" or "R" relative to K's direction
    under_run: tuple[int, ...]
    over_run: tuple[int, ...]
    ports: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.over_run)

    def to_json(self) -> dict:
        return {
            "component": self.component,
            "inside": self.inside,
            "m": self.m,
            "under_run": list(self.under_run),
            "over_run": list(self.over_run),
        }


def _passages(d: LinkDiagram, k: int) -> list[tuple[int, int]] | None:
    """(crossing, entry slot) along component k; None on a self-crossing."""
    comp = d.components[k]
    if comp[0] in d.loops:
        return []
    out = []
    seen = set()
    for arc in comp:
        x, s = d.ends[arc][1]
        if x in seen:
            return None
        seen.add(x)
        out.append((x, s))
    return out


def detect_bundle(d: LinkDiagram, k: int) -> TwistSite | None:
    if not 0 <= k < d.n_components:
        raise IndexError(f"component {k} out of range for {d.n_components} components")
    seq = _passages(d, k)
    if seq is None:
        return None
    if not seq:
        return TwistSite(k, "L", (), (), ())
    n = len(seq)
    if n % 2:
        return None
    m = n // 2
    k_over = [s % 2 == 1 for _, s in seq]
    # rotate so the sequence reads: m under-passages then m over-passages
    starts = [i for i in range(n) if not k_over[i] and k_over[i - 1]]
    if len(starts) != 1:
        return None
    r = starts[0]
    seq = seq[r:] + seq[:r]
    if any(s % 2 == 1 for _, s in seq[:m]) or any(s % 2 == 0 for _, s in seq[m:]):
        return None
    pos = {x: i for i, (x, _) in enumerate(seq)}
    for inside, turn in (("L", 3), ("R", 1)):
        ok = True
        for i, (x, e) in enumerate(seq):
            slot = (e + turn) % 4
            y, t = d.other_end[(x, slot)]
            j = pos.get(y)
            if j is None or (seq[j][1] + turn) % 4 != t or i + j != n - 1:
                ok = False
                break
        if ok:
            out_turn = 1 if inside == "L" else 3
            ports = tuple((x, (e + out_turn) % 4) for x, e in seq[m:])
            return TwistSite(
                k,
                inside,
                tuple(x for x, _ in seq[:m]),
                tuple(x for x, _ in seq[m:]),
                ports,
            )
    return None


def full_twist_word(m: int, q: int) -> list[int]:
    """Generators top to bottom; +i is s_i, -i its inverse."""
    if m < 2 or q == 0:
        return []
    if q > 0:
        return list(range(1, m)) * (m * q)
    return [-i for i in range(m - 1, 0, -1)] * (m * -q)


def twist(d: LinkDiagram, site: TwistSite, q: int, keep: bool = False) -> LinkDiagram:
    """Twist ``q`` full turns along the disk bounded by ``site.component``.

    With ``keep=False`` the component is then deleted (1/q surgery).
    """
    if detect_bundle(d, site.component) != site:
        raise StaleSite(f"component {site.component} is not bundled as described")
    m = site.m
    word = full_twist_word(m, q)
    out = d
    if word:
        out = _insert_braid(d, site, word)
    if not keep:
        out = delete_component(out, site.component)
    return out


def _insert_braid(d: LinkDiagram, site: TwistSite, word: Sequence[int]) -> LinkDiagram:
    m = site.m
    # braid frame: strands run "down" away from K, positions left to right.
    # Ports follow K's direction when the outside is on K's right.
    ports = list(site.ports)
    if site.inside == "R":
        ports.reverse()
    # compass positions at a braid crossing: NW=0 SW=1 SE=2 NE=3;
    # the strand from the left position uses NW/SE, the other NE/SW
    down: list[list[tuple[int, int, int]]] = [[] for _ in range(m)]
    at = list(range(m))  # strand currently at each position
    under_pairs = []
    for cid, g in enumerate(word):
        i = abs(g) - 1
        left, right = at[i], at[i + 1]
        down[left].append((cid, 0, 2))
        down[right].append((cid, 3, 1))
        # s_i: the NE-SW strand passes over
        under_pairs.append(0 if g > 0 else 1)
        at[i], at[i + 1] = right, left
    events: dict[int, list] = {}
    starts: dict[int, list] = {}
    ends: dict[int, list] = {}
    for j, (x, slot) in enumerate(ports):
        arc = d.crossings[x][slot]
        outward = d.ends[arc][0] == (x, slot)
        if outward:
            starts[arc] = down[j]
        else:
            ends[arc] = [(cid, p_out, p_in) for cid, p_in, p_out in reversed(down[j])]
    for arc in set(starts) | set(ends):
        events[arc] = starts.get(arc, []) + ends.get(arc, [])
    return _splice(d, events, under_pairs)


def predicted_linking_after_twist(lk: np.ndarray, k: int, q: int) -> np.ndarray:
    """Linking matrix of L(..., 1/q in position k, ...): l_ij + q l_ik l_jk."""
    lk = np.asarray(lk, dtype=int)
    n = lk.shape[0]
    if not 0 <= k < n:
        raise IndexError(f"component {k} out of range for {n} components")
    out = lk + q * np.outer(lk[:, k], lk[:, k])
    np.fill_diagonal(out, 0)
    keep = [i for i in range(n) if i != k]
    return out[np.ix_(keep, keep)]


# --------------------------------------------------------------------------
# slope vectors


@dataclass(frozen=True)
class Star:
    def __str__(self):
        return "*"


@dataclass(frozen=True)
class Infinity:
    def __str__(self):
        return "inf"


@dataclass(frozen=True)
class OneOverQ:
    q: int

    def __str__(self):
        return f"1/{self.q}"


STAR = Star()
INFINITY = Infinity()


def parse_slopes(text: str) -> list:
    """Parse ``"1/2,*,inf"``.  ``1/0`` means deletion; other p/q are refused."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok == "*":
            out.append(STAR)
        elif tok.lower() in ("inf", "1/0", "infinity"):
            out.append(INFINITY)
        elif "/" in tok:
            p, q = (int(v) for v in tok.split("/"))
            if q == 0:
                out.append(INFINITY)
            elif p == 1:
                out.append(OneOverQ(q))
            elif p == -1:
                out.append(OneOverQ(-q))
            else:
                raise ValueError(
                    f"slope {tok}: only 1/q surgery has a diagrammatic realization here"
                )
        else:
            try:
                value = Fraction(tok)
            except ValueError:
                raise ValueError(f"bad slope {tok!r}") from None
            if abs(value.numerator) != 1:
                raise ValueError(f"slope {tok}: only 1/q surgery is supported")
            out.append(OneOverQ(value.numerator * value.denominator))
    return out


def format_slopes(slopes) -> str:
    return ",".join(str(s) for s in slopes)


class SlopeFailure(RuntimeError):
    def __init__(self, component: int, report):
        super().__init__(f"component {component} could not be brought to bundled form")
        self.component = component
        self.report = report


def apply_slopes(d: LinkDiagram, slopes, budget=None, workers: int = 1):
    """Perform the surgeries in ``slopes`` (one entry per component).

    Entries are processed left to right; component indices refer to the
    input diagram.  Returns ``(diagram, steps)`` where ``steps`` records the
    certificate used to reach bundled form for each 1/q entry.  Raises
    :class:`SlopeFailure` if a component cannot be bundled within budget.
    """
    from .search import ComponentBundled, SearchBudget, search_reduce

    slopes = list(slopes)
    if len(slopes) != d.n_components:
        raise ValueError(f"{len(slopes)} slopes for {d.n_components} components")
    budget = budget or SearchBudget()
    alive = list(range(d.n_components))  # original index -> current index
    steps = []
    cur = d
    for orig, s in enumerate(slopes):
        if isinstance(s, Star):
            continue
        k = alive.index(orig)
        if isinstance(s, Infinity):
            cur = delete_component(cur, k)
            steps.append({"component": orig, "op": "delete"})
        elif isinstance(s, OneOverQ):
            site = detect_bundle(cur, k)
            cert = []
            if site is None:
                res = search_reduce(cur, ComponentBundled(k), budget, workers=workers)
                if not res.found:
                    raise SlopeFailure(orig, res.report)
                cur, cert = res.diagram, list(res.certificate)
                site = detect_bundle(cur, k)
            cur = twist(cur, site, s.q, keep=False)
            steps.append({"component": orig, "op": "twist", "q": s.q, "certificate": cert})
        else:
            raise ValueError(f"unsupported slope entry {s!r}")
        alive.remove(orig)
    return cur, steps
