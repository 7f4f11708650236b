"""
Reidemeister moves as value-level rewrites of :class:`LinkDiagram`.

Sites are named by arc labels so a :class:`MoveSpec` can be checked
against any diagram: removals and R3 name their face (arc-sides in face
order), additions name the arc-sides they act on.

Additions are built by one mechanism, :func:`_splice`: arcs are cut at
points along their direction of travel and routed through new crossings
described in local compass coordinates (positions counterclockwise
0..3).  The same mechanism inserts braids for the twist rewrite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Mapping

from .diagram import Crossing, LinkDiagram, _assemble, _excise

__all__ = [
    "MoveSpec",
    "SiteMismatch",
    "KINDS",
    "enumerate_moves",
    "apply_move",
    "inverse_candidates",
    "random_move",
]

KINDS = ("R1Remove", "R2Remove", "R3", "R1Add", "R2Add")


class SiteMismatch(ValueError):
    """The move's site does not exist in the diagram it was applied to."""


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    site: tuple
    options: Mapping[str, object] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "site": _listify(self.site), "options": dict(self.options)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "MoveSpec":
        return cls(obj["kind"], _tuplify(obj["site"]), dict(obj.get("options", {})))

    def sort_key(self):
        return (KINDS.index(self.kind), self.site, tuple(sorted(self.options.items())))


def _listify(x):
    return [_listify(v) for v in x] if isinstance(x, tuple) else x


def _tuplify(x):
    return tuple(_tuplify(v) for v in x) if isinstance(x, list) else x


# --------------------------------------------------------------------------
# faces as sites


def _face_site(d: LinkDiagram, face) -> tuple:
    sides = [d.arc_side(dart) for dart in face]
    i = sides.index(min(sides))
    return tuple(sides[i:] + sides[:i])


def _face_index(d: LinkDiagram) -> dict[tuple, list]:
    cache = d.__dict__.get("_face_index")
    if cache is None:
        cache = {_face_site(d, f): f for f in d.face_darts}
        d.__dict__["_face_index"] = cache
    return cache


def _monogon_ok(d, face) -> bool:
    return len(face) == 1


def _bigon_ok(d, face) -> bool:
    if len(face) != 2:
        return False
    (x, s), (y, t) = face
    if x == y:
        return False
    # the strand along each edge is over at x iff its slot there is odd
    ex = s % 2
    arr_y = d.other_end[(x, s)][1]
    return ex == arr_y % 2


def _triangle_over_edge(d, face) -> int | None:
    """Index of the face edge whose strand is over at both its ends."""
    if len(face) != 3 or len({x for x, _ in face}) != 3:
        return None
    for k, (x, s) in enumerate(face):
        y, t = d.other_end[(x, s)]
        if s % 2 == 1 and t % 2 == 1:
            return k
    return None


# --------------------------------------------------------------------------
# splicing new crossings into arcs


def _splice(
    d: LinkDiagram,
    events: Mapping[int, list[tuple[int, int, int]]],
    under_pairs: list[int],
    extra_order: Mapping[int, int] | None = None,
) -> LinkDiagram:
    """Cut arcs and route them through new crossings.

    ``events[arc]`` lists, in the arc's direction of travel, passages
    ``(new crossing id, entry position, exit position)``.  Positions are
    counterclockwise 0..3 around the new crossing; ``under_pairs[cid]`` is
    0 if positions 0/2 carry the under-strand, 1 for positions 1/3.
    """
    nxt = d.max_label() + 1
    n_new = len(under_pairs)
    lab = [[0] * 4 for _ in range(n_new)]
    inc = [[False] * 4 for _ in range(n_new)]
    head_sub: dict[tuple[int, int], int] = {}
    dropped_loops = set()
    order = dict(d.component_of)
    for arc, ev in events.items():
        if not ev:
            continue
        comp = d.component_of[arc]
        loop = arc in d.loops
        n = len(ev)
        pieces = [arc]
        for _ in range(n if not loop else n - 1):
            pieces.append(nxt)
            order[nxt] = comp
            nxt += 1
        if loop:
            dropped_loops.add(arc)
            pieces.append(arc)  # cyclic: last piece is the first
        else:
            head_sub[d.ends[arc][1]] = pieces[-1]
        for k, (cid, p_in, p_out) in enumerate(ev):
            lab[cid][p_in] = pieces[k]
            inc[cid][p_in] = True
            lab[cid][p_out] = pieces[k + 1]
    crossings = []
    for x, c in enumerate(d.crossings):
        if any((x, s) in head_sub for s in range(4)):
            slots = [head_sub.get((x, s), c[s]) for s in range(4)]
            c = Crossing(*slots, c.over_in)
        crossings.append(c)
    for cid in range(n_new):
        up = under_pairs[cid]
        rot = up if inc[cid][up] else up + 2
        slots = [lab[cid][(rot + k) % 4] for k in range(4)]
        over = 1 - up
        p_over_in = over if inc[cid][over] else over + 2
        crossings.append(Crossing(*slots, (p_over_in - rot) % 4))
    loops = [k for k in d.loops if k not in dropped_loops]
    if extra_order:
        order.update(extra_order)
    return _assemble(crossings, loops, order)


def _side_events(side: str, t_events):
    """Convert face-direction passages to the arc's true direction."""
    if side == "L":
        return list(t_events)
    return [(cid, p_out, p_in) for cid, p_in, p_out in reversed(t_events)]


def _r1_add(d: LinkDiagram, arc: int, side: str, first: str) -> LinkDiagram:
    # first passage S->N, the loop returns from W (monogon on the left) or E
    back = (3, 1) if side == "L" else (1, 3)
    events = {arc: [(0, 0, 2), (0, back[0], back[1])]}
    return _splice(d, events, [0 if first == "under" else 1])


def _r2_add(d: LinkDiagram, p, q, over: int, order: str) -> LinkDiagram:
    (a, sa), (b, sb) = p, q
    # crossing 0 (x) and 1 (y); compass positions S=0 E=1 N=2 W=3
    ev_p = _side_events(sa, [(0, 0, 2), (1, 2, 0)])
    ev_q = _side_events(sb, [(1, 1, 3), (0, 1, 3)])
    up = 1 if over == 0 else 0
    if a == b:
        events = {a: ev_p + ev_q if order == "pq" else ev_q + ev_p}
    else:
        events = {a: ev_p, b: ev_q}
    return _splice(d, events, [up, up])


def _r3(d: LinkDiagram, face) -> LinkDiagram:
    # crossing x_k carries edge e_k at slot s_k and e_{k-1} at s_k + 1.
    # After the slide, x_k holds (O_k^+, O_{k-1}^-, e_k, e_{k-1}) at
    # slots s_k .. s_k+3, where O_k^- / O_k^+ are the outer arcs of the
    # strand of e_k at x_k / x_{k+1}.
    xs = [x for x, _ in face]
    ss = [s for _, s in face]
    edges = [d.crossings[x][s] for x, s in face]
    outer_minus = [d.crossings[xs[k]][(ss[k] + 2) % 4] for k in range(3)]
    outer_plus = [d.crossings[xs[(k + 1) % 3]][(ss[(k + 1) % 3] + 3) % 4] for k in range(3)]
    crossings = list(d.crossings)
    for k in range(3):
        x, s = xs[k], ss[k]
        new = [0] * 4
        new[s] = outer_plus[k]
        new[(s + 1) % 4] = outer_minus[k - 1]
        new[(s + 2) % 4] = edges[k]
        new[(s + 3) % 4] = edges[k - 1]
        crossings[x] = Crossing(*new, d.crossings[x].over_in)
    return _assemble(crossings, d.loops, d.component_of)


# --------------------------------------------------------------------------
# enumeration


def _arc_sides_by_face(d: LinkDiagram):
    """Yield (piece id, face arc-sides) for crossing faces and loop faces."""
    piece_of = {}
    for i, piece in enumerate(d.pieces):
        for x in piece:
            piece_of[x] = i
    out = []
    for face in d.face_darts:
        out.append((piece_of[face[0][0]], [d.arc_side(dart) for dart in face]))
    base = len(d.pieces)
    for j, k in enumerate(d.loops):
        out.append((base + j, [(k, "L")]))
        out.append((base + j, [(k, "R")]))
    return out


def _r2_add_pairs(d: LinkDiagram) -> set[tuple]:
    faces = _arc_sides_by_face(d)
    pairs: set[tuple] = set()
    by_piece: dict[int, set] = {}
    for piece, sides in faces:
        uniq = sorted(set(sides))
        by_piece.setdefault(piece, set()).update(uniq)
        for u in uniq:
            pairs.add((u, u))
        for u, v in combinations(uniq, 2):
            pairs.add((u, v))
    pieces = sorted(by_piece)
    for i, j in combinations(pieces, 2):
        for u in by_piece[i]:
            for v in by_piece[j]:
                pairs.add((min(u, v), max(u, v)))
    return pairs


def enumerate_moves(d: LinkDiagram, cap: int | None = None) -> list[MoveSpec]:
    """All single Reidemeister moves on ``d``.

    Additions are included only while the result stays within ``cap``
    crossings (``None`` means no additions).
    """
    moves: list[MoveSpec] = []
    for site, face in _face_index(d).items():
        if _monogon_ok(d, face):
            moves.append(MoveSpec("R1Remove", site))
        elif _bigon_ok(d, face):
            moves.append(MoveSpec("R2Remove", site))
        else:
            k = _triangle_over_edge(d, face)
            if k is not None:
                moves.append(MoveSpec("R3", site, {"over": site_edge(d, face, k)}))
    c = d.n_crossings
    if cap is not None and c + 1 <= cap:
        for arc in sorted(d.labels):
            for side in ("L", "R"):
                for first in ("over", "under"):
                    moves.append(MoveSpec("R1Add", (arc,), {"side": side, "first": first}))
    if cap is not None and c + 2 <= cap:
        for p, q in sorted(_r2_add_pairs(d)):
            orders = ("pq", "qp") if p[0] == q[0] and p[0] not in d.loops else ("pq",)
            for order in orders:
                for over in (0, 1):
                    opts = {"over": over}
                    if p[0] == q[0]:
                        opts["order"] = order
                    moves.append(MoveSpec("R2Add", (p, q), opts))
    moves.sort(key=MoveSpec.sort_key)
    return moves


def site_edge(d, face, k) -> int:
    return d.crossings[face[k][0]][face[k][1]]


# --------------------------------------------------------------------------
# application


def apply_move(d: LinkDiagram, m: MoveSpec) -> LinkDiagram:
    """Apply ``m`` to ``d``, raising :class:`SiteMismatch` if it does not fit."""
    kind = m.kind
    if kind in ("R1Remove", "R2Remove", "R3"):
        face = _face_index(d).get(m.site)
        if face is None:
            raise SiteMismatch(f"{kind}: no face {m.site}")
        if kind == "R1Remove":
            if not _monogon_ok(d, face):
                raise SiteMismatch(f"R1Remove: face {m.site} is not a monogon")
            return _excise(d, {face[0][0]})
        if kind == "R2Remove":
            if not _bigon_ok(d, face):
                raise SiteMismatch(f"R2Remove: face {m.site} is not a coherent bigon")
            return _excise(d, {face[0][0], face[1][0]})
        k = _triangle_over_edge(d, face)
        if k is None:
            raise SiteMismatch(f"R3: face {m.site} admits no slide")
        return _r3(d, face)
    if kind == "R1Add":
        (arc,) = m.site
        if arc not in d.labels:
            raise SiteMismatch(f"R1Add: no arc {arc}")
        return _r1_add(d, arc, m.options["side"], m.options["first"])
    if kind == "R2Add":
        p, q = m.site
        if p[0] not in d.labels or q[0] not in d.labels:
            raise SiteMismatch(f"R2Add: arcs {p[0]}, {q[0]} not both present")
        if (min(p, q), max(p, q)) not in _r2_add_pairs(d):
            raise SiteMismatch(f"R2Add: {p} and {q} do not share a face")
        return _r2_add(d, p, q, m.options["over"], m.options.get("order", "pq"))
    raise SiteMismatch(f"unknown move kind {kind!r}")


def inverse_candidates(before: LinkDiagram, m: MoveSpec, after: LinkDiagram) -> Iterator[MoveSpec]:
    """Moves on ``after`` that could undo ``m`` (caller checks the key)."""
    inverse_kind = {
        "R1Add": "R1Remove",
        "R1Remove": "R1Add",
        "R2Add": "R2Remove",
        "R2Remove": "R2Add",
        "R3": "R3",
    }[m.kind]
    cap = after.n_crossings + (2 if inverse_kind.endswith("Add") else 0)
    return (mv for mv in enumerate_moves(after, cap) if mv.kind == inverse_kind)


def random_move(d: LinkDiagram, rng: random.Random, cap: int, kinds=KINDS) -> MoveSpec | None:
    moves = [m for m in enumerate_moves(d, cap) if m.kind in kinds]
    return rng.choice(moves) if moves else None
