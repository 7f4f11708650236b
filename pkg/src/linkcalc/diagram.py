"""
Planar link diagrams in PD notation.

A crossing is written ``X[a,b,c,d]``: the four arc labels read
counterclockwise, starting at the incoming under-strand, so the
under-strand runs ``a -> c``.  Which of ``b``/``d`` is the incoming
over-strand is fixed by the global orientation of the arcs; it is stored
explicitly on each :class:`Crossing` as ``over_in`` (slot 1 or 3).

Sign convention: with the under-strand pointing up the page, a crossing
whose over-strand runs left to right (``d -> b``, ``over_in == 3``) is
positive.  The right-handed trefoil ``X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]``
has writhe +3.

Crossing-free components are kept as explicit loop records ``O[k]``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

import numpy as np

__all__ = [
    "Crossing",
    "LinkDiagram",
    "DiagramError",
    "PDSyntaxError",
    "MultiplicityError",
    "OrientationError",
    "PlanarityError",
    "parse_pd",
    "to_pd",
    "to_json",
    "from_json",
    "linking_matrix",
    "writhe",
    "delete_component",
    "faces",
    "canonical_key",
    "canonical_form",
    "relabel",
    "permute_components",
    "is_homologically_trivial",
]


class DiagramError(ValueError):
    """Base class for malformed diagrams."""


class PDSyntaxError(DiagramError):
    pass


class MultiplicityError(DiagramError):
    pass


class OrientationError(DiagramError):
    pass


class PlanarityError(DiagramError):
    pass


class Crossing(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    over_in: int  # slot (1 or 3) where the over-strand enters

    @property
    def slots(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def sign(self) -> int:
        return 1 if self.over_in == 3 else -1

    def is_head(self, slot: int) -> bool:
        """True if the arc at ``slot`` ends (enters) here."""
        return slot == 0 or slot == self.over_in


Dart = tuple[int, int]  # (crossing index, slot)
ArcSide = tuple[int, str]  # (arc label, "L" | "R")


@dataclass(frozen=True)
class LinkDiagram:
    """Immutable oriented link diagram.

    ``components`` lists each component as its arcs in traversal order;
    a crossing-free component is a one-arc loop whose label is in ``loops``.
    Build instances through :func:`parse_pd`, :func:`from_json` or the
    rewrite operations; the constructor does not validate.
    """

    crossings: tuple[Crossing, ...]
    loops: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @cached_property
    def ends(self) -> dict[int, tuple[Dart, Dart]]:
        """arc -> (tail dart, head dart); loops are absent."""
        tails: dict[int, Dart] = {}
        heads: dict[int, Dart] = {}
        for x, cr in enumerate(self.crossings):
            for s in range(4):
                (heads if cr.is_head(s) else tails)[cr[s]] = (x, s)
        return {arc: (tails[arc], heads[arc]) for arc in tails}

    @cached_property
    def component_of(self) -> dict[int, int]:
        return {arc: i for i, comp in enumerate(self.components) for arc in comp}

    @cached_property
    def other_end(self) -> dict[Dart, Dart]:
        out = {}
        for tail, head in self.ends.values():
            out[tail] = head
            out[head] = tail
        return out

    @cached_property
    def labels(self) -> frozenset[int]:
        return frozenset(self.component_of)

    def max_label(self) -> int:
        return max(self.labels, default=0)

    @cached_property
    def pieces(self) -> list[list[int]]:
        """Connected pieces of the 4-valent graph, as sorted crossing lists."""
        return _crossing_pieces(self.crossings, self.other_end)

    @cached_property
    def face_darts(self) -> list[list[Dart]]:
        return _trace_faces(self.crossings, self.other_end)

    def arc_side(self, dart: Dart) -> ArcSide:
        """The arc-side seen on the left when leaving along ``dart``."""
        x, s = dart
        arc = self.crossings[x][s]
        return (arc, "L" if not self.crossings[x].is_head(s) else "R")

    def __str__(self) -> str:
        return to_pd(self)


# --------------------------------------------------------------------------
# assembly and validation


def _crossing_pieces(crossings, other_end) -> list[list[int]]:
    parent = list(range(len(crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (x, _), (y, _) in other_end.items():
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    groups: dict[int, list[int]] = {}
    for x in range(len(crossings)):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def _trace_faces(crossings, other_end) -> list[list[Dart]]:
    # Leave along a dart, arrive at (y, t), turn to slot t-1: keeps the face on the left.
    seen = set()
    result = []
    for x in range(len(crossings)):
        for s in range(4):
            if (x, s) in seen:
                continue
            face = []
            dart = (x, s)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                y, t = other_end[dart]
                dart = (y, (t - 1) % 4)
            result.append(face)
    return result


def _assemble(
    crossings: Iterable[Crossing],
    loops: Iterable[int] = (),
    order: Mapping[int, int] | None = None,
    check_planar: bool = True,
) -> LinkDiagram:
    """Validate raw data and trace components.

    ``order`` maps arcs to a sort key; components are ordered by the
    smallest key among their arcs (used to keep component indices stable
    across rewrites).  Without it, components are ordered by smallest label.
    """
    crossings = tuple(crossings)
    loops = tuple(loops)
    counts: dict[int, int] = {}
    for x, cr in enumerate(crossings):
        if cr.over_in not in (1, 3):
            raise OrientationError(f"crossing {x}: over_in must be 1 or 3")
        for arc in cr[:4]:
            if not isinstance(arc, (int, np.integer)) or arc <= 0:
                raise MultiplicityError(f"crossing {x}: arc label {arc!r} is not a positive integer")
            counts[arc] = counts.get(arc, 0) + 1
    for k in loops:
        if k <= 0:
            raise MultiplicityError(f"loop label {k!r} is not a positive integer")
        if k in counts:
            raise MultiplicityError(f"loop label {k} also used by a crossing")
        counts[k] = counts.get(k, 0) + 2
    bad = sorted(arc for arc, n in counts.items() if n != 2)
    if bad:
        raise MultiplicityError(
            "arc labels must appear exactly twice (or once as a loop): "
            + ", ".join(str(arc) for arc in bad)
        )

    heads: dict[int, Dart] = {}
    tails: dict[int, Dart] = {}
    for x, cr in enumerate(crossings):
        for s in range(4):
            side = heads if cr.is_head(s) else tails
            arc = cr[s]
            if arc in side:
                raise OrientationError(
                    f"arc {arc} has two {'heads' if side is heads else 'tails'} "
                    f"(crossings {side[arc][0]} and {x})"
                )
            side[arc] = (x, s)

    succ = {}
    for arc, (x, s) in heads.items():
        succ[arc] = crossings[x][(s + 2) % 4]

    comps: list[tuple[int, ...]] = []
    seen: set[int] = set()
    for start in sorted(succ):
        if start in seen:
            continue
        seq = []
        arc = start
        while arc not in seen:
            seen.add(arc)
            seq.append(arc)
            arc = succ[arc]
        comps.append(tuple(seq))
    comps.extend((k,) for k in loops)

    key = (lambda c: (min(order.get(a, 1 << 60) for a in c), min(c))) if order else min
    comps.sort(key=key)

    d = LinkDiagram(crossings, loops, tuple(comps))
    if check_planar:
        _check_planar(d)
    return d


def _check_planar(d: LinkDiagram) -> None:
    face_count: dict[int, int] = {}
    piece_of = {}
    for i, piece in enumerate(d.pieces):
        for x in piece:
            piece_of[x] = i
    for face in d.face_darts:
        p = piece_of[face[0][0]]
        face_count[p] = face_count.get(p, 0) + 1
    for i, piece in enumerate(d.pieces):
        v = len(piece)
        chi = v - 2 * v + face_count.get(i, 0)
        if chi != 2:
            raise PlanarityError(
                f"piece containing crossing {piece[0]} has V-E+F = {chi}, not 2"
            )


# --------------------------------------------------------------------------
# PD text and JSON

_TERM = re.compile(r"([XO])\[\s*([-\d\s,]*?)\s*\]")


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD text such as ``"X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"``.

    ``O[k]`` adds a crossing-free loop.  ``%`` starts a comment.  Commas
    between terms and an enclosing ``PD[...]`` are tolerated.
    """
    body = "\n".join(line.split("%", 1)[0] for line in text.splitlines())
    body = body.strip()
    if body.startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
    quads: list[tuple[int, ...]] = []
    loops: list[int] = []
    pos = 0
    for m in _TERM.finditer(body):
        gap = body[pos : m.start()]
        if gap.strip(" \t\r\n,"):
            raise PDSyntaxError(f"unexpected text {gap.strip()!r}")
        pos = m.end()
        try:
            nums = [int(tok) for tok in m.group(2).replace(",", " ").split()]
        except ValueError:
            raise PDSyntaxError(f"bad term {m.group(0)!r}") from None
        if m.group(1) == "X":
            if len(nums) != 4:
                raise PDSyntaxError(f"crossing {m.group(0)!r} needs 4 labels")
            quads.append(tuple(nums))
        else:
            if len(nums) != 1:
                raise PDSyntaxError(f"loop {m.group(0)!r} needs 1 label")
            loops.append(nums[0])
    if body[pos:].strip(" \t\r\n,"):
        raise PDSyntaxError(f"unexpected text {body[pos:].strip()!r}")
    return from_quads(quads, loops)


def from_quads(quads: Iterable[Iterable[int]], loops: Iterable[int] = ()) -> LinkDiagram:
    """Build a diagram from bare PD quadruples, inferring over-strand directions.

    A component that passes under somewhere has its direction forced.  A
    component that is over at every crossing is oriented so labels
    increase along it (for two-arc components: the smaller label leaves
    the lower-numbered crossing).
    """
    quads = [tuple(q) for q in quads]
    loops = list(loops)
    counts: dict[int, int] = {}
    for x, q in enumerate(quads):
        for arc in q:
            if arc <= 0:
                raise MultiplicityError(f"crossing {x}: arc label {arc} is not positive")
            counts[arc] = counts.get(arc, 0) + 1
    for k in loops:
        counts[k] = counts.get(k, 0) + 2
    bad = sorted(arc for arc, n in counts.items() if n != 2)
    if bad:
        raise MultiplicityError(
            "arc labels must appear exactly twice (or once as a loop): "
            + ", ".join(f"{arc} appears {counts[arc]} time(s)" for arc in bad)
        )

    slots_of: dict[int, list[Dart]] = {}
    for x, q in enumerate(quads):
        for s in range(4):
            slots_of.setdefault(q[s], []).append((x, s))

    def across(dart: Dart) -> Dart:
        # the other slot of the arc occupying `dart`
        a, b = slots_of[quads[dart[0]][dart[1]]]
        return b if a == dart else a

    over_in = [0] * len(quads)
    done = [[False] * 4 for _ in quads]
    for x0 in range(len(quads)):
        for s0 in range(4):
            if done[x0][s0]:
                continue
            # collect the unoriented strand cycle through (x0, s0)
            cycle: list[Dart] = []  # entry darts in one travel direction
            dart = (x0, s0)
            while True:
                x, s = dart
                cycle.append((x, s))
                done[x][s] = True
                done[x][(s + 2) % 4] = True
                dart = across((x, (s + 2) % 4))
                if dart == (x0, s0):
                    break
            forward = _cycle_direction(cycle, quads)
            if forward is None:
                raise OrientationError(
                    f"component through crossing {x0} passes under in both directions"
                )
            for x, s in cycle:
                entry = s if forward else (s + 2) % 4
                if entry % 2 == 1:
                    over_in[x] = entry
    crossings = [Crossing(*q, over_in[x]) for x, q in enumerate(quads)]
    return _assemble(crossings, loops)


def _cycle_direction(cycle: list[Dart], quads) -> bool | None:
    """Decide whether ``cycle``'s listed entry darts are the true direction."""
    forced = {s == 0 for _, s in cycle if s % 2 == 0}
    if len(forced) > 1:
        return None
    if forced:
        return forced.pop()
    # All-over component.  Arc entering cycle[i] is the arc at that slot.
    arcs_in = [quads[x][s] for x, s in cycle]
    arcs_out = [quads[x][(s + 2) % 4] for x, s in cycle]
    n = len(cycle)
    if n >= 3:
        lo = min(arcs_in)
        i = arcs_in.index(lo)
        # forward travel: arc lo is followed by arcs_out[i]; backward by arcs_in[i-1]
        return arcs_out[i] < arcs_in[i - 1]
    lo = min(arcs_in)
    i = arcs_in.index(lo)
    # forward: arc lo enters cycle[i]; its tail is the previous crossing
    tail_forward = cycle[i - 1][0]
    head_forward = cycle[i][0]
    return tail_forward <= head_forward


def _serial_labels(d: LinkDiagram) -> dict[int, int]:
    """Relabel arcs 1..2c consecutively along components, loops after."""
    mapping: dict[int, int] = {}
    nxt = 1
    for comp in d.components:
        if len(comp) == 1 and comp[0] in d.loops:
            continue
        start = 0
        if not _passes_under(d, comp):
            if len(comp) == 2:
                # the parser orients a two-arc all-over component by having
                # the smaller label leave the lower-numbered crossing
                tails = [d.ends[a][0][0] for a in comp]
                start = 0 if tails[0] <= tails[1] else 1
        for k in range(len(comp)):
            mapping[comp[(start + k) % len(comp)]] = nxt
            nxt += 1
    for k in d.loops:
        mapping[k] = nxt
        nxt += 1
    return mapping


def _passes_under(d: LinkDiagram, comp: tuple[int, ...]) -> bool:
    return any(d.ends[a][1][1] == 0 for a in comp)


def relabel(d: LinkDiagram, mapping: Mapping[int, int]) -> LinkDiagram:
    """Rename arcs by ``mapping`` (must be injective on the used labels)."""
    crossings = [
        Crossing(mapping[c.a], mapping[c.b], mapping[c.c], mapping[c.d], c.over_in)
        for c in d.crossings
    ]
    order = {mapping[a]: i for a, i in d.component_of.items()}
    return _assemble(crossings, [mapping[k] for k in d.loops], order, check_planar=False)


def permute_components(d: LinkDiagram, perm) -> LinkDiagram:
    """Reorder components: new component ``i`` is old component ``perm[i]``."""
    perm = list(perm)
    if sorted(perm) != list(range(d.n_components)):
        raise ValueError(f"{perm} is not a permutation of {d.n_components} components")
    rank = {old: new for new, old in enumerate(perm)}
    order = {a: rank[i] for a, i in d.component_of.items()}
    return _assemble(d.crossings, d.loops, order, check_planar=False)


def to_pd(d: LinkDiagram) -> str:
    """Serialize with arcs renumbered consecutively along components."""
    m = _serial_labels(d)
    terms = [f"X[{m[c.a]},{m[c.b]},{m[c.c]},{m[c.d]}]" for c in d.crossings]
    terms += [f"O[{m[k]}]" for k in d.loops]
    return " ".join(terms)


def to_json(d: LinkDiagram) -> dict:
    return {
        "crossings": [list(c.slots) for c in d.crossings],
        "loops": list(d.loops),
        "components": [list(c) for c in d.components],
    }


def from_json(obj: Mapping | str) -> LinkDiagram:
    """Inverse of :func:`to_json`; orientation comes from ``components``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    quads = [tuple(int(v) for v in q) for q in obj["crossings"]]
    loops = [int(k) for k in obj.get("loops", [])]
    comps = obj.get("components")
    if not comps:
        return from_quads(quads, loops)
    succ = {}
    for comp in comps:
        for i, arc in enumerate(comp):
            succ[int(arc)] = int(comp[(i + 1) % len(comp)])
    crossings = []
    for x, q in enumerate(quads):
        b, d_ = q[1], q[3]
        # over goes b -> d iff the arc after b is d; two-arc components need
        # the under-strand to disambiguate, so fall back to slot counting
        if succ.get(b) == d_ and succ.get(d_) != b:
            over_in = 1
        elif succ.get(d_) == b and succ.get(b) != d_:
            over_in = 3
        else:
            return from_quads(quads, loops)
        crossings.append(Crossing(*q, over_in))
    order = {int(a): i for i, comp in enumerate(comps) for a in comp}
    return _assemble(crossings, loops, order)


# --------------------------------------------------------------------------
# homological data


def writhe(d: LinkDiagram) -> int:
    return sum(c.sign for c in d.crossings)


def linking_matrix(d: LinkDiagram) -> np.ndarray:
    """Symmetric integer matrix of pairwise linking numbers."""
    n = d.n_components
    m = np.zeros((n, n), dtype=int)
    comp = d.component_of
    for c in d.crossings:
        i, j = comp[c.a], comp[c.b]
        if i != j:
            m[i, j] += c.sign
            m[j, i] += c.sign
    if (m % 2).any():
        raise DiagramError("odd signed crossing count between two components")
    return m // 2


def is_homologically_trivial(d: LinkDiagram) -> bool:
    return not linking_matrix(d).any()


# --------------------------------------------------------------------------
# excision: removing crossings while strands pass straight through


def _excise(
    d: LinkDiagram, drop: Iterable[int], drop_component: int | None = None
) -> LinkDiagram:
    drop = set(drop)
    comp = d.component_of
    parent: dict[int, int] = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in drop:
        cr = d.crossings[x]
        for s in (0, 1):
            if comp[cr[s]] != drop_component:
                ra, rb = find(cr[s]), find(cr[s + 2])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

    kept = [x for x in range(d.n_crossings) if x not in drop]
    crossings = [
        Crossing(*(find(a) for a in d.crossings[x][:4]), d.crossings[x].over_in) for x in kept
    ]
    used = {a for c in crossings for a in c[:4]}
    loops = [k for k in d.loops if comp[k] != drop_component]
    for arc in d.ends:
        if comp[arc] == drop_component:
            continue
        r = find(arc)
        if r not in used and r not in loops:
            loops.append(r)
    order = {}
    for arc, i in comp.items():
        if i != drop_component:
            r = find(arc)
            order[r] = min(order.get(r, i), i)
    return _assemble(crossings, sorted(loops), order, check_planar=False)


def delete_component(d: LinkDiagram, i: int) -> LinkDiagram:
    """Remove component ``i`` (0-based): the slope 1/0 in position ``i``."""
    if not 0 <= i < d.n_components:
        raise IndexError(f"component {i} out of range for {d.n_components} components")
    comp = d.component_of
    drop = [
        x for x, c in enumerate(d.crossings) if comp[c.a] == i or comp[c.b] == i
    ]
    return _excise(d, drop, drop_component=i)


# --------------------------------------------------------------------------
# faces


def faces(d: LinkDiagram) -> list[list[ArcSide]]:
    """Faces as cyclic lists of arc-sides, plus two faces per loop."""
    out = [[d.arc_side(dart) for dart in face] for face in d.face_darts]
    for k in d.loops:
        out.append([(k, "L")])
        out.append([(k, "R")])
    return out


# --------------------------------------------------------------------------
# canonical keys


def _piece_code(d: LinkDiagram, piece: list[int]) -> tuple[tuple, list[int]]:
    crossings = d.crossings
    nbr = {}
    for (x, s), (y, t) in d.other_end.items():
        nbr[x, s] = (y, t)
    best = None
    best_order = None
    for x0 in piece:
        num = {x0: 0}
        order = [x0]
        code = []
        i = 0
        better = best is None
        while i < len(order):
            x = order[i]
            row = [crossings[x].over_in]
            for s in range(4):
                y, t = nbr[x, s]
                if y not in num:
                    num[y] = len(order)
                    order.append(y)
                row.append(num[y] * 4 + t)
            row = tuple(row)
            if not better:
                ref = best[i]
                if row > ref:
                    break
                if row < ref:
                    better = True
            code.append(row)
            i += 1
        else:
            if better:
                best = tuple(code)
                best_order = order
    return best, best_order


def _codes(d: LinkDiagram) -> list[tuple[tuple, list[int]]]:
    return sorted((_piece_code(d, p) for p in d.pieces), key=lambda t: t[0])


def canonical_key(d: LinkDiagram) -> str:
    """String identifying ``d`` up to arc relabeling and component order."""
    return _key_from_codes(d, _codes(d))


def _key_from_codes(d, codes) -> str:
    parts = [
        ".".join("".join(chr(48 + v) if v < 74 else f"({v})" for v in row) for row in code)
        for code, _ in codes
    ]
    return "|".join(parts) + f"#{len(d.loops)}"


def canonical_form(d: LinkDiagram) -> LinkDiagram:
    """Relabel ``d`` so that isomorphic diagrams become identical values.

    Crossings are renumbered by the canonical traversal, arcs by first
    appearance, and components are ordered by their smallest new label.
    """
    order = [x for _, piece_order in _codes(d) for x in piece_order]
    mapping: dict[int, int] = {}
    for x in order:
        for arc in d.crossings[x][:4]:
            if arc not in mapping:
                mapping[arc] = len(mapping) + 1
    for k in d.loops:
        mapping[k] = len(mapping) + 1
    crossings = [
        Crossing(*(mapping[a] for a in d.crossings[x][:4]), d.crossings[x].over_in) for x in order
    ]
    return _assemble(crossings, [mapping[k] for k in d.loops], check_planar=False)
