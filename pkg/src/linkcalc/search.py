"""
Bounded breadth-first search over the Reidemeister move graph.

The graph is explored layer by layer from the input diagram, deduplicated
by canonical key.  Only keys and parent pointers are kept for visited
nodes; diagrams are held for the current frontier only.  Layers can be
expanded by a process pool; results are merged in enumeration order, so
the outcome and the certificate do not depend on the worker count.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .diagram import LinkDiagram, canonical_key
from .moves import MoveSpec, SiteMismatch, apply_move, enumerate_moves

log = logging.getLogger(__name__)

__all__ = [
    "SearchBudget",
    "SearchReport",
    "Found",
    "NotFound",
    "Crossingless",
    "ComponentSelfCrossingFree",
    "ComponentBundled",
    "AnyComponentBundled",
    "search_reduce",
    "greedy_reduce",
    "replay_certificate",
    "CertificateError",
    "Trivial",
    "Nontrivial",
    "Inconclusive",
    "Witness",
    "is_unknot",
]


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one search.

    ``max_crossings=None`` means the input's crossing count plus
    ``headroom``.
    """

    max_crossings: int | None = None
    max_nodes: int = 100_000
    max_depth: int = 64
    headroom: int = 2

    def __post_init__(self):
        for name in ("max_nodes", "max_depth"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.max_crossings is not None and self.max_crossings < 0:
            raise ValueError("max_crossings must be non-negative")
        if self.headroom < 0:
            raise ValueError("headroom must be non-negative")

    def cap_for(self, d: LinkDiagram) -> int:
        if self.max_crossings is None:
            return d.n_crossings + self.headroom
        return max(self.max_crossings, d.n_crossings)

    def to_json(self) -> dict:
        return {
            "max_crossings": self.max_crossings,
            "max_nodes": self.max_nodes,
            "max_depth": self.max_depth,
            "headroom": self.headroom,
        }


@dataclass(frozen=True)
class SearchReport:
    nodes: int
    frontier: int
    depth: int
    caps_hit: tuple[str, ...]
    cap: int

    def to_json(self) -> dict:
        return {
            "nodes": self.nodes,
            "frontier": self.frontier,
            "depth": self.depth,
            "caps_hit": list(self.caps_hit),
            "max_crossings": self.cap,
        }


@dataclass(frozen=True)
class Found:
    diagram: LinkDiagram
    certificate: tuple[MoveSpec, ...]
    nodes: int = 0
    found = True


@dataclass(frozen=True)
class NotFound:
    report: SearchReport
    found = False


# --------------------------------------------------------------------------
# targets


@dataclass(frozen=True)
class Crossingless:
    def __call__(self, d: LinkDiagram) -> bool:
        return d.n_crossings == 0

    def __str__(self):
        return "crossingless"


@dataclass(frozen=True)
class ComponentSelfCrossingFree:
    component: int

    def __call__(self, d: LinkDiagram) -> bool:
        comp = d.component_of
        i = self.component
        return not any(comp[c.a] == i and comp[c.b] == i for c in d.crossings)

    def __str__(self):
        return f"component {self.component} self-crossing free"


@dataclass(frozen=True)
class ComponentBundled:
    component: int

    def __call__(self, d: LinkDiagram) -> bool:
        from .surgery import detect_bundle

        return detect_bundle(d, self.component) is not None

    def __str__(self):
        return f"component {self.component} bundled"


@dataclass(frozen=True)
class AnyComponentBundled:
    """Some component is bundled; used to pick the cheapest twist site."""

    def __call__(self, d: LinkDiagram) -> bool:
        return self.which(d) is not None

    def which(self, d: LinkDiagram) -> int | None:
        from .surgery import detect_bundle

        for i in range(d.n_components):
            if detect_bundle(d, i) is not None:
                return i
        return None

    def __str__(self):
        return "some component bundled"


# --------------------------------------------------------------------------
# search


def greedy_reduce(d: LinkDiagram, target: Callable | None = None):
    """Apply the first available R1/R2 removal until none remain or ``target`` holds."""
    cert = []
    while not (target and target(d)):
        removals = [m for m in enumerate_moves(d, None) if m.kind in ("R1Remove", "R2Remove")]
        if not removals:
            break
        m = removals[0]
        d = apply_move(d, m)
        cert.append(m)
    return d, cert


def _expand(args):
    d, cap, target = args
    out = []
    for m in enumerate_moves(d, cap):
        child = apply_move(d, m)
        out.append((m, canonical_key(child), child, bool(target(child))))
    return out


def search_reduce(
    d: LinkDiagram,
    target: Callable[[LinkDiagram], bool],
    budget: SearchBudget | None = None,
    *,
    workers: int = 1,
    greedy: bool = True,
    trace: Callable[[dict], None] | None = None,
    pool: ProcessPoolExecutor | None = None,
) -> Found | NotFound:
    """Find a diagram reachable from ``d`` that satisfies ``target``.

    Returns :class:`Found` with a replayable certificate, or
    :class:`NotFound` with exhaustion statistics.
    """
    budget = budget or SearchBudget()
    if target(d):
        return Found(d, (), 0)
    prefix: list[MoveSpec] = []
    if greedy:
        d, prefix = greedy_reduce(d, target)
        if target(d):
            return Found(d, tuple(prefix), 0)
    cap = budget.cap_for(d)
    root = canonical_key(d)
    parent: dict[str, tuple[str, MoveSpec] | None] = {root: None}
    frontier = [(root, d)]
    depth = 0
    if trace:
        trace({"key": root, "depth": 0, "crossings": d.n_crossings})

    own_pool = None
    if workers > 1 and pool is None:
        own_pool = pool = ProcessPoolExecutor(max_workers=workers)
    try:
        while frontier:
            if depth >= budget.max_depth:
                return NotFound(SearchReport(len(parent), len(frontier), depth, ("max_depth",), cap))
            jobs = [(diag, cap, target) for _, diag in frontier]
            if pool is not None and len(jobs) > 1:
                chunk = max(1, len(jobs) // (4 * workers))
                expanded = pool.map(_expand, jobs, chunksize=chunk)
            else:
                expanded = map(_expand, jobs)
            nxt = []
            for (key, _), children in zip(frontier, expanded):
                for m, ckey, child, hit in children:
                    if ckey in parent:
                        continue
                    parent[ckey] = (key, m)
                    if trace:
                        trace({"key": ckey, "depth": depth + 1, "crossings": child.n_crossings})
                    if hit:
                        cert = _path(parent, ckey)
                        return Found(child, tuple(prefix + cert), len(parent))
                    if len(parent) >= budget.max_nodes:
                        return NotFound(
                            SearchReport(len(parent), len(nxt) + 1, depth + 1, ("max_nodes",), cap)
                        )
                    nxt.append((ckey, child))
            frontier = nxt
            depth += 1
        return NotFound(SearchReport(len(parent), 0, depth, ("max_crossings",), cap))
    finally:
        if own_pool is not None:
            own_pool.shutdown()


def _path(parent, key) -> list[MoveSpec]:
    out = []
    while parent[key] is not None:
        key, m = parent[key]
        out.append(m)
    out.reverse()
    return out


class CertificateError(ValueError):
    def __init__(self, step: int, cause: Exception):
        super().__init__(f"certificate step {step}: {cause}")
        self.step = step


def replay_certificate(d: LinkDiagram, cert: Iterable[MoveSpec]) -> LinkDiagram:
    for i, m in enumerate(cert):
        try:
            d = apply_move(d, m)
        except SiteMismatch as exc:
            raise CertificateError(i, exc) from exc
    return d


# --------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Trivial:
    """Certified trivial.

    For one component ``certificate`` reduces the diagram to a loop.  For
    links it brings ``evidence["component"]`` to bundled form, and
    ``evidence`` holds the sublink and twisted-link verdicts.
    """

    certificate: tuple[MoveSpec, ...] = ()
    evidence: dict | None = None
    kind = "Trivial"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "certificate": [m.to_json() for m in self.certificate]}
        if self.evidence is not None:
            ev = self.evidence
            out["evidence"] = {
                "component": ev["component"],
                "q": ev["q"],
                "sublinks": [v.to_json() for v in ev["sublinks"]],
                "twisted": ev["twisted"].to_json(),
            }
        return out


@dataclass(frozen=True)
class Witness:
    """A nonzero linking number in a diagram derived from the input.

    ``path`` lists the steps leading to that diagram: ``("delete", i)`` or
    ``("twist", k, q, certificate)``; each step's result is put in
    canonical form before the next.
    """

    i: int
    j: int
    value: int
    path: tuple = ()

    def to_json(self) -> dict:
        steps = []
        for step in self.path:
            if step[0] == "delete":
                steps.append({"op": "delete", "component": step[1]})
            else:
                steps.append(
                    {
                        "op": "twist",
                        "component": step[1],
                        "q": step[2],
                        "certificate": [m.to_json() for m in step[3]],
                    }
                )
        return {"i": self.i, "j": self.j, "value": self.value, "path": steps}


@dataclass(frozen=True)
class Nontrivial:
    witness: Witness
    kind = "Nontrivial"

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": self.witness.to_json()}


@dataclass(frozen=True)
class Inconclusive:
    report: dict = field(default_factory=dict)
    kind = "Inconclusive"

    def to_json(self) -> dict:
        return {"kind": self.kind, "report": self.report}


def is_unknot(
    d: LinkDiagram, budget: SearchBudget | None = None, *, workers: int = 1, pool=None
) -> Trivial | Inconclusive:
    """Bounded unknot check: Trivial with a certificate, or Inconclusive.

    Knottedness is never certified.
    """
    if d.n_components != 1:
        raise ValueError(f"is_unknot needs one component, got {d.n_components}")
    res = search_reduce(d, Crossingless(), budget, workers=workers, pool=pool)
    if res.found:
        return Trivial(res.certificate)
    return Inconclusive({"search": res.report.to_json(), "stage": "unknot"})


def certificate_to_json(cert: Sequence[MoveSpec]) -> str:
    return json.dumps([m.to_json() for m in cert])
