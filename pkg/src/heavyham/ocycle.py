"""Ore-cycles: cyclic sequences over the virtual-edge relation, and their
realization as genuine cycles covering the same vertices.

Realization removes virtual edges one at a time. For the first virtual pair
(x, y), let y = p0, p1, ..., p(t-1) = x be the rest of the sequence. Either
some j has x ~ p(j) and y ~ p(j+1) in G, and reversing p(j+1)..x swaps the
virtual pair and the pair p(j)p(j+1) for two real edges, or x and y have a
common neighbour outside the sequence, which is spliced in between them.
Degree counting shows one of the two always applies when d(x) + d(y) >= n:
without a crossing, x and y have at most t - 1 neighbours on the sequence
between them, and without a common outside neighbour at most n - t off it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Cycle, Graph, GraphError, bits, to_graph6
from .hamilton import cycle_through_set
from .heavy import VirtualEdgeSet


class OCycleError(GraphError):
    pass


class RealizationFault(RuntimeError):
    """Raised when neither the exchange steps nor the exact search produce a cycle."""


@dataclass(frozen=True)
class OCycle:
    vertices: tuple[int, ...]
    kinds: tuple[str, ...]  # kinds[i] describes vertices[i] -> vertices[i+1]

    def __len__(self):
        return len(self.vertices)

    @property
    def virtual_count(self) -> int:
        return self.kinds.count("virtual")

    @property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m


def _kinds(ve: VirtualEdgeSet, seq) -> list[str | None]:
    t = len(seq)
    return [ve.kind(seq[i], seq[(i + 1) % t]) for i in range(t)]


def validate_ocycle(g: Graph, seq, ve: VirtualEdgeSet | None = None) -> OCycle:
    seq = tuple(int(v) for v in seq)
    if len(seq) < 3:
        raise OCycleError(f"an o-cycle needs at least 3 vertices, got {len(seq)}")
    seen = set()
    for v in seq:
        if not 0 <= v < g.n:
            raise OCycleError(f"vertex {v} outside 0..{g.n - 1}")
        if v in seen:
            raise OCycleError(f"repeated vertex {v}")
        seen.add(v)
    ve = ve or VirtualEdgeSet(g)
    kinds = _kinds(ve, seq)
    for i, k in enumerate(kinds):
        if k is None:
            a, b = seq[i], seq[(i + 1) % len(seq)]
            raise OCycleError(
                f"pair ({a},{b}) is neither an edge nor a heavy pair: "
                f"d({a})+d({b}) = {g.degree(a) + g.degree(b)} < {g.n}")
    return OCycle(seq, tuple(kinds))


@dataclass
class Realization:
    cycle: Cycle
    steps: list[dict] = field(default_factory=list)
    fallback: bool = False


def _exchange(g: Graph, seq: list[int], ve: VirtualEdgeSet) -> tuple[list[int], dict] | None:
    """One virtual edge fewer, or None when no exchange applies."""
    t = len(seq)
    kinds = _kinds(ve, seq)
    i = kinds.index("virtual")
    x, y = seq[i], seq[(i + 1) % t]
    p = [seq[(i + 1 + k) % t] for k in range(t)]  # y .. x
    rx, ry = g.rows[x], g.rows[y]
    for j in range(1, t - 2):
        if rx >> p[j] & 1 and ry >> p[j + 1] & 1:
            return p[:j + 1] + p[:j:-1], {"op": "cross", "pair": (x, y), "at": (p[j], p[j + 1])}
    inside = 0
    for v in seq:
        inside |= 1 << v
    common = rx & ry & ~inside
    if common:
        z = next(bits(common))
        return p + [z], {"op": "detour", "pair": (x, y), "via": z}
    return None


def realize_traced(g: Graph, oc: OCycle) -> Realization:
    ve = VirtualEdgeSet(g)
    seq = list(oc.vertices)
    steps = []
    while "virtual" in _kinds(ve, seq):
        before = _kinds(ve, seq).count("virtual")
        nxt = _exchange(g, seq, ve)
        if nxt is None:
            break
        seq, step = nxt
        step["virtual_left"] = _kinds(ve, seq).count("virtual")
        if step["virtual_left"] >= before:
            raise RealizationFault(f"exchange did not reduce virtual edges: {step}")
        steps.append(step)
    else:
        c = Cycle(seq).validate(g)
        if oc.mask & ~c.mask:
            raise RealizationFault(f"{c!r} lost vertices of {oc.vertices}")
        return Realization(c, steps)
    cert = cycle_through_set(g, oc.mask)
    if not cert:
        raise RealizationFault(f"no cycle through {oc.vertices} in {to_graph6(g)}")
    return Realization(cert.cycle, steps, fallback=True)


def realize(g: Graph, oc: OCycle) -> Cycle:
    return realize_traced(g, oc).cycle


def ore_closure_edge_count(g: Graph) -> int:
    return len(VirtualEdgeSet(g))
