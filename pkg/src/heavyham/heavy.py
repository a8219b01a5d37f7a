"""Ore- and Fan-type degree predicates on graphs and on induced pattern copies.

Half-integer thresholds are compared in doubled integers: a vertex is heavy
when ``2 * d(v) >= n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, bits, is_2connected, parse_graph6, to_graph6
from .patterns import (CATALOG, FLAG_FOUND, FLAG_NOT_F, FLAG_NOT_O, Pattern,
                       find_induced_embeddings, get_pattern, scan)


@dataclass(frozen=True)
class HeavyReport:
    n: int
    heavy_vertices: int
    heavy_pairs: tuple[tuple[int, int], ...]
    heavy_triangles: tuple[tuple[int, int, int], ...]

    def heavy_list(self) -> list[int]:
        return list(bits(self.heavy_vertices))


def heavy_mask(g: Graph) -> int:
    n = g.n
    return sum(1 << v for v, d in enumerate(g.degrees) if 2 * d >= n)


def is_heavy_pair(g: Graph, x: int, y: int) -> bool:
    return x != y and not g.has_edge(x, y) and g.degree(x) + g.degree(y) >= g.n


def heavy_report(g: Graph) -> HeavyReport:
    hv = heavy_mask(g)
    pairs = tuple((x, y) for x, y in combinations(range(g.n), 2) if is_heavy_pair(g, x, y))
    tris = tuple(
        (a, b, c)
        for a, b, c in combinations(bits(hv), 3)
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
    )
    return HeavyReport(g.n, hv, pairs, tris)


class VirtualEdgeSet:
    """Edges of ``g`` plus every nonadjacent pair with degree sum at least n."""

    def __init__(self, g: Graph):
        self.n = g.n
        self.real = g.rows
        virt = [0] * g.n
        for x, y in combinations(range(g.n), 2):
            if is_heavy_pair(g, x, y):
                virt[x] |= 1 << y
                virt[y] |= 1 << x
        self.virtual = tuple(virt)

    def __contains__(self, pair) -> bool:
        return self.kind(*pair) is not None

    def kind(self, x: int, y: int) -> str | None:
        if self.real[x] >> y & 1:
            return "real"
        if self.virtual[x] >> y & 1:
            return "virtual"
        return None

    def neighbours(self, x: int) -> int:
        return self.real[x] | self.virtual[x]

    def pairs(self, kind: str | None = None) -> list[tuple[int, int]]:
        out = []
        for x in range(self.n):
            for y in bits(self.neighbours(x) >> (x + 1) << (x + 1)):
                if kind is None or self.kind(x, y) == kind:
                    out.append((x, y))
        return out

    def __len__(self):
        return len(self.pairs())


def virtual_edges(g: Graph) -> VirtualEdgeSet:
    return VirtualEdgeSet(g)


def is_o_heavy(g: Graph, p: Pattern | str) -> bool:
    """Every induced copy of ``p`` has a nonadjacent pair with degree sum >= n."""
    return not scan(g, get_pattern(p), FLAG_NOT_O) & FLAG_NOT_O


def is_f_heavy(g: Graph, p: Pattern | str) -> bool:
    """Every distance-2 pair of every induced copy has a vertex of degree >= n/2."""
    return not scan(g, get_pattern(p), FLAG_NOT_F) & FLAG_NOT_F


def flags_by_enumeration(g: Graph, p: Pattern | str) -> "PatternFlags":
    """Free / o-heavy / f-heavy from the explicit embedding list (no compiled code)."""
    p = get_pattern(p)
    n, deg = g.n, g.degrees
    free = o = f = True
    for emb in find_induced_embeddings(g, p):
        free = False
        if not any(deg[emb[u]] + deg[emb[v]] >= n for u, v in p.nonadjacent_pairs):
            o = False
        if not all(2 * max(deg[emb[u]], deg[emb[v]]) >= n for u, v in p.dist2pairs):
            f = False
    return PatternFlags(free, o, f)


def is_ore(g: Graph) -> bool:
    """Every nonadjacent pair has degree sum at least n."""
    n, deg = g.n, g.degrees
    return all(g.has_edge(x, y) or deg[x] + deg[y] >= n for x, y in combinations(range(n), 2))


def is_fan(g: Graph) -> bool:
    """Every pair at distance 2 has a vertex of degree at least n/2."""
    n, deg = g.n, g.degrees
    for v in range(n):
        two = 0
        for u in bits(g.rows[v]):
            two |= g.rows[u]
        two &= ~g.rows[v] & ~(1 << v)
        for u in bits(two):
            if 2 * max(deg[u], deg[v]) < n:
                return False
    return True


@dataclass(frozen=True)
class PatternFlags:
    free: bool
    o: bool
    f: bool

    @classmethod
    def from_scan(cls, flags: int) -> "PatternFlags":
        return cls(not flags & FLAG_FOUND, not flags & FLAG_NOT_O, not flags & FLAG_NOT_F)


@dataclass
class ConditionProfile:
    g6: str
    n: int
    two_connected: bool
    hamiltonian: bool
    patterns: dict[str, PatternFlags]
    ore: bool = False
    fan: bool = False
    extra: dict = field(default_factory=dict)

    def holds(self, name: str, kind: str) -> bool:
        """``kind`` is one of ``free``, ``o``, ``f``."""
        return getattr(self.patterns[name], kind)

    def to_dict(self) -> dict:
        return {
            "g6": self.g6,
            "n": self.n,
            "two_connected": self.two_connected,
            "hamiltonian": self.hamiltonian,
            "patterns": {k: {"free": v.free, "o": v.o, "f": v.f} for k, v in self.patterns.items()},
            "ore": self.ore,
            "fan": self.fan,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "ConditionProfile":
        pats = {k: PatternFlags(v["free"], v["o"], v["f"]) for k, v in d["patterns"].items()}
        return cls(d["g6"], d["n"], d["two_connected"], d["hamiltonian"], pats,
                   d.get("ore", False), d.get("fan", False))

    @classmethod
    def from_json(cls, line: str) -> "ConditionProfile":
        return cls.from_dict(json.loads(line))

    def graph(self) -> Graph:
        return parse_graph6(self.g6)


def profile(g: Graph, patterns: list[Pattern] | None = None) -> ConditionProfile:
    from .hamilton import is_hamiltonian

    pats = list(CATALOG.values()) if patterns is None else patterns
    flags = {p.name: PatternFlags.from_scan(scan(g, p)) for p in pats}
    return ConditionProfile(
        g6=to_graph6(g),
        n=g.n,
        two_connected=is_2connected(g),
        hamiltonian=bool(is_hamiltonian(g)),
        patterns=flags,
        ore=g.n >= 3 and is_ore(g),
        fan=is_fan(g),
    )
