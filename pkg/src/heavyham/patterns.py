"""The named pattern catalog and induced-embedding search."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels as K
from .graph import Graph, bits, complete, distance, parse_graph6, path_graph, star

FLAG_FOUND, FLAG_NOT_O, FLAG_NOT_F = 1, 2, 4


@dataclass(frozen=True, eq=False)
class Pattern:
    name: str
    graph: Graph
    roles: dict = field(default_factory=dict)

    def __post_init__(self):
        g = self.graph
        d2, nonadj = [], []
        for u, v in combinations(range(g.n), 2):
            if not g.has_edge(u, v):
                nonadj.append((u, v))
                if distance(g, u, v) == 2:
                    d2.append((u, v))
        object.__setattr__(self, "dist2pairs", tuple(d2))
        object.__setattr__(self, "nonadjacent_pairs", tuple(nonadj))
        order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
        object.__setattr__(self, "search_order", tuple(order))
        object.__setattr__(self, "_packed", self._pack())

    @property
    def k(self) -> int:
        return self.graph.n

    def __repr__(self):
        return f"Pattern({self.name})"

    @classmethod
    def from_graph6(cls, line: str, name: str | None = None) -> "Pattern":
        g = parse_graph6(line)
        return cls(name or f"user:{line.strip()}", g)

    def _pack(self):
        g = self.graph
        k = g.n
        nonadj = np.zeros((max(1, len(self.nonadjacent_pairs)), 2), np.int64)
        for i, pr in enumerate(self.nonadjacent_pairs):
            nonadj[i] = pr
        d2 = np.zeros((max(1, len(self.dist2pairs)), 2), np.int64)
        for i, pr in enumerate(self.dist2pairs):
            d2[i] = pr
        return (np.array(g.rows, np.uint64), np.array(g.degrees, np.int64), k,
                np.array(self.search_order, np.int64), nonadj, len(self.nonadjacent_pairs),
                d2, len(self.dist2pairs))


def _tri_with(n, extra):
    return Graph.from_edges(n, [(0, 1), (1, 2), (0, 2)] + extra)


def _build_catalog() -> dict[str, Pattern]:
    pats = [
        Pattern("k13", star(3), {"center": 0, "ends": (1, 2, 3)}),
        Pattern("p3", path_graph(3)),
        Pattern("p4", path_graph(4)),
        Pattern("p5", path_graph(5)),
        Pattern("p6", path_graph(6)),
        Pattern("c3", complete(3)),
        # triangle 0,1,2 with a pendant path hanging from vertex 2
        Pattern("z1", _tri_with(4, [(2, 3)])),
        Pattern("z2", _tri_with(5, [(2, 3), (3, 4)])),
        Pattern("z3", _tri_with(6, [(2, 3), (3, 4), (4, 5)])),
        Pattern("b", _tri_with(5, [(0, 3), (1, 4)])),
        Pattern("n", _tri_with(6, [(0, 3), (1, 4), (2, 5)]),
                {"a1": 0, "a2": 1, "a3": 2, "b1": 3, "b2": 4, "b3": 5}),
        Pattern("w", _tri_with(6, [(1, 3), (0, 4), (4, 5)]),
                {"a1": 0, "a2": 1, "a3": 2, "b2": 3, "b1": 4, "c1": 5}),
    ]
    return {p.name: p for p in pats}


CATALOG = _build_catalog()
PATTERN_NAMES = tuple(CATALOG)
K14 = Pattern("k14", star(4), {"center": 0, "ends": (1, 2, 3, 4)})


def catalog() -> list[Pattern]:
    return list(CATALOG.values())


def get_pattern(name: str | Pattern) -> Pattern:
    if isinstance(name, Pattern):
        return name
    key = name.lower()
    if key in CATALOG:
        return CATALOG[key]
    if key == "k14":
        return K14
    raise KeyError(f"unknown pattern {name!r}; expected one of {' '.join(PATTERN_NAMES)}")


def find_induced_embeddings(host: Graph, p: Pattern, limit: int | None = None) -> list[tuple[int, ...]]:
    """All labelled induced embeddings (tuple indexed by pattern vertex).

    Pattern vertices are placed in descending pattern-degree order; candidate
    images must have enough host degree and match adjacency and
    non-adjacency to every image placed so far.
    """
    pg = p.graph
    order = p.search_order
    k = pg.n
    if k > host.n:
        return []
    deg = host.degrees
    pools = [sum(1 << v for v in range(host.n) if deg[v] >= pg.degree(q)) for q in order]
    img = [0] * k
    found: list[tuple[int, ...]] = []

    def place(t: int, used: int) -> bool:
        q = order[t]
        cand = pools[t] & ~used
        for s in range(t):
            r = host.rows[img[order[s]]]
            cand = cand & r if pg.has_edge(q, order[s]) else cand & ~r
        for h in bits(cand):
            img[q] = h
            if t == k - 1:
                found.append(tuple(img))
                if limit is not None and len(found) >= limit:
                    return True
            elif place(t + 1, used | 1 << h):
                return True
        return False

    if limit is None or limit > 0:
        place(0, 0)
    return found


def scan(host: Graph, p: Pattern, want: int = FLAG_FOUND | FLAG_NOT_O | FLAG_NOT_F) -> int:
    """Compiled embedding scan; see ``_kernels.pattern_scan`` for the flags."""
    if p.k > host.n:
        return 0
    prow, pdeg, k, order, nonadj, nn, d2, nd = p._packed
    deg = np.array(host.degrees, np.int64)
    return int(K.pattern_scan(host.as_array(), host.n, deg, prow, pdeg, k, order,
                              nonadj, nn, d2, nd, want))


def is_free(host: Graph, p: Pattern | str) -> bool:
    return not scan(host, get_pattern(p), FLAG_FOUND) & FLAG_FOUND


def pack_patterns(pats: list[Pattern]):
    """Stack pattern data into padded arrays for ``_kernels.profile_codes``."""
    P = len(pats)
    kmax = max(p.k for p in pats)
    pmax = max(1, max(max(len(p.nonadjacent_pairs), len(p.dist2pairs)) for p in pats))
    prows = np.zeros((P, kmax), np.uint64)
    pdegs = np.zeros((P, kmax), np.int64)
    ks = np.zeros(P, np.int64)
    orders = np.zeros((P, kmax), np.int64)
    nonadjs = np.zeros((P, pmax, 2), np.int64)
    dist2s = np.zeros((P, pmax, 2), np.int64)
    nn = np.zeros(P, np.int64)
    nd = np.zeros(P, np.int64)
    for i, p in enumerate(pats):
        k = p.k
        prows[i, :k] = p.graph.rows
        pdegs[i, :k] = p.graph.degrees
        ks[i] = k
        orders[i, :k] = p.search_order
        nn[i] = len(p.nonadjacent_pairs)
        nd[i] = len(p.dist2pairs)
        if nn[i]:
            nonadjs[i, :nn[i]] = p.nonadjacent_pairs
        if nd[i]:
            dist2s[i, :nd[i]] = p.dist2pairs
    return prows, pdegs, ks, orders, nonadjs, nn, dist2s, nd
