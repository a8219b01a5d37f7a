"""Immutable bit-row graphs, paths/cycles and graph6 serialization."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_N = 64


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``rows[v]`` is the neighbourhood of ``v`` as an integer bitmask.
    """

    __slots__ = ("n", "rows", "_deg", "_arr")

    def __init__(self, n: int, rows: Sequence[int]):
        if not 1 <= n <= MAX_N:
            raise GraphError(f"vertex count {n} outside [1, {MAX_N}]")
        if len(rows) != n:
            raise GraphError(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        rows = tuple(int(r) for r in rows)
        for v, r in enumerate(rows):
            if r & ~full:
                raise GraphError(f"row {v} references a vertex >= {n}")
            if (r >> v) & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in bits(r):
                if not (rows[u] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        self.n = n
        self.rows = rows
        self._deg = None
        self._arr = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Graph({to_graph6(self)!r})"

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(self.degrees) // 2

    @property
    def degrees(self) -> tuple[int, ...]:
        if self._deg is None:
            self._deg = tuple(r.bit_count() for r in self.rows)
        return self._deg

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    def as_array(self) -> np.ndarray:
        """Rows as a read-only ``uint64`` array (for the compiled kernels)."""
        if self._arr is None:
            arr = np.array(self.rows, dtype=np.uint64)
            arr.flags.writeable = False
            self._arr = arr
        return self._arr

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph in which vertex ``v`` is renamed ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            rows[perm[v]] = mask_of(perm[u] for u in bits(self.rows[v]))
        return Graph(self.n, rows)

    def without(self, removed: int) -> tuple["Graph", list[int]]:
        """Induced subgraph on the complement of the vertex mask ``removed``."""
        keep = [v for v in range(self.n) if not (removed >> v) & 1]
        return induced(self, keep), keep

    def component_masks(self, within: int | None = None) -> list[int]:
        """Connected components of the subgraph induced by ``within``."""
        rest = self.full if within is None else within
        comps = []
        while rest:
            seed = rest & -rest
            comp = reach(self, seed, rest)
            comps.append(comp)
            rest &= ~comp
        return comps

    def is_connected(self) -> bool:
        return reach(self, 1, self.full) == self.full


def reach(g: Graph, seed: int, within: int) -> int:
    """Vertices of ``within`` reachable from the seed mask inside ``within``."""
    seen = seed & within
    frontier = seen
    rows = g.rows
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= rows[v]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def induced(g: Graph, s: int | Iterable[int]) -> Graph:
    """Subgraph induced by ``s``, relabelled to ``0..|s|-1`` in the order of ``s``.

    ``s`` is either a vertex bitmask (ascending order) or an ordered iterable.
    """
    order = list(bits(s)) if isinstance(s, int) else list(s)
    if not order:
        raise GraphError("induced subgraph of an empty vertex set")
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != len(order):
        raise GraphError("repeated vertex in induced-subgraph selection")
    rows = []
    for v in order:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
        rows.append(mask_of(pos[u] for u in bits(g.rows[v]) if u in pos))
    return Graph(len(order), rows)


def distance(g: Graph, u: int, v: int) -> int | None:
    """Hop distance between ``u`` and ``v``; ``None`` when unreachable."""
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in bits(g.rows[x]):
            if y not in dist:
                if y == v:
                    return dist[x] + 1
                dist[y] = dist[x] + 1
                queue.append(y)
    return None


def is_2connected(g: Graph) -> bool:
    """n >= 3, connected and without a cut vertex (vertex-deletion test)."""
    if g.n < 3 or not g.is_connected():
        return False
    full = g.full
    for v in range(g.n):
        rest = full & ~(1 << v)
        if reach(g, rest & -rest, rest) != rest:
            return False
    return True


# -- paths and cycles ---------------------------------------------------------

class Path:
    """A path given by its vertex sequence, origin first."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[int]):
        self.vertices = tuple(vertices)
        if not self.vertices:
            raise GraphError("a path needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError(f"repeated vertex in path {self.vertices}")

    origin = property(lambda self: self.vertices[0])
    terminus = property(lambda self: self.vertices[-1])

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other):
        return isinstance(other, Path) and self.vertices == other.vertices

    def __hash__(self):
        return hash(("path", self.vertices))

    def __repr__(self):
        return f"Path{self.vertices}"

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    def reversed(self) -> "Path":
        return Path(reversed(self.vertices))

    def is_valid(self, g: Graph) -> bool:
        vs = self.vertices
        return all(0 <= v < g.n for v in vs) and all(
            g.has_edge(a, b) for a, b in zip(vs, vs[1:]))

    def validate(self, g: Graph) -> "Path":
        if not self.is_valid(g):
            raise GraphError(f"{self!r} is not a path of {g!r}")
        return self


class Cycle:
    """A cycle read cyclically, oriented by the order of ``vertices``."""

    __slots__ = ("vertices", "_pos")

    def __init__(self, vertices: Iterable[int]):
        self.vertices = tuple(vertices)
        if len(self.vertices) < 3:
            raise GraphError("a cycle needs at least three vertices")
        self._pos = {v: i for i, v in enumerate(self.vertices)}
        if len(self._pos) != len(self.vertices):
            raise GraphError(f"repeated vertex in cycle {self.vertices}")

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v):
        return v in self._pos

    def __eq__(self, other):
        return isinstance(other, Cycle) and self.vertices == other.vertices

    def __hash__(self):
        return hash(("cycle", self.vertices))

    def __repr__(self):
        return f"Cycle{self.vertices}"

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    def index(self, v: int) -> int:
        return self._pos[v]

    def succ(self, v: int, steps: int = 1) -> int:
        return self.vertices[(self._pos[v] + steps) % len(self.vertices)]

    def pred(self, v: int, steps: int = 1) -> int:
        return self.succ(v, -steps)

    def succ_set(self, vs: Iterable[int]) -> set[int]:
        return {self.succ(v) for v in vs}

    def pred_set(self, vs: Iterable[int]) -> set[int]:
        return {self.pred(v) for v in vs}

    def segment(self, u: int, v: int) -> list[int]:
        """Vertices from ``u`` to ``v`` following the orientation, inclusive."""
        t = len(self.vertices)
        i, j = self._pos[u], self._pos[v]
        return [self.vertices[(i + k) % t] for k in range((j - i) % t + 1)]

    def reversed(self) -> "Cycle":
        return Cycle(reversed(self.vertices))

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return list(zip(vs, vs[1:] + vs[:1]))

    def is_valid(self, g: Graph) -> bool:
        return all(0 <= v < g.n for v in self.vertices) and all(
            g.has_edge(a, b) for a, b in self.edges())

    def validate(self, g: Graph) -> "Cycle":
        if not self.is_valid(g):
            raise GraphError(f"{self!r} is not a cycle of {g!r}")
        return self


# -- graph6 -------------------------------------------------------------------

def _pack_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])


def to_graph6(g: Graph) -> str:
    out = bytearray(_pack_size(g.n))
    acc = nacc = 0
    rows = g.rows
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (rows[i] >> j & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc + 63)
                acc = nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return out.decode("ascii")


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one header-less graph6 line (trailing newline tolerated)."""
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    if not data:
        raise Graph6Error("empty graph6 line", 0)
    for off, ch in enumerate(data):
        if not 63 <= ch <= 126:
            raise Graph6Error(f"character {ch!r} outside the graph6 range", off)
    if data[0] == 126:
        if len(data) < 4:
            raise Graph6Error("truncated size header", len(data))
        if data[1] == 126:
            raise Graph6Error("vertex count above 64", 1)
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        start = 4
        if n <= 62:
            raise Graph6Error("non-canonical long size header", 1)
    else:
        n = data[0] - 63
        start = 1
    if n == 0:
        raise Graph6Error("graph with zero vertices", 0)
    if n > MAX_N:
        raise Graph6Error(f"vertex count {n} above {MAX_N}", 0)
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    body = data[start:]
    if len(body) < need:
        raise Graph6Error("truncated adjacency body", len(data))
    if len(body) > need:
        raise Graph6Error("trailing bytes after adjacency body", start + need)
    value = 0
    for ch in body:
        value = value << 6 | (ch - 63)
    pad = need * 6 - nbits
    if value & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", len(data) - 1)
    value >>= pad
    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, rows)


# -- small named graphs -----------------------------------------------------------

def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def empty(n: int) -> Graph:
    return Graph(n, [0] * n)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """Parts ``0..a-1`` and ``a..a+b-1``."""
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    return complete_bipartite(1, k)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    return Graph(a.n + b.n, list(a.rows) + [r << a.n for r in b.rows])
