"""Composed graphs, their spanning paths and path pairs, and good pairs on cycles.

A composed graph is grown from a triangle v(-1) v(0) v(1) by extensions at the
ends of an interval of a fixed vertex ordering:

* left: v(-a-1) joins v(-a) and some other interval vertex,
* right: the mirror image at v(b),
* both: v(-a-1) joins v(-a), v(b+1) joins v(b), and v(-a-1) joins v(b+1).

The step list is the certificate; every edge it relies on is re-checked
against the host when replayed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .graph import Cycle, Graph, GraphError, Path, bits, mask_of, to_graph6
from .hamilton import CycleSolver, cycle_through_set, kernel_cycle_search

SEGMENT_LIMIT = 12


class CompositionError(GraphError):
    pass


# -- disjoint path pairs ------------------------------------------------------------

@dataclass(frozen=True)
class DisjointPathPair:
    first: Path
    second: Path
    origins: tuple[int, int]
    termini: tuple[int, int]

    @property
    def mask(self) -> int:
        return self.first.mask | self.second.mask

    def is_valid(self, g: Graph) -> bool:
        a, b = self.first, self.second
        return (a.is_valid(g) and b.is_valid(g) and not a.mask & b.mask
                and {a.origin, b.origin} == set(self.origins)
                and {a.terminus, b.terminus} == set(self.termini)
                and len(set(self.origins)) == 2 and len(set(self.termini)) == 2)

    def validate(self, g: Graph) -> "DisjointPathPair":
        if not self.is_valid(g):
            raise GraphError(f"{self!r} is not a disjoint path pair of {g!r}")
        return self

    def to_dict(self) -> dict:
        return {"paths": [list(self.first), list(self.second)],
                "origins": list(self.origins), "termini": list(self.termini)}


# -- canonical sequences ----------------------------------------------------------------

@dataclass
class CanonicalSequence:
    """Ordering v(-k)..v(l) of host vertices plus the extension steps.

    Steps are ``("left", anchor)``, ``("right", anchor)`` or ``("both", None)``,
    where ``anchor`` is the second interval vertex the new vertex attaches to.
    """

    graph: Graph
    ordering: tuple[int, ...]
    k: int
    steps: list[tuple[str, int | None]] = field(default_factory=list)

    @property
    def l(self) -> int:
        return len(self.ordering) - self.k - 1

    def v(self, i: int) -> int:
        return self.ordering[self.k + i]

    def intervals(self) -> list[tuple[int, int]]:
        a, b = 1, 1
        out = [(a, b)]
        for op, _ in self.steps:
            if op in ("left", "both"):
                a += 1
            if op in ("right", "both"):
                b += 1
            out.append((a, b))
        return out

    def carrier_edges(self) -> list[tuple[int, int]]:
        v = self.v
        edges = [(v(-1), v(0)), (v(0), v(1)), (v(-1), v(1))]
        a, b = 1, 1
        for op, w in self.steps:
            if op == "left":
                edges += [(v(-a - 1), v(-a)), (v(-a - 1), w)]
                a += 1
            elif op == "right":
                edges += [(v(b + 1), v(b)), (v(b + 1), w)]
                b += 1
            else:
                edges += [(v(-a - 1), v(-a)), (v(b + 1), v(b)), (v(-a - 1), v(b + 1))]
                a += 1
                b += 1
        return edges

    def carrier(self) -> Graph:
        return Graph.from_edges(self.graph.n, self.carrier_edges())

    def verify(self) -> bool:
        """Replay the steps against the host graph."""
        g, v = self.graph, self.v
        if self.k < 1 or self.l < 1 or len(set(self.ordering)) != len(self.ordering):
            return False
        a, b = 1, 1
        for op, w in self.steps:
            if op == "left":
                if a >= self.k or w is None:
                    return False
                ok = _left_ok(g, self, a, b, w)
                a += 1
            elif op == "right":
                if b >= self.l or w is None:
                    return False
                ok = _right_ok(g, self, a, b, w)
                b += 1
            elif op == "both":
                if a >= self.k or b >= self.l:
                    return False
                ok = _both_ok(g, self, a, b)
                a += 1
                b += 1
            else:
                return False
            if not ok:
                return False
        tri = g.has_edge(v(-1), v(0)) and g.has_edge(v(0), v(1)) and g.has_edge(v(-1), v(1))
        return tri and (a, b) == (self.k, self.l)

    def to_dict(self) -> dict:
        return {"g6": to_graph6(self.graph), "ordering": list(self.ordering), "k": self.k,
                "steps": [[op, w] for op, w in self.steps]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict, graph: Graph) -> "CanonicalSequence":
        return cls(graph, tuple(d["ordering"]), d["k"], [(op, w) for op, w in d["steps"]])


def _interval_mask(cs: CanonicalSequence, a: int, b: int) -> int:
    return mask_of(cs.ordering[cs.k - a:cs.k + b + 1])


def _left_ok(g, cs, a, b, w) -> bool:
    z, end = cs.v(-a - 1), cs.v(-a)
    inside = _interval_mask(cs, a, b)
    return g.has_edge(z, end) and w != end and inside >> w & 1 and g.has_edge(z, w)


def _right_ok(g, cs, a, b, w) -> bool:
    z, end = cs.v(b + 1), cs.v(b)
    inside = _interval_mask(cs, a, b)
    return g.has_edge(z, end) and w != end and inside >> w & 1 and g.has_edge(z, w)


def _both_ok(g, cs, a, b) -> bool:
    xl, yr = cs.v(-a - 1), cs.v(b + 1)
    return g.has_edge(cs.v(-a), xl) and g.has_edge(cs.v(b), yr) and g.has_edge(xl, yr)


def _anchor(g, cs, a, b, z, end) -> int | None:
    for w in cs.ordering[cs.k - a:cs.k + b + 1]:
        if w != end and g.has_edge(z, w):
            return w
    return None


def is_composed(g: Graph, ordering, y: int) -> CanonicalSequence | None:
    """Certificate that ``g`` restricted to ``ordering`` is composed, or None.

    ``ordering`` runs from x to z and ``y`` is an interior vertex. The search
    covers every interval reachable from the base triangle.
    """
    ordering = tuple(int(v) for v in ordering)
    if len(set(ordering)) != len(ordering) or any(not 0 <= v < g.n for v in ordering):
        raise CompositionError(f"ordering {ordering} is not a list of distinct vertices")
    if y not in ordering[1:-1]:
        raise CompositionError(f"y={y} must be an interior vertex of the ordering")
    cs = CanonicalSequence(g, ordering, ordering.index(y))
    k, l = cs.k, cs.l
    v = cs.v
    if not (g.has_edge(v(-1), v(0)) and g.has_edge(v(0), v(1)) and g.has_edge(v(-1), v(1))):
        return None
    dead = set()
    steps: list[tuple[str, int | None]] = []

    def search(a: int, b: int) -> bool:
        if (a, b) == (k, l):
            return True
        if (a, b) in dead:
            return False
        if a < k:
            z = v(-a - 1)
            if g.has_edge(z, v(-a)):
                w = _anchor(g, cs, a, b, z, v(-a))
                if w is not None:
                    steps.append(("left", w))
                    if search(a + 1, b):
                        return True
                    steps.pop()
        if b < l:
            z = v(b + 1)
            if g.has_edge(z, v(b)):
                w = _anchor(g, cs, a, b, z, v(b))
                if w is not None:
                    steps.append(("right", w))
                    if search(a, b + 1):
                        return True
                    steps.pop()
        if a < k and b < l and _both_ok(g, cs, a, b):
            steps.append(("both", None))
            if search(a + 1, b + 1):
                return True
            steps.pop()
        dead.add((a, b))
        return False

    if not search(1, 1):
        return None
    cs.steps = steps
    return cs


# -- spanning paths and pairs of a carrier ----------------------------------------------

def _carrier_state(cs: CanonicalSequence):
    """Run the extension induction.

    Tracks, for the current interval with ends L, R and root y = v(0):
    ``hl`` a Hamilton path y..L, ``hr`` a Hamilton path y..R, and for every
    interval vertex s, ``pl[s]`` (s != L) a spanning pair (path from y,
    path from R) ending at {s, L}, and ``pr[s]`` (s != R) a spanning pair
    (path from y, path from L) ending at {s, R}.
    """
    v = cs.v
    y, L, R = v(0), v(-1), v(1)
    hl, hr = [y, R, L], [y, L, R]
    pl = {y: ([y], [R, L]), R: ([y, L], [R])}
    pr = {y: ([y], [L, R]), L: ([y, R], [L])}
    a, b = 1, 1

    def one_side(hl, hr, pl, pr, L, z, w):
        # new end z attached to L and w on the L side
        # y..L z w..R or y..w z L..R, whichever way pl[w] ends
        ya, rb = pl[w]
        hr2 = ya + [z] + rb[::-1]
        hl2 = hl + [z]
        pl2 = {}
        for s, (p1, p2) in pl.items():
            if s == L:
                continue
            pl2[s] = (p1 + [z], p2) if p1[-1] == L else (p1, p2 + [z])
        q1, q2 = pl[w]
        pl2[L] = (q1 + [z], q2) if q1[-1] == w else (q1, q2 + [z])
        pr2 = {z: (list(hr), [z])}
        for s, (p1, p2) in pr.items():
            pr2[s] = (p1, [z] + p2)
        return hl2, hr2, pl2, pr2

    for op, w in cs.steps:
        if op == "left":
            z = v(-a - 1)
            hl, hr, pl, pr = one_side(hl, hr, pl, pr, L, z, w)
            L = z
            a += 1
        elif op == "right":
            z = v(b + 1)
            hr, hl, pr, pl = one_side(hr, hl, pr, pl, R, z, w)
            R = z
            b += 1
        else:
            xl, yr = v(-a - 1), v(b + 1)
            hl2, hr2 = hr + [yr, xl], hl + [xl, yr]
            pl2 = {yr: (hl + [xl], [yr]), L: (list(hl), [yr, xl])}
            for s, (p1, p2) in pl.items():
                # termini {s, L}: put y' in front of the R path, x' after L
                p2 = [yr] + p2
                pl2[s] = (p1 + [xl], p2) if p1[-1] == L else (p1, p2 + [xl])
            pr2 = {xl: (hr + [yr], [xl]), R: (list(hr), [xl, yr])}
            for s, (p1, p2) in pr.items():
                p2 = [xl] + p2
                pr2[s] = (p1 + [yr], p2) if p1[-1] == R else (p1, p2 + [yr])
            hl, hr, pl, pr = hl2, hr2, pl2, pr2
            L, R = xl, yr
            a += 1
            b += 1
    return hl, pl


def carrier_hamilton_path(cs: CanonicalSequence) -> Path:
    """Hamilton path of the carrier from v(0) to v(-k)."""
    hl, _ = _carrier_state(cs)
    path = Path(hl).validate(cs.carrier())
    if path.mask != mask_of(cs.ordering) or path.terminus != cs.v(-cs.k):
        raise CompositionError(f"carrier path {path!r} has the wrong shape")
    return path


def spanning_pair(cs: CanonicalSequence, s: int) -> DisjointPathPair:
    """Disjoint paths from {v(0), v(l)} to {s, v(-k)} covering the carrier."""
    if s == cs.v(-cs.k):
        raise CompositionError("s must differ from the far left vertex")
    if s not in cs.ordering:
        raise CompositionError(f"vertex {s} is not in the ordering")
    _, pl = _carrier_state(cs)
    p1, p2 = pl[s]
    pair = DisjointPathPair(Path(p1), Path(p2), (cs.v(0), cs.v(cs.l)), (s, cs.v(-cs.k)))
    pair.validate(cs.carrier())
    if pair.mask != mask_of(cs.ordering):
        raise CompositionError(f"{pair!r} does not span the carrier")
    return pair


# -- exhaustive path searches on small vertex sets ----------------------------------------

def hamilton_path(g: Graph, within: int, s: int, t: int) -> list[int] | None:
    """A path from s to t using exactly the vertices of ``within``."""
    rows = g.rows

    @lru_cache(maxsize=None)
    def ok(v: int, left: int) -> bool:
        if not left:
            return v == t
        for w in bits(rows[v] & left):
            if (w != t or left == 1 << t) and ok(w, left & ~(1 << w)):
                return True
        return False

    if not within >> s & 1 or not within >> t & 1:
        return None
    if s == t:
        return [s] if within == 1 << s else None
    if not ok(s, within & ~(1 << s)):
        return None
    path, v, left = [s], s, within & ~(1 << s)
    while left:
        for w in bits(rows[v] & left):
            if (w != t or left == 1 << t) and ok(w, left & ~(1 << w)):
                path.append(w)
                v, left = w, left & ~(1 << w)
                break
    return path


def spanning_path_pair(g: Graph, within: int, origins: tuple[int, int],
                       termini: tuple[int, int]) -> DisjointPathPair | None:
    """Two disjoint paths covering ``within`` with the given end sets."""
    o1, o2 = origins
    rows = g.rows
    for t1, t2 in (termini, termini[::-1]):
        # o1 stays on the first path and o2 on the second
        if o1 == t2 or o2 == t1:
            continue
        found = []

        def grow(path: list[int], used: int) -> bool:
            v = path[-1]
            if v == t1:
                p2 = hamilton_path(g, within & ~used, o2, t2)
                if p2 is not None:
                    found.append((list(path), p2))
                    return True
                return False
            for w in bits(rows[v] & within & ~used):
                if w in (o2, t2):
                    continue
                path.append(w)
                if grow(path, used | 1 << w):
                    return True
                path.pop()
            return False

        if grow([o1], 1 << o1):
            p1, p2 = found[0]
            return DisjointPathPair(Path(p1), Path(p2), origins, termini)
    return None


# -- good pairs --------------------------------------------------------------------------

class _Unknown:
    def __repr__(self):
        return "UNKNOWN"

    def __bool__(self):
        return False


UNKNOWN = _Unknown()


@dataclass(frozen=True)
class GoodPairWitness:
    cycle: Cycle
    x: int
    x1: int  # reached from x along the orientation
    x2: int  # reached from x against the orientation
    side: int
    x_prime: int
    path: Path
    pair: DisjointPathPair
    degree_sum: int

    @property
    def segment(self) -> list[int]:
        return self.cycle.segment(self.x2, self.x1)

    @property
    def chosen(self) -> int:
        return self.x1 if self.side == 1 else self.x2

    @property
    def other(self) -> int:
        return self.x2 if self.side == 1 else self.x1

    def verify(self, g: Graph) -> bool:
        c = self.cycle
        if not c.is_valid(g) or len({self.x, self.x1, self.x2}) != 3:
            return False
        seg = self.segment
        if self.x not in seg[1:-1]:
            return False
        pm = mask_of(seg)
        xi, xo = self.chosen, self.other
        if self.x_prime == xi or not pm >> self.x_prime & 1:
            return False
        p = self.path
        if not (p.is_valid(g) and p.origin == self.x and p.terminus == xo
                and p.mask == pm & ~(1 << xi)):
            return False
        d = self.pair
        if not (d.is_valid(g) and set(d.origins) == {self.x, xo}
                and set(d.termini) == {self.x_prime, xi} and d.mask == pm):
            return False
        return g.degree(xi) + g.degree(self.x_prime) >= g.n

    def to_dict(self) -> dict:
        return {"cycle": list(self.cycle), "x": self.x, "x1": self.x1, "x2": self.x2,
                "side": self.side, "x_prime": self.x_prime, "path": list(self.path),
                "pair": self.pair.to_dict(), "degree_sum": self.degree_sum}


def _pair_candidates(c: Cycle, x: int):
    t = len(c)
    for total in range(2, t):
        for a in range(1, total):
            yield c.succ(x, a), c.pred(x, total - a)


def _witness_for(g: Graph, c: Cycle, x: int, x1: int, x2: int) -> GoodPairWitness | None:
    seg = c.segment(x2, x1)
    pm = mask_of(seg)
    deg = g.degrees
    for side, xi, xo in ((1, x1, x2), (2, x2, x1)):
        p = hamilton_path(g, pm & ~(1 << xi), x, xo)
        if p is None:
            continue
        for xp in seg:
            if xp == xi or deg[xi] + deg[xp] < g.n:
                continue
            d = spanning_path_pair(g, pm, (x, xo), (xp, xi))
            if d is not None:
                return GoodPairWitness(c, x, x1, x2, side, xp, Path(p), d, deg[xi] + deg[xp])
    return None


def good_pairs(g: Graph, c: Cycle, x: int, limit: int = SEGMENT_LIMIT):
    """Yield a witness for each good pair in search order, then a final flag
    telling whether some segment exceeded ``limit`` and was skipped."""
    truncated = False
    for x1, x2 in _pair_candidates(c, x):
        if len(c.segment(x2, x1)) > limit:
            truncated = True
            continue
        w = _witness_for(g, c, x, x1, x2)
        if w is not None:
            yield w
    return truncated


def find_good_pair(g: Graph, c: Cycle, x: int, limit: int = SEGMENT_LIMIT):
    """First good pair for ``x`` on ``c``; None when there is none, UNKNOWN when
    the search had to skip segments longer than ``limit``."""
    c.validate(g)
    if x not in c or len(c) < 4:
        raise GraphError("find_good_pair needs x on a cycle of length >= 4")
    gen = good_pairs(g, c, x, limit)
    try:
        w = next(gen)
    except StopIteration as stop:
        return UNKNOWN if stop.value else None
    assert w.verify(g)
    return w


# -- cycle merging ---------------------------------------------------------------------------

@dataclass
class Lemma5Verdict:
    status: str  # confirmed | violation | skipped
    g6: str
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"lemma": "lemma5", "status": self.status, "g6": self.g6, "detail": self.detail}


def lemma5_order_ok(c: Cycle, x: int, y: int, x1: int, x2: int, y1: int, y2: int) -> bool:
    """x2, x, x1, y1, y, y2 in order along ``c``; x1 = y1 or x2 = y2 allowed."""
    t = len(c)
    base = c.index(x2)

    def off(v):
        return (c.index(v) - base) % t

    end = t if y2 == x2 else off(y2)
    return 0 < off(x) < off(x1) <= off(y1) < off(y) < end


def check_lemma5(g: Graph, c: Cycle, p: Path, wx: GoodPairWitness, wy: GoodPairWitness,
                 solver: CycleSolver = kernel_cycle_search) -> Lemma5Verdict:
    g6 = to_graph6(g)
    x, y = p.origin, p.terminus

    def skip(reason):
        return Lemma5Verdict("skipped", g6, {"reason": reason})

    if not c.is_valid(g) or not p.is_valid(g) or x == y or x not in c or y not in c:
        return skip("path endpoints")
    if mask_of(p.vertices[1:-1]) & c.mask:
        return skip("path meets the cycle")
    if wx.cycle != c or wy.cycle != c or wx.x != x or wy.x != y:
        return skip("witness cycle")
    if not (wx.verify(g) and wy.verify(g)):
        return skip("witness invalid")
    x1, x2, y1, y2 = wx.x1, wx.x2, wy.x2, wy.x1
    if {x1, x2, y1, y2} & {x, y} or not lemma5_order_ok(c, x, y, x1, x2, y1, y2):
        return skip("order")
    need = c.mask | p.mask
    detail = {"cycle": list(c), "path": list(p), "x_pair": [x1, x2], "y_pair": [y1, y2]}
    cert = cycle_through_set(g, need, solver)
    if not cert:
        return Lemma5Verdict("violation", g6, detail)
    detail["covering_cycle"] = list(cert.cycle)
    return Lemma5Verdict("confirmed", g6, detail)
