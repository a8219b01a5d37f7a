"""Exact cycle solvers and the longest-cycle lemma checks built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterator

import numpy as np

from . import _kernels as K
from .graph import Cycle, Graph, GraphError, bits, is_2connected, mask_of, to_graph6
from .heavy import heavy_mask, is_o_heavy
from .patterns import K14

# solver(g, required, min_len, allowed) -> Cycle | None
CycleSolver = Callable[[Graph, int, int, int], "Cycle | None"]


def kernel_cycle_search(g: Graph, required: int, min_len: int, allowed: int) -> Cycle | None:
    """A cycle inside ``allowed`` through ``required`` with >= min_len vertices."""
    out = np.empty(max(g.n, 1), np.int64)
    length = K.find_cycle(g.as_array(), g.n, np.uint64(required), min_len,
                          np.uint64(allowed), out, 0)
    if length <= 0:
        return None
    return Cycle(out[:length].tolist()).validate(g)


@dataclass(frozen=True)
class CycleCertificate:
    verdict: str
    cycle: Cycle | None = None

    def __bool__(self):
        return self.cycle is not None


def is_hamiltonian(g: Graph) -> CycleCertificate:
    if g.n < 3:
        return CycleCertificate("non_hamiltonian")
    out = np.empty(g.n, np.int64)
    if K.ham_cycle(g.as_array(), g.n, out) <= 0:
        return CycleCertificate("non_hamiltonian")
    return CycleCertificate("hamiltonian", Cycle(out.tolist()).validate(g))


def held_karp_cycle(g: Graph) -> Cycle | None:
    """Hamilton cycle by subset dynamic programming alone (n <= 24)."""
    if g.n > 24:
        raise GraphError("subset dynamic programming limited to n <= 24")
    out = np.empty(max(g.n, 1), np.int64)
    if K.ham_dp(g.as_array(), g.n, out) <= 0:
        return None
    return Cycle(out.tolist()).validate(g)


def brute_force_hamiltonian(g: Graph) -> bool:
    """Try every vertex order with vertex 0 first."""
    if g.n < 3:
        return False
    for rest in permutations(range(1, g.n)):
        if rest[0] > rest[-1]:
            continue
        order = (0,) + rest
        if all(g.has_edge(order[i], order[i - 1]) for i in range(g.n)):
            return True
    return False


def reference_cycle_search(g: Graph, required: int, min_len: int, allowed: int) -> Cycle | None:
    """Same contract as ``kernel_cycle_search`` by listing every cycle."""
    for c in iter_cycles(g, max(3, min_len)):
        m = c.mask
        if not m & ~allowed and not required & ~m:
            return c
    return None


def cycle_through_set(g: Graph, s, solver: CycleSolver = kernel_cycle_search) -> CycleCertificate:
    """A cycle of ``g`` whose vertex set contains ``s`` (other vertices allowed)."""
    req = s if isinstance(s, int) else mask_of(s)
    if bin(req).count("1") < 3:
        raise GraphError("cycle_through_set needs at least three vertices")
    if req >> g.n:
        raise GraphError("vertex set outside the graph")
    c = solver(g, req, 3, g.full)
    if c is None:
        return CycleCertificate("none")
    if req & ~c.mask:
        raise GraphError(f"solver returned {c!r} missing required vertices")
    return CycleCertificate("found", c)


def iter_cycles(g: Graph, min_len: int = 3, max_len: int | None = None) -> Iterator[Cycle]:
    """Every cycle once: least vertex first, second vertex below the last."""
    top = g.n if max_len is None else max_len
    rows = g.rows
    for s in range(g.n):
        above = g.full & ~((1 << (s + 1)) - 1)
        path = [s]

        def grow(v: int, used: int):
            for w in bits(rows[v] & above & ~used):
                path.append(w)
                if len(path) >= min_len and rows[w] >> s & 1 and path[1] < w:
                    yield Cycle(path)
                if len(path) < top:
                    yield from grow(w, used | 1 << w)
                path.pop()

        yield from grow(s, 1 << s)


@dataclass
class LongestCycleInfo:
    cycle: Cycle
    length: int
    heavy: bool
    attachments: list[tuple[int, int]] = field(default_factory=list)  # (component mask, A mask)


def longest_length(g: Graph, solver: CycleSolver = kernel_cycle_search) -> tuple[int, Cycle | None]:
    best, c = 0, None
    while True:
        nxt = solver(g, 0, best + 1, g.full)
        if nxt is None:
            return best, c
        best, c = len(nxt), nxt


def attachments(g: Graph, c: Cycle) -> list[tuple[int, int]]:
    """Components of G - V(c) with their neighbour sets on ``c``."""
    out = []
    for comp in g.component_masks(g.full & ~c.mask):
        nb = 0
        for v in bits(comp):
            nb |= g.rows[v]
        out.append((comp, nb & c.mask))
    return out


def longest_cycle(g: Graph, solver: CycleSolver = kernel_cycle_search) -> LongestCycleInfo:
    length, c = longest_length(g, solver)
    if c is None:
        raise GraphError(f"{g!r} is a forest")
    return LongestCycleInfo(c, length, is_heavy_cycle(g, c), attachments(g, c))


def is_nonextendable(g: Graph, c: Cycle, solver: CycleSolver = kernel_cycle_search) -> bool:
    c.validate(g)
    return solver(g, c.mask, len(c) + 1, g.full) is None


def is_heavy_cycle(g: Graph, c: Cycle) -> bool:
    c.validate(g)
    return not heavy_mask(g) & ~c.mask


# -- lemma checks ------------------------------------------------------------------

@dataclass
class LemmaVerdict:
    lemma: str
    status: str  # confirmed | violation | skipped
    g6: str
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "status": self.status, "g6": self.g6, "detail": self.detail}


def check_lemma2(g: Graph, solver: CycleSolver = kernel_cycle_search) -> LemmaVerdict:
    """Every longest cycle of a 2-connected K14-o-heavy graph holds all heavy vertices.

    For each heavy vertex h we ask for a cycle of maximum length avoiding h;
    finding one is a violation. This covers all longest cycles at once.
    """
    g6 = to_graph6(g)
    if not is_2connected(g) or not is_o_heavy(g, K14):
        return LemmaVerdict("lemma2", "skipped", g6, {"reason": "precondition"})
    c, _ = longest_length(g, solver)
    for h in bits(heavy_mask(g)):
        bad = solver(g, 0, c, g.full & ~(1 << h))
        if bad is not None:
            return LemmaVerdict("lemma2", "violation", g6,
                                {"cycle": list(bad), "missed_heavy": h, "length": c})
    return LemmaVerdict("lemma2", "confirmed", g6, {"length": c})


def lemma3_failures(g: Graph, c: Cycle) -> list[str]:
    n, deg = g.n, g.degrees
    fails = []
    for comp, a in attachments(g, c):
        A = set(bits(a))
        Am, Ap = c.pred_set(A), c.succ_set(A)
        if A & Am or A & Ap:
            fails.append(f"component {comp:#x}: A meets A- or A+")
        for name, S in (("A-", Am), ("A+", Ap)):
            for u in S:
                for v in S:
                    if u < v and g.has_edge(u, v):
                        fails.append(f"{name} edge {u}-{v}")
                    elif u < v and deg[u] + deg[v] >= n:
                        fails.append(f"{name} heavy pair {u},{v}")
    return fails


def check_lemma3(g: Graph, c: Cycle, solver: CycleSolver = kernel_cycle_search) -> LemmaVerdict:
    g6 = to_graph6(g)
    c.validate(g)
    if c.mask == g.full or not is_nonextendable(g, c, solver):
        return LemmaVerdict("lemma3", "skipped", g6, {"reason": "precondition"})
    fails = lemma3_failures(g, c)
    status = "violation" if fails else "confirmed"
    return LemmaVerdict("lemma3", status, g6, {"cycle": list(c), "failures": fails})
