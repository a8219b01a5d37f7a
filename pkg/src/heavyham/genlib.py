"""Isomorph-free generation of small graphs and graph6 corpus ingestion.

Graphs on ``n`` vertices are grown from the canonical representatives on
``n - 1`` vertices by adding one vertex of minimum degree in every admissible
way; candidates are canonically labelled and deduplicated by their code.
"""

from __future__ import annotations

import logging
import os
from collections import namedtuple
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from . import _kernels as K
from .graph import Graph, Graph6Error, parse_graph6, to_graph6

log = logging.getLogger(__name__)

CANON_MAX_N = 12
FILTERS = ("all", "connected", "two_connected")
FILTER_ALIASES = {"2conn": "two_connected", "biconnected": "two_connected"}
ENUM_CAPS = {"all": 9, "connected": 9, "two_connected": 10}

CanonicalForm = namedtuple("CanonicalForm", "n code")


class EnumerationCapError(ValueError):
    pass


class IngestError(ValueError):
    pass


def canonical_labeling(g: Graph) -> tuple[Graph, list[int]]:
    """Canonically relabelled copy of ``g`` and the map vertex -> new label."""
    if g.n > CANON_MAX_N:
        raise EnumerationCapError(f"canonical form limited to n <= {CANON_MAX_N}, got {g.n}")
    best = np.empty(g.n, np.uint64)
    perm = np.empty(g.n, np.int64)
    K.canon(g.as_array(), g.n, best, perm)
    return Graph(g.n, [int(r) for r in best]), [int(p) for p in perm]


def _code(g: Graph) -> int:
    code = 0
    for j in range(1, g.n):
        for i in range(j):
            code = code << 1 | (g.rows[i] >> j & 1)
    return code


def canonical_form(g: Graph) -> CanonicalForm:
    cg, _ = canonical_labeling(g)
    return CanonicalForm(g.n, _code(cg))


def graph_from_code(code: int, n: int) -> Graph:
    rows = [0] * n
    k = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if code >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, rows)


# -- generation ----------------------------------------------------------------

def _extend(parent_codes: np.ndarray, n0: int, min_new_degree: int,
            need_biconnected: bool, chunk: int = 2000) -> np.ndarray:
    parents = K.unpack_all(parent_codes, n0)
    width = 1 << n0
    found = []
    for lo in range(0, len(parents), chunk):
        block = parents[lo:lo + chunk]
        out = np.empty(len(block) * width, np.uint64)
        cnt = K.extend_level(block, n0, min_new_degree, need_biconnected, out)
        found.append(np.unique(out[:cnt]))
        if lo and lo % (chunk * 50) == 0:
            log.info("n=%d: extended %d/%d parents", n0 + 1, lo, len(parents))
    if not found:
        return np.empty(0, np.uint64)
    return np.unique(np.concatenate(found))


@lru_cache(maxsize=None)
def _all_codes(n: int) -> np.ndarray:
    if n == 1:
        return np.zeros(1, np.uint64)
    return _extend(_all_codes(n - 1), n - 1, 0, False)


@lru_cache(maxsize=None)
def _codes(n: int, flt: str) -> np.ndarray:
    if flt == "all":
        return _all_codes(n)
    if flt == "connected":
        codes = _all_codes(n)
        return codes[K.connected_codes(codes, n)]
    if n <= 9:
        codes = _all_codes(n)
        return codes[K.biconnected_codes(codes, n)]
    # a 2-connected graph minus any vertex is connected
    return _extend(_codes(n - 1, "connected"), n - 1, 2, True)


def normalize_filter(flt: str) -> str:
    flt = FILTER_ALIASES.get(flt, flt)
    if flt not in FILTERS:
        raise ValueError(f"unknown filter {flt!r}; expected one of {FILTERS}")
    return flt


def enumerate_codes(n: int, flt: str = "all", cache_dir: str | os.PathLike | None = None) -> np.ndarray:
    """Sorted canonical codes (graph6 bit order) of the requested class."""
    flt = normalize_filter(flt)
    if not 1 <= n <= ENUM_CAPS[flt]:
        raise EnumerationCapError(f"enumerate({n}, {flt}) outside 1 <= n <= {ENUM_CAPS[flt]}")
    if cache_dir is None:
        cache_dir = os.environ.get("HEAVYHAM_CACHE")
    if cache_dir is None:
        return _codes(n, flt)
    path = Path(cache_dir) / f"gen-{n}-{flt}.g6"
    if path.exists():
        return read_code_cache(path, n)
    codes = _codes(n, flt)
    path.parent.mkdir(parents=True, exist_ok=True)
    write_code_cache(path, codes, n)
    return codes


# -- fixed-n graph6 <-> code arrays ---------------------------------------------

def _g6_width(n: int) -> tuple[int, int]:
    nbits = n * (n - 1) // 2
    nchar = -(-nbits // 6)
    return nchar, nchar * 6 - nbits


def codes_to_g6_bytes(codes: np.ndarray, n: int) -> bytes:
    nchar, pad = _g6_width(n)
    buf = np.empty((len(codes), nchar + 2), np.uint8)
    buf[:, 0] = n + 63
    body = codes.astype(np.uint64) << np.uint64(pad)
    for i in range(nchar):
        shift = np.uint64(6 * (nchar - 1 - i))
        buf[:, 1 + i] = ((body >> shift) & np.uint64(63)).astype(np.uint8) + 63
    buf[:, -1] = ord("\n")
    return buf.tobytes()


def write_code_cache(path: Path, codes: np.ndarray, n: int) -> None:
    tmp = Path(str(path) + ".tmp")
    tmp.write_bytes(codes_to_g6_bytes(codes, n))
    tmp.replace(path)


def read_code_cache(path: Path, n: int) -> np.ndarray:
    nchar, pad = _g6_width(n)
    raw = np.frombuffer(Path(path).read_bytes(), np.uint8)
    if raw.size % (nchar + 2):
        raise IngestError(f"{path}: not a fixed-width graph6 cache for n={n}")
    rec = raw.reshape(-1, nchar + 2)
    if rec.size and (np.any(rec[:, 0] != n + 63) or np.any(rec[:, -1] != ord("\n"))):
        raise IngestError(f"{path}: unexpected header or line terminator")
    body = np.zeros(len(rec), np.uint64)
    for i in range(nchar):
        body = (body << np.uint64(6)) | (rec[:, 1 + i].astype(np.uint64) - np.uint64(63))
    return body >> np.uint64(pad)


# -- streams -------------------------------------------------------------------

class GraphStream:
    """An ordered source of graphs plus its provenance and a running count.

    Generated streams keep their canonical codes so batch consumers can work
    on the arrays directly instead of materialising ``Graph`` objects.
    """

    def __init__(self, provenance: str, graphs: Iterable[Graph] | None = None,
                 codes: np.ndarray | None = None, n: int | None = None):
        self.provenance = provenance
        self.codes = codes
        self.n = n
        self._graphs = graphs
        self.count = 0

    def __iter__(self) -> Iterator[Graph]:
        if self.codes is not None:
            rows = K.unpack_all(self.codes, self.n)
            for r in rows:
                self.count += 1
                yield Graph(self.n, r.tolist())
        else:
            for g in self._graphs:
                self.count += 1
                yield g

    def __len__(self):
        if self.codes is not None:
            return len(self.codes)
        raise TypeError("length of a file stream is unknown until consumed")

    def __repr__(self):
        return f"GraphStream({self.provenance})"


def enumerate_graphs(n: int, flt: str = "all", cache_dir=None) -> GraphStream:
    """One canonical representative per isomorphism class, in code order."""
    flt = normalize_filter(flt)
    codes = enumerate_codes(n, flt, cache_dir)
    return GraphStream(f"generated({n},{flt})", codes=codes, n=n)


def enumerate_range(n_min: int, n_max: int, flt: str = "two_connected", cache_dir=None) -> list[GraphStream]:
    return [enumerate_graphs(n, flt, cache_dir) for n in range(n_min, n_max + 1)]


def _read_lines(path: Path) -> Iterator[Graph]:
    with open(path, "rb") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                yield parse_graph6(line)
            except Graph6Error as exc:
                raise IngestError(f"{path}:{lineno}: {exc}") from exc


def ingest(path: str | os.PathLike) -> GraphStream:
    """Graphs of a graph6 file in file order, without deduplication."""
    path = Path(path)
    if not path.exists():
        raise IngestError(f"{path}: no such file")
    return GraphStream(f"file({path})", graphs=_read_lines(path))


def write_graph6(graphs: Iterable[Graph], path: str | os.PathLike) -> int:
    count = 0
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(to_graph6(g) + "\n")
            count += 1
    return count
