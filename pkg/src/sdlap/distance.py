"""All-pairs hop distances with shortest-path sign classification.

A breadth-first layering gives the hop distance; two boolean flags per
pair record whether some shortest path is positive and whether some is
negative. The flags propagate over the shortest-path DAG in distance
order, so no path is ever enumerated.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import NEGATIVE, POSITIVE, SignedGraph, WeightedSignedGraph
from .matrices import SquareMatrix

DISTANCE_KINDS = ("max", "min", "pm")


class DisconnectedGraphError(ValueError):
    """Distance operations require a connected graph."""

    def __init__(self, vertex: int, source: int):
        self.vertex = vertex
        self.source = source
        super().__init__(
            f"graph is disconnected: vertex index {vertex} is unreachable "
            f"from vertex index {source}"
        )


class IncompatibleGraphError(ValueError):
    """A vertex pair admits shortest paths of both signs."""

    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        u, v = pair
        super().__init__(
            f"graph is not distance-compatible: vertex indices {u} and {v} "
            f"have shortest paths of both signs"
        )


class PairDistanceSummary(NamedTuple):
    d: int
    exists_pos: bool
    exists_neg: bool


@dataclass(frozen=True, eq=False)
class DistanceTable:
    """Symmetric hop distances plus the two sign-existence flags per pair.

    The diagonal is d=0 with exists_pos True and exists_neg False by
    convention, matching the zero diagonal of the distance matrices.
    """

    dist: np.ndarray
    pos: np.ndarray
    neg: np.ndarray

    def __post_init__(self):
        for name in ("dist", "pos", "neg"):
            arr = getattr(self, name)
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def entry(self, u: int, v: int) -> PairDistanceSummary:
        return PairDistanceSummary(
            int(self.dist[u, v]), bool(self.pos[u, v]), bool(self.neg[u, v])
        )

    def sigma_max(self, u: int, v: int) -> int:
        """+1 unless every shortest path between u and v is negative."""
        return POSITIVE if self.pos[u, v] else NEGATIVE

    def sigma_min(self, u: int, v: int) -> int:
        """-1 unless every shortest path between u and v is positive."""
        return NEGATIVE if self.neg[u, v] else POSITIVE

    def to_json_obj(self) -> dict:
        sig_max = np.where(self.pos, 1, -1)
        sig_min = np.where(self.neg, -1, 1)
        return {
            "n": self.n,
            "dmax": (sig_max * self.dist).tolist(),
            "dmin": (sig_min * self.dist).tolist(),
        }

    def to_csv(self, kind: str = "max") -> str:
        """Row-major CSV of the signed distance matrix of the given kind."""
        return distance_matrix(self, kind).to_csv()


def _sssp(g: SignedGraph, src: int):
    n = g.n
    dist = [-1] * n
    pos = [False] * n
    neg = [False] * n
    dist[src] = 0
    pos[src] = True
    order = [src]
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v, _ in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                order.append(v)
                queue.append(v)
    for v in range(n):
        if dist[v] < 0:
            raise DisconnectedGraphError(v, src)
    # BFS order is nondecreasing in distance, so the predecessors of each
    # vertex are final before the vertex itself is reached.
    for v in order[1:]:
        below = dist[v] - 1
        p = ng = False
        for u, s in g.adjacency[v]:
            if dist[u] == below:
                if s == POSITIVE:
                    p = p or pos[u]
                    ng = ng or neg[u]
                else:
                    p = p or neg[u]
                    ng = ng or pos[u]
        pos[v] = p
        neg[v] = ng
    return dist, pos, neg


def sssp_signs(g: SignedGraph, src: int) -> list[PairDistanceSummary]:
    """Hop distance and shortest-path sign flags from one source vertex."""
    if not 0 <= src < g.n:
        raise ValueError(f"source index {src} outside 0..{g.n - 1}")
    dist, pos, neg = _sssp(g, src)
    return [PairDistanceSummary(d, p, ng) for d, p, ng in zip(dist, pos, neg)]


def distance_table(g: SignedGraph, threads: int = 1) -> DistanceTable:
    """Run sssp_signs from every source. Raises on disconnected input.

    threads > 1 computes source rows in a thread pool; every row only
    touches its own output, so the parallel run is exact.
    """
    n = g.n
    sources = range(n)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda s: _sssp(g, s), sources))
    else:
        rows = [_sssp(g, s) for s in sources]
    dist = np.array([r[0] for r in rows], dtype=np.int64)
    pos = np.array([r[1] for r in rows], dtype=bool)
    neg = np.array([r[2] for r in rows], dtype=bool)
    return DistanceTable(dist, pos, neg)


def is_compatible(table: DistanceTable) -> tuple[bool, tuple[int, int] | None]:
    """True when no pair has shortest paths of both signs.

    On failure returns the lexicographically least incompatible pair.
    """
    bad = table.pos & table.neg
    np.fill_diagonal(bad, False)
    if not bad.any():
        return True, None
    u, v = np.argwhere(bad)[0]
    return False, (int(u), int(v))


def distance_matrix(table: DistanceTable, kind: str) -> SquareMatrix:
    """Signed distance matrix: entry is sigma(u,v) * d(u,v).

    kind "max" uses sigma_max, "min" uses sigma_min, and "pm" requires the
    table to be compatible (then the two coincide).
    """
    if kind not in DISTANCE_KINDS:
        raise ValueError(f"kind must be one of {DISTANCE_KINDS}, got {kind!r}")
    if kind == "pm":
        ok, witness = is_compatible(table)
        if not ok:
            raise IncompatibleGraphError(witness)
        sig = np.where(table.pos, 1, -1)
    elif kind == "max":
        sig = np.where(table.pos, 1, -1)
    else:
        sig = np.where(table.neg, -1, 1)
    return SquareMatrix((sig * table.dist).astype(np.int64), f"d{kind}")


def transmission(table: DistanceTable) -> np.ndarray:
    """Per-vertex sum of unsigned hop distances to every other vertex."""
    return table.dist.sum(axis=1)


def associated_complete(g: SignedGraph, table: DistanceTable, kind: str) -> WeightedSignedGraph:
    """Complete the graph: each non-adjacent pair gets an edge whose sign is
    the pair's sigma_max (or sigma_min) and whose weight is the hop distance.

    Edges of g keep their own sign with weight 1, which agrees with the
    sigma convention because the edge itself is the unique shortest path.
    Edges come out in lexicographic endpoint order.
    """
    if kind not in ("max", "min"):
        raise ValueError(f"kind must be 'max' or 'min', got {kind!r}")
    sigma = table.sigma_max if kind == "max" else table.sigma_min
    edges: list[tuple[int, int, int]] = []
    weights: list[float] = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.has_edge(u, v):
                edges.append((u, v, g.sign_of(u, v)))
                weights.append(1.0)
            else:
                edges.append((u, v, sigma(u, v)))
                weights.append(float(table.dist[u, v]))
    return WeightedSignedGraph(SignedGraph(g.n, tuple(edges)), tuple(weights))
