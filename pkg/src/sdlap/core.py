"""Signed-graph data model: parsing, serialization, switching, generators.

Vertices are 0-based in the API. Edge-list files and human-readable output
(certificates, orientations) use 1-based labels; see the file format notes
in the README.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

POSITIVE = 1
NEGATIVE = -1

GENERATOR_KINDS = ("cycle", "path", "complete", "random")

_SIGN_TOKENS = {"+": POSITIVE, "1": POSITIVE, "-": NEGATIVE, "-1": NEGATIVE}
_MAX_RANDOM_ATTEMPTS = 500

SignSpec = Union[str, float, Iterable, None]


class GraphFormatError(ValueError):
    """Malformed edge-list text; remembers the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class GenerationError(RuntimeError):
    """Random generation could not satisfy a structural requirement."""


class DisjointSet:
    """Union-find with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the sets holding x and y; returns False when already joined."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return True


@dataclass(frozen=True)
class SignedGraph:
    """Simple undirected graph whose edges carry a sign of +1 or -1.

    Edges are stored with endpoints normalized so that u < v, in the order
    they were supplied. Instances are immutable values: every operation in
    this package returns a new graph, so sharing across threads is safe.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n!r}")
        normalized = []
        seen: set[tuple[int, int]] = set()
        for edge in self.edges:
            u, v, s = edge
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {edge!r} has a vertex index outside 0..{self.n - 1}")
            if u == v:
                raise ValueError(f"loop at vertex index {u} is not allowed")
            if s not in (POSITIVE, NEGATIVE):
                raise ValueError(f"edge {edge!r} has sign {s!r}, expected +1 or -1")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise ValueError(f"duplicate edge between vertex indices {u} and {v}")
            seen.add((u, v))
            normalized.append((u, v, s))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per-vertex tuple of (neighbor, sign) pairs, neighbors ascending."""
        nbrs: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, s in self.edges:
            nbrs[u].append((v, s))
            nbrs[v].append((u, s))
        return tuple(tuple(sorted(lst)) for lst in nbrs)

    @cached_property
    def _sign_by_pair(self) -> dict[tuple[int, int], int]:
        return {(u, v): s for u, v, s in self.edges}

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._sign_by_pair

    def sign_of(self, u: int, v: int) -> int:
        try:
            return self._sign_by_pair[(min(u, v), max(u, v))]
        except KeyError:
            raise ValueError(f"vertex indices {u} and {v} are not adjacent") from None


@dataclass(frozen=True)
class WeightedSignedGraph:
    """A signed graph with a strictly positive weight on each edge."""

    base: SignedGraph
    weights: tuple[float, ...]

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if len(weights) != self.base.m:
            raise ValueError(
                f"{len(weights)} weights for {self.base.m} edges"
            )
        for i, w in enumerate(weights):
            if not w > 0:
                raise ValueError(f"weight {w!r} at edge {i} is not strictly positive")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def unit(cls, g: SignedGraph) -> "WeightedSignedGraph":
        return cls(g, (1.0,) * g.m)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def edges(self) -> tuple[tuple[int, int, int], ...]:
        return self.base.edges

    @property
    def integer_weights(self) -> bool:
        """True when every weight is integral (enables exact determinants)."""
        return all(w.is_integer() for w in self.weights)


def as_weighted(g: SignedGraph | WeightedSignedGraph) -> WeightedSignedGraph:
    """Coerce to a weighted graph, attaching unit weights when necessary."""
    if isinstance(g, WeightedSignedGraph):
        return g
    return WeightedSignedGraph.unit(g)


def canonical_orientation(g: SignedGraph | WeightedSignedGraph) -> tuple[tuple[int, int], ...]:
    """Default edge orientation: the lower-indexed endpoint is the tail."""
    base = g.base if isinstance(g, WeightedSignedGraph) else g
    return tuple((u, v) for u, v, _ in base.edges)


def parse_edge_list(text: str) -> WeightedSignedGraph:
    """Parse the edge-list file format.

    Format: '#' lines are comments; the first non-comment line is the vertex
    count n; every further line is "u v s [w]" with 1-based endpoints,
    s in {+, -, 1, -1} and an optional positive weight (default 1).

    Raises GraphFormatError with the offending line number on bad input.
    """
    n: int | None = None
    edges: list[tuple[int, int, int]] = []
    weights: list[float] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise GraphFormatError(f"expected vertex count, got {line!r}", lineno)
            if n < 1:
                raise GraphFormatError(f"vertex count must be positive, got {n}", lineno)
            continue
        tokens = line.split()
        if len(tokens) not in (3, 4):
            raise GraphFormatError(
                f"expected 'u v s [w]', got {len(tokens)} fields", lineno
            )
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {line!r}", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"vertex outside 1..{n} in {line!r}", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        if tokens[2] not in _SIGN_TOKENS:
            raise GraphFormatError(
                f"sign token {tokens[2]!r} not in {{+, -, 1, -1}}", lineno
            )
        sign = _SIGN_TOKENS[tokens[2]]
        weight = 1.0
        if len(tokens) == 4:
            try:
                weight = float(tokens[3])
            except ValueError:
                raise GraphFormatError(f"bad weight {tokens[3]!r}", lineno)
            if not weight > 0:
                raise GraphFormatError(f"nonpositive weight {tokens[3]}", lineno)
        key = (min(u, v) - 1, max(u, v) - 1)
        if key in seen:
            raise GraphFormatError(f"duplicate edge between {u} and {v}", lineno)
        seen.add(key)
        edges.append((u - 1, v - 1, sign))
        weights.append(weight)
    if n is None:
        raise GraphFormatError("missing vertex count line")
    return WeightedSignedGraph(SignedGraph(n, tuple(edges)), tuple(weights))


def _format_weight(w: float) -> str:
    return str(int(w)) if w.is_integer() else repr(w)


def serialize(g: SignedGraph | WeightedSignedGraph) -> str:
    """Emit the edge-list format; unit weights are omitted.

    parse_edge_list(serialize(g)) reproduces g exactly, including edge order.
    """
    wg = as_weighted(g)
    lines = [str(wg.n)]
    for (u, v, s), w in zip(wg.edges, wg.weights):
        token = "+" if s == POSITIVE else "-"
        entry = f"{u + 1} {v + 1} {token}"
        if w != 1.0:
            entry += f" {_format_weight(w)}"
        lines.append(entry)
    return "\n".join(lines) + "\n"


def switch(g: SignedGraph, zeta: Sequence[int]) -> SignedGraph:
    """Resign every edge uv to zeta(u)*sign(uv)*zeta(v).

    Switching preserves the sign of every closed walk, so it preserves
    balance; applying the same zeta twice restores the original graph.
    """
    if len(zeta) != g.n:
        raise ValueError(f"switching function has length {len(zeta)}, expected {g.n}")
    for z in zeta:
        if z not in (POSITIVE, NEGATIVE):
            raise ValueError(f"switching value {z!r} is not +1 or -1")
    return SignedGraph(
        g.n, tuple((u, v, zeta[u] * s * zeta[v]) for u, v, s in g.edges)
    )


def path_sign(g: SignedGraph, walk: Sequence[int]) -> int:
    """Product of edge signs along a walk given as a vertex sequence."""
    if len(walk) == 0:
        raise ValueError("empty walk")
    sign = POSITIVE
    for u, v in zip(walk, walk[1:]):
        sign *= g.sign_of(u, v)
    return sign


def _is_connected(n: int, pairs: list[tuple[int, int]]) -> bool:
    dsu = DisjointSet(n)
    parts = n
    for u, v in pairs:
        if dsu.union(u, v):
            parts -= 1
    return parts == 1


def _resolve_signs(m: int, signs: SignSpec, rng: random.Random,
                   edges: list[tuple[int, int]]) -> tuple[int, ...]:
    if isinstance(signs, str):
        key = signs.replace("_", "-").lower()
        if key in ("allpos", "all-positive", "+"):
            return (POSITIVE,) * m
        if key in ("allneg", "all-negative", "-"):
            return (NEGATIVE,) * m
        if key and set(key) <= {"+", "-"}:
            if len(key) != m:
                raise ValueError(
                    f"sign string has length {len(key)}, expected one sign per edge ({m})"
                )
            return tuple(POSITIVE if c == "+" else NEGATIVE for c in key)
        raise ValueError(f"unrecognized sign spec {signs!r}")
    if isinstance(signs, float):
        if not 0.0 <= signs <= 1.0:
            raise ValueError(f"sign probability {signs} outside [0, 1]")
        return tuple(
            NEGATIVE if rng.random() < signs else POSITIVE for _ in range(m)
        )
    # remaining option: a set of negative edges, by index or endpoint pair
    negative: set[int] = set()
    by_pair = {pair: i for i, pair in enumerate(edges)}
    for item in signs:  # type: ignore[union-attr]
        if isinstance(item, bool):
            raise ValueError("negative-edge entries must be indices or pairs")
        if isinstance(item, int):
            if not 0 <= item < m:
                raise ValueError(f"negative-edge index {item} outside 0..{m - 1}")
            negative.add(item)
        else:
            u, v = item
            pair = (min(u, v), max(u, v))
            if pair not in by_pair:
                raise ValueError(f"negative-edge pair {item!r} is not an edge")
            negative.add(by_pair[pair])
    return tuple(NEGATIVE if i in negative else POSITIVE for i in range(m))


def generate(kind: str, n: int, signs: SignSpec = None,
             seed: int | None = None, p: float = 0.5) -> SignedGraph:
    """Build a cycle, path, complete, or random connected signed graph.

    signs selects the signature: "allpos"/"allneg", a +/- string with one
    character per edge, an iterable naming the negative edges (indices or
    endpoint pairs), or a float q giving each edge sign -1 with probability
    q. Defaults to all-positive, except kind="random" which defaults to
    q=0.5. For kind="random", p is the edge probability; sampling retries
    until the graph is connected and is deterministic for a fixed seed.
    """
    if kind not in GENERATOR_KINDS:
        raise ValueError(f"unknown generator kind {kind!r}")
    if kind == "cycle":
        if n < 3:
            raise ValueError(f"cycle needs n >= 3, got {n}")
    elif n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)

    if kind == "cycle":
        pairs = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    elif kind == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif kind == "complete":
        pairs = list(itertools.combinations(range(n), 2))
    else:
        all_pairs = list(itertools.combinations(range(n), 2))
        pairs = []
        for _ in range(_MAX_RANDOM_ATTEMPTS):
            pairs = [pair for pair in all_pairs if rng.random() < p]
            if _is_connected(n, pairs):
                break
        else:
            raise GenerationError(
                f"no connected graph on {n} vertices with p={p} "
                f"after {_MAX_RANDOM_ATTEMPTS} attempts"
            )

    if signs is None:
        signs = 0.5 if kind == "random" else "allpos"
    resolved = _resolve_signs(len(pairs), signs, rng, pairs)
    return SignedGraph(n, tuple((u, v, s) for (u, v), s in zip(pairs, resolved)))


def components(g: SignedGraph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    dsu = DisjointSet(g.n)
    for u, v, _ in g.edges:
        dsu.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(dsu.find(v), []).append(v)
    return sorted(groups.values())
