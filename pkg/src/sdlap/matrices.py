"""Dense matrix builders: weighted adjacency, degree, Laplacian, oriented
incidence, and the two signed distance Laplacians."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import SignedGraph, WeightedSignedGraph, as_weighted, canonical_orientation


def _fmt_number(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


@dataclass(frozen=True, eq=False)
class SquareMatrix:
    """Dense square matrix with a label for exports.

    Integer dtype marks entries as exact; builders choose int64 whenever
    every weight is integral so the exact determinant path applies.
    """

    entries: np.ndarray
    kind: str = ""

    def __post_init__(self):
        arr = np.asarray(self.entries)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"square matrix required, got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def exact(self) -> bool:
        return np.issubdtype(self.entries.dtype, np.integer)

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)

    def to_csv(self) -> str:
        rows = self.entries.tolist()
        return "\n".join(",".join(_fmt_number(x) for x in row) for row in rows) + "\n"

    def to_json_obj(self) -> dict:
        return {"n": self.n, "kind": self.kind, "rows": self.entries.tolist()}


@dataclass(frozen=True, eq=False)
class IncidenceMatrix:
    """Oriented weighted incidence matrix, vertices by edges.

    The column of edge e holds sign(e)*sqrt(w(e)) in the tail row and
    -sqrt(w(e)) in the head row.
    """

    entries: np.ndarray
    orientation: tuple[tuple[int, int], ...]

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "orientation", tuple(map(tuple, self.orientation)))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def m(self) -> int:
        return self.entries.shape[1]

    def to_csv(self) -> str:
        rows = self.entries.tolist()
        return "\n".join(",".join(_fmt_number(x) for x in row) for row in rows) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "kind": "incidence",
            "rows": self.entries.tolist(),
            "orientation": [[t + 1, h + 1] for t, h in self.orientation],
        }


def _weight_values(wg: WeightedSignedGraph):
    if wg.integer_weights:
        return [int(w) for w in wg.weights], np.int64
    return list(wg.weights), np.float64


def adjacency_matrix(g: SignedGraph | WeightedSignedGraph) -> SquareMatrix:
    """Symmetric matrix with sign*weight on edges and zero elsewhere."""
    wg = as_weighted(g)
    values, dtype = _weight_values(wg)
    a = np.zeros((wg.n, wg.n), dtype=dtype)
    for (u, v, s), w in zip(wg.edges, values):
        a[u, v] = a[v, u] = s * w
    return SquareMatrix(a, "adjacency")


def weighted_degree_matrix(g: SignedGraph | WeightedSignedGraph) -> SquareMatrix:
    """Diagonal of per-vertex weight sums; signs are ignored."""
    wg = as_weighted(g)
    values, dtype = _weight_values(wg)
    d = np.zeros((wg.n, wg.n), dtype=dtype)
    for (u, v, _), w in zip(wg.edges, values):
        d[u, u] += w
        d[v, v] += w
    return SquareMatrix(d, "degree")


def weighted_laplacian(g: SignedGraph | WeightedSignedGraph) -> SquareMatrix:
    """Weighted degree matrix minus signed weighted adjacency matrix."""
    wg = as_weighted(g)
    entries = weighted_degree_matrix(wg).entries - adjacency_matrix(wg).entries
    return SquareMatrix(entries, "laplacian")


def incidence_matrix(g: SignedGraph | WeightedSignedGraph,
                     orientation: Sequence[tuple[int, int]] | None = None) -> IncidenceMatrix:
    """Oriented incidence matrix; defaults to the tail-is-lower orientation.

    For any orientation the product H @ H.T equals the weighted Laplacian:
    flipping an edge flips its whole column, which cancels in the product.
    """
    wg = as_weighted(g)
    if orientation is None:
        orientation = canonical_orientation(wg)
    orientation = tuple((int(t), int(h)) for t, h in orientation)
    if len(orientation) != wg.m:
        raise ValueError(f"{len(orientation)} orientation pairs for {wg.m} edges")
    h = np.zeros((wg.n, wg.m), dtype=float)
    for j, ((u, v, s), (tail, head), w) in enumerate(
        zip(wg.edges, orientation, wg.weights)
    ):
        if {tail, head} != {u, v}:
            raise ValueError(
                f"orientation {orientation[j]} does not match edge {j} endpoints ({u}, {v})"
            )
        root = math.sqrt(w)
        h[tail, j] = s * root
        h[head, j] = -root
    return IncidenceMatrix(h, orientation)


def distance_laplacian(g: SignedGraph | WeightedSignedGraph, kind: str) -> SquareMatrix:
    """Transmission diagonal minus the signed distance matrix of the kind.

    kind is "max", "min", or "pm"; "pm" requires every vertex pair to be
    compatible and raises IncompatibleGraphError with a witness otherwise.
    Distances are hop counts, so weights on g are ignored.
    """
    from .distance import distance_table

    base = g.base if isinstance(g, WeightedSignedGraph) else g
    return distance_laplacian_from_table(distance_table(base), kind)


def distance_laplacian_from_table(table, kind: str) -> SquareMatrix:
    """Same as distance_laplacian but reusing an existing distance table."""
    from .distance import distance_matrix, transmission

    d = distance_matrix(table, kind)
    entries = np.diag(transmission(table)) - d.entries
    return SquareMatrix(entries, f"l{kind}")
