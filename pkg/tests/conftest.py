"""Shared test fixtures and independent oracles.

The oracles here deliberately avoid the library's own algorithms: shortest
paths are enumerated by depth-limited DFS, determinants come from the
Leibniz permutation sum, and Laplacians are rebuilt with plain loops.
"""

from __future__ import annotations

import itertools
import random

from sdlap import SignedGraph, WeightedSignedGraph, generate, switch


def brute_pair_summary(g: SignedGraph, src: int, dst: int):
    """(d, exists_pos, exists_neg) by enumerating every simple path."""
    if src == dst:
        return 0, True, False
    state = {"d": None, "pos": False, "neg": False}

    def dfs(v, visited, length, sign):
        if v == dst:
            if state["d"] is None or length < state["d"]:
                state["d"] = length
                state["pos"] = False
                state["neg"] = False
            if length == state["d"]:
                if sign > 0:
                    state["pos"] = True
                else:
                    state["neg"] = True
            return
        if state["d"] is not None and length + 1 > state["d"]:
            return
        for u, s in g.adjacency[v]:
            if u not in visited:
                visited.add(u)
                dfs(u, visited, length + 1, sign * s)
                visited.discard(u)

    dfs(src, {src}, 0, 1)
    return state["d"], state["pos"], state["neg"]


def brute_table(g: SignedGraph):
    return [
        [brute_pair_summary(g, u, v) for v in range(g.n)] for u in range(g.n)
    ]


def leibniz_det(rows) -> int:
    """Exact determinant by the permutation expansion; fine up to 6x6."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1
            for i in range(n)
            for j in range(i + 1, n)
            if perm[i] > perm[j]
        )
        term = 1 if inversions % 2 == 0 else -1
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def classic_laplacian(n: int, weighted_edges):
    """Textbook unsigned weighted Laplacian built with plain loops."""
    lap = [[0.0] * n for _ in range(n)]
    for u, v, w in weighted_edges:
        lap[u][u] += w
        lap[v][v] += w
        lap[u][v] -= w
        lap[v][u] -= w
    return lap


def connected(n: int, pairs) -> bool:
    seen = {0} if n else set()
    adj = {i: [] for i in range(n)}
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def all_signed_graphs(n: int, connected_only: bool = True):
    """Every signed graph on n labeled vertices; feasible for n <= 4."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(2 ** len(pairs)):
        chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if connected_only and not connected(n, chosen):
            continue
        for signs in itertools.product((1, -1), repeat=len(chosen)):
            yield SignedGraph(
                n, tuple((u, v, s) for (u, v), s in zip(chosen, signs))
            )


def random_connected_graph(rng: random.Random, n_min: int, n_max: int) -> SignedGraph:
    n = rng.randint(n_min, n_max)
    p = 1.0 if n <= 2 else rng.uniform(0.3, 0.95)
    seed = rng.getrandbits(32)
    if rng.random() < 0.3:
        g = generate("random", n, signs="allpos", seed=seed, p=p)
        zeta = [rng.choice((1, -1)) for _ in range(n)]
        return switch(g, zeta)
    return generate("random", n, signs=rng.choice((0.2, 0.5, 0.8, 1.0)), seed=seed, p=p)


def random_weighted_graph(rng: random.Random, n_min: int, n_max: int,
                          high: int = 5) -> WeightedSignedGraph:
    g = random_connected_graph(rng, n_min, n_max)
    return WeightedSignedGraph(g, tuple(float(rng.randint(1, high)) for _ in range(g.m)))
