"""Independent oracles shared by the test modules.

Nothing here calls into the solver under test beyond building ``Graph``
objects, so agreement with these functions is real evidence.
"""
from __future__ import annotations

import itertools
import random
from math import gcd

import numpy as np

from closedchroma.graphs import Graph


def g(*xs: int) -> int:
    out = 0
    for x in xs:
        out = gcd(out, x)
    return out


def random_graph(rng: random.Random, max_vertices: int = 8) -> Graph:
    size = rng.randint(1, max_vertices)
    p = rng.choice((0.2, 0.4, 0.6, 0.8))
    edges = [(u, v) for u, v in itertools.combinations(range(size), 2) if rng.random() < p]
    return Graph.from_edges(size, edges)


def canonical_form(size: int, edges) -> tuple:
    best = None
    for perm in itertools.permutations(range(size)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


def iso_class_representatives(size: int) -> list[Graph]:
    """One graph per isomorphism class, by enumerating edge subsets."""
    pairs = list(itertools.combinations(range(size), 2))
    seen = {}
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        seen.setdefault(canonical_form(size, edges), edges)
    return [Graph.from_edges(size, e) for _, e in sorted(seen.items())]


NAMED_FIVE = {
    "C5": [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
    "P5": [(0, 1), (1, 2), (2, 3), (3, 4)],
    "K5": list(itertools.combinations(range(5), 2)),
    "K5-e": [e for e in itertools.combinations(range(5), 2) if e != (0, 1)],
    "S4": [(0, 1), (0, 2), (0, 3), (0, 4)],
    "K2,3": [(a, b) for a in (0, 1) for b in (2, 3, 4)],
    "bull": [(0, 1), (1, 2), (2, 0), (1, 3), (2, 4)],
    "house": [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)],
    "W4": [(0, 1), (1, 2), (2, 3), (3, 0)] + [(4, i) for i in range(4)],
    "butterfly": [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)],
    "fork": [(0, 1), (1, 2), (2, 3), (2, 4)],
    "empty5": [],
}


def literal_closed_chromatic(graph: Graph, n: int, t_max: int = 5) -> dict[int, int | None]:
    """Minimum order per remainder k, by exhaustive search over labels ``r + n*t``.

    Every labeling with values in ``{r + n*t : 0 <= r < n, 0 <= t < t_max}``
    is scored at once with numpy; ``None`` means no proper closed labeling
    in that range.
    """
    size = graph.vertex_count
    base = n * t_max
    grid = np.stack(np.unravel_index(np.arange(base ** size), (base,) * size), axis=1)
    proper = np.ones(len(grid), dtype=bool)
    for u, v in graph.edges():
        proper &= grid[:, u] != grid[:, v]
    sums = []
    for v in range(size):
        sums.append(grid[:, list(graph.closed_neighborhood(v))].sum(axis=1) % n)
    sums = np.stack(sums, axis=1)
    uniform = (sums == sums[:, :1]).all(axis=1)
    ordered = np.sort(grid, axis=1)
    orders = 1 + (np.diff(ordered, axis=1) != 0).sum(axis=1)
    out = {}
    for k in range(n):
        ok = proper & uniform & (sums[:, 0] == k)
        out[k] = int(orders[ok].min()) if ok.any() else None
    return out


def brute_chromatic(graph: Graph) -> int:
    size = graph.vertex_count
    edges = graph.edges()
    for c in range(1, size + 1):
        for colors in itertools.product(range(c), repeat=size):
            if all(colors[u] != colors[v] for u, v in edges):
                return c
    return size


def brute_closed_solutions(matrix, b, n):
    cols = len(matrix[0])
    for x in itertools.product(range(n), repeat=cols):
        if all(sum(a * v for a, v in zip(row, x)) % n == bi % n for row, bi in zip(matrix, b)):
            yield x
