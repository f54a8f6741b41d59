"""Finite simple graphs, the parameterised families, and torus quotients.

Vertex orders are fixed per family so that witnesses are reproducible:

* ``complete``/``path``/``cycle``: ``0..m-1`` in the natural order.
* ``star``: centre ``0``, leaves ``1..m``.
* ``friendship``: hub ``0``; triangle ``i`` is ``(0, 2i+1, 2i+2)``.
* ``bipartite:i,j``: first part ``0..i-1``, second part ``i..i+j-1``.
* ``caterpillar:m1,m2``: ``x = 0``, ``y = 1``, then the ``m1`` legs of ``x``,
  then the ``m2`` legs of ``y``.
* ``binary-tree:d``: level order from the root, children of ``v`` are
  ``2v+1`` and ``2v+2``; levels ``0..d``.
* ``petersen:m,j``: exterior ``v_i = i``, interior ``u_i = m + i``.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    vertex_names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise ValueError("adjacency length does not match vertex count")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbours of {v} must be sorted and distinct")
            for w in nbrs:
                if not 0 <= w < self.vertex_count:
                    raise ValueError(f"vertex index {w} out of range")
                if w == v:
                    raise ValueError(f"self-loop at {v}")
                if v not in self.adjacency[w]:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]],
                   names: Sequence[str] | None = None) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {vertex_count} vertices")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(vertex_count, tuple(tuple(sorted(s)) for s in nbrs),
                   tuple(names) if names is not None else None)

    def edges(self) -> list[tuple[int, int]]:
        return [(v, w) for v, nbrs in enumerate(self.adjacency) for w in nbrs if v < w]

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def closed_neighborhood(self, v: int) -> tuple[int, ...]:
        return tuple(sorted((v, *self.adjacency[v])))

    def regular_degree(self) -> int | None:
        """Common degree if the graph is regular, else ``None``."""
        degrees = {len(nbrs) for nbrs in self.adjacency}
        return degrees.pop() if len(degrees) == 1 else None

    def is_bipartite(self) -> bool:
        side = [-1] * self.vertex_count
        for root in range(self.vertex_count):
            if side[root] >= 0:
                continue
            side[root] = 0
            stack = [root]
            while stack:
                v = stack.pop()
                for w in self.adjacency[v]:
                    if side[w] < 0:
                        side[w] = 1 - side[v]
                        stack.append(w)
                    elif side[w] == side[v]:
                        return False
        return True

    def induced(self, vertices: Iterable[int]) -> "Graph":
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        adj = tuple(tuple(sorted(index[w] for w in self.adjacency[v] if w in index)) for v in keep)
        return Graph(len(keep), adj)

    def masks(self) -> list[int]:
        """Neighbourhood bitmasks, one int per vertex."""
        out = []
        for nbrs in self.adjacency:
            m = 0
            for w in nbrs:
                m |= 1 << w
            out.append(m)
        return out


# ---------------------------------------------------------------------------
# family descriptors

FINITE_KINDS = (
    "complete", "star", "friendship", "path", "cycle", "bipartite",
    "caterpillar", "binary-tree", "petersen",
)
SYMBOLIC_KINDS = ("mary-tree", "tiling")
_ARITY = {
    "complete": 1, "star": 1, "friendship": 1, "path": 1, "cycle": 1,
    "bipartite": 2, "caterpillar": 2, "binary-tree": 1, "petersen": 2,
    "mary-tree": 1, "tiling": 1,
}
_ALIASES = {
    "k": "complete", "complete-bipartite": "bipartite", "kij": "bipartite",
    "binary": "binary-tree", "perfect-binary-tree": "binary-tree",
    "mary": "mary-tree", "gp": "petersen",
}
TILINGS = (3, 4, 6)


@dataclass(frozen=True)
class Family:
    """A family instance such as ``Family('petersen', (7, 2))``.

    ``kind == 'arbitrary'`` wraps an explicit graph; ``tiling`` takes the
    polygon size 3, 4 or 6 as its parameter.
    """

    kind: str
    params: tuple[int, ...] = ()
    graph: Graph | None = field(default=None, compare=False)

    def __post_init__(self):
        kind, p = self.kind, self.params
        if kind == "arbitrary":
            if self.graph is None:
                raise ValueError("arbitrary family needs a graph")
            return
        if kind not in _ARITY:
            raise ValueError(f"unknown family {kind!r}")
        if len(p) != _ARITY[kind]:
            raise ValueError(f"{kind} takes {_ARITY[kind]} parameter(s), got {len(p)}")
        if kind == "cycle" and p[0] < 3:
            raise ValueError("cycle needs m >= 3")
        elif kind == "petersen":
            m, j = p
            if m < 3 or not 1 <= j < m / 2:
                raise ValueError("petersen needs m >= 3 and 1 <= j < m/2")
        elif kind == "tiling":
            if p[0] not in TILINGS:
                raise ValueError("tiling must be r3, r4 or r6")
        elif any(x < 1 for x in p):
            raise ValueError(f"{kind} parameters must be >= 1")

    @property
    def finite(self) -> bool:
        return self.kind not in SYMBOLIC_KINDS

    def __str__(self) -> str:
        if self.kind == "arbitrary":
            return "arbitrary"
        if self.kind == "tiling":
            return f"tiling:r{self.params[0]}"
        return f"{self.kind}:{','.join(map(str, self.params))}"


def parse_family(text: str) -> Family:
    """Parse ``name[:p1[,p2]]``, e.g. ``petersen:7,2`` or ``tiling:r4``."""
    name, _, rest = text.strip().lower().partition(":")
    name = _ALIASES.get(name, name)
    if name == "tiling":
        m = re.fullmatch(r"r?([346])", rest)
        if not m:
            raise ValueError(f"bad tiling {rest!r}; use r3, r4 or r6")
        return Family("tiling", (int(m.group(1)),))
    if name in ("r3", "r4", "r6"):
        return Family("tiling", (int(name[1]),))
    try:
        params = tuple(int(x) for x in rest.split(",")) if rest else ()
    except ValueError:
        raise ValueError(f"bad family parameters in {text!r}") from None
    return Family(name, params)


def build_family(desc: Family) -> Graph:
    kind, p = desc.kind, desc.params
    if kind == "arbitrary":
        return desc.graph
    if not desc.finite:
        raise ValueError(f"{desc} is not finitely realizable")
    if kind == "complete":
        m = p[0]
        return Graph.from_edges(m, ((a, b) for a in range(m) for b in range(a + 1, m)))
    if kind == "star":
        return Graph.from_edges(p[0] + 1, ((0, i) for i in range(1, p[0] + 1)))
    if kind == "friendship":
        m = p[0]
        edges = []
        for i in range(m):
            a, b = 2 * i + 1, 2 * i + 2
            edges += [(0, a), (0, b), (a, b)]
        return Graph.from_edges(2 * m + 1, edges)
    if kind == "path":
        m = p[0]
        return Graph.from_edges(m, ((i, i + 1) for i in range(m - 1)))
    if kind == "cycle":
        m = p[0]
        return Graph.from_edges(m, ((i, (i + 1) % m) for i in range(m)))
    if kind == "bipartite":
        i, j = p
        return Graph.from_edges(i + j, ((a, i + b) for a in range(i) for b in range(j)))
    if kind == "caterpillar":
        m1, m2 = p
        edges = [(0, 1)]
        edges += [(0, 2 + t) for t in range(m1)]
        edges += [(1, 2 + m1 + t) for t in range(m2)]
        return Graph.from_edges(2 + m1 + m2, edges)
    if kind == "binary-tree":
        size = 2 ** (p[0] + 1) - 1
        return Graph.from_edges(size, ((v, c) for v in range(size)
                                       for c in (2 * v + 1, 2 * v + 2) if c < size))
    if kind == "petersen":
        m, j = p
        edges = []
        for i in range(m):
            edges.append((i, (i + 1) % m))
            edges.append((i, m + i))
            edges.append((m + i, m + (i + j) % m))
        names = [f"v{i}" for i in range(m)] + [f"u{i}" for i in range(m)]
        return Graph.from_edges(2 * m, edges, names)
    raise AssertionError(kind)


def binary_tree_levels(d: int) -> list[int]:
    """Depth of each vertex of ``binary-tree:d`` (root has depth 0)."""
    return [(v + 1).bit_length() - 1 for v in range(2 ** (d + 1) - 1)]


# ---------------------------------------------------------------------------
# torus quotients of the regular plane tilings
#
# All three use an a-by-b grid of cells indexed (x, y) -> y * width + x,
# wrapped in both directions.
#   r4: square grid, width a, height b; neighbours (x+-1, y), (x, y+-1).
#   r3: triangular lattice on the same grid plus the diagonal (x+1, y-1),
#       (x-1, y+1).
#   r6: brick-wall hexagonal lattice of width 2a and height 2b; every vertex
#       has (x+-1, y) and one vertical neighbour, (x, y+1) when x + y is
#       even and (x, y-1) otherwise.

_TORUS_MIN = {3: 4, 4: 3, 6: 2}


def torus_dimensions(tiling: int, a: int, b: int) -> tuple[int, int]:
    if tiling not in TILINGS:
        raise ValueError("tiling must be 3, 4 or 6")
    low = _TORUS_MIN[tiling]
    if a < low or b < low:
        reason = {
            3: "r3 needs a, b >= 4 so the six neighbours stay distinct and non-wrapping",
            4: "r4 needs a, b >= 3 so the four neighbours stay distinct",
            6: "r6 needs a, b >= 2 hexagon cells so the brick wall closes up",
        }[tiling]
        raise ValueError(f"torus too small: {reason}")
    return (2 * a, 2 * b) if tiling == 6 else (a, b)


def build_torus_quotient(tiling: int, a: int, b: int) -> Graph:
    width, height = torus_dimensions(tiling, a, b)

    def idx(x: int, y: int) -> int:
        return (y % height) * width + (x % width)

    edges = []
    for y in range(height):
        for x in range(width):
            v = idx(x, y)
            if tiling == 6:
                edges.append((v, idx(x + 1, y)))
                if (x + y) % 2 == 0:
                    edges.append((v, idx(x, y + 1)))
            else:
                edges += [(v, idx(x + 1, y)), (v, idx(x, y + 1))]
                if tiling == 3:
                    edges.append((v, idx(x + 1, y - 1)))
    return Graph.from_edges(width * height, edges)


def torus_classes(tiling: int, a: int, b: int) -> list[int]:
    """Proper colour class of each quotient vertex, in ``range(chi(tiling))``.

    Raises ``ValueError`` when the period does not respect the classes:
    r4 needs even ``a`` and ``b``, r3 needs ``3 | a`` and ``3 | b``; r6
    quotients are always bipartite.
    """
    width, height = torus_dimensions(tiling, a, b)
    if tiling == 4 and (a % 2 or b % 2):
        raise ValueError("r4 checkerboard classes need even a and b")
    if tiling == 3 and (a % 3 or b % 3):
        raise ValueError("r3 three-class colouring needs 3 | a and 3 | b")
    out = []
    for y in range(height):
        for x in range(width):
            out.append((x - y) % 3 if tiling == 3 else (x + y) % 2)
    return out


# ---------------------------------------------------------------------------
# edge-list text format


def read_edge_list(text: str) -> Graph:
    """Parse the edge-list format: vertex count, then one ``u v`` per line.

    Blank lines and lines starting with ``#`` are ignored. Duplicate edges
    are collapsed with a warning.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((lineno, line))
    if not lines:
        raise ValueError("edge list is empty; the first line must be the vertex count")
    lineno, first = lines[0]
    try:
        count = int(first)
    except ValueError:
        raise ValueError(f"line {lineno}: expected vertex count, got {first!r}") from None
    if count < 0:
        raise ValueError(f"line {lineno}: negative vertex count")
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if u == v:
            raise ValueError(f"line {lineno}: self-loop at {u}")
        if not (0 <= u < count and 0 <= v < count):
            raise ValueError(f"line {lineno}: vertex index out of range 0..{count - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            warnings.warn(f"line {lineno}: duplicate edge {key} ignored", stacklevel=2)
            continue
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(count, edges)


def write_edge_list(graph: Graph) -> str:
    lines = [str(graph.vertex_count)]
    lines += [f"{u} {v}" for u, v in graph.edges()]
    return "\n".join(lines) + "\n"
