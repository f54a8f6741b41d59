"""Ground-truth computations for closed colourings.

A closed colouring with remainder ``k mod n`` is an integer labelling whose
sum over every closed neighbourhood is ``k mod n``. Existence is a linear
system over Z_n. The minimum order of a *proper* one is found by
enumerating residue solutions and lifting each optimally: vertices sharing a
residue ``r`` must receive distinct integers ``r + n*t`` exactly when they
are adjacent, so the cheapest lift costs ``chi(G[V_r])`` labels per class.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .graphs import Graph
from .zmod import SnfDecomposition, SolutionSpace, enumerate_solutions, smith_normal_form, solve_mod_linear

EXISTS = "exists"
NOT_EXISTS = "not-exists"
UNKNOWN = "unknown"

DEFAULT_ENUMERATION_CAP = 10 ** 6
DEFAULT_CHROMATIC_BOUND = 64
DEFAULT_IEDS_BOUND = 64


class ResourceLimit(RuntimeError):
    """A configured size bound was exceeded."""


@dataclass(frozen=True)
class Labeling:
    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        object.__setattr__(self, "values", tuple(int(v) for v in values))

    @property
    def order(self) -> int:
        return len(set(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> int:
        return self.values[v]


@dataclass(frozen=True)
class Verdict:
    status: str
    source: str
    value: int | None = None
    witness: Labeling | None = None

    @classmethod
    def exists(cls, value: int | None, source: str, witness: Labeling | None = None) -> "Verdict":
        return cls(EXISTS, source, value, witness)

    @classmethod
    def not_exists(cls, source: str) -> "Verdict":
        return cls(NOT_EXISTS, source)

    @classmethod
    def unknown(cls, source: str, value: int | None = None,
                witness: Labeling | None = None) -> "Verdict":
        return cls(UNKNOWN, source, value, witness)

    @property
    def is_exists(self) -> bool:
        return self.status == EXISTS

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN


@dataclass(frozen=True)
class VerifyReport:
    proper: bool
    closed_ok: bool
    order: int
    first_violation: str | None = None

    @property
    def ok(self) -> bool:
        return self.proper and self.closed_ok


# ---------------------------------------------------------------------------
# closed system


def closed_matrix(graph: Graph) -> list[list[int]]:
    """Adjacency matrix plus identity: row ``v`` marks ``N[v]``."""
    size = graph.vertex_count
    rows = []
    for v in range(size):
        row = [0] * size
        row[v] = 1
        for w in graph.adjacency[v]:
            row[w] = 1
        rows.append(row)
    return rows


@lru_cache(maxsize=512)
def _closed_snf(graph: Graph) -> SnfDecomposition:
    return smith_normal_form(closed_matrix(graph))


def closed_sums(graph: Graph, values: Sequence[int]) -> list[int]:
    return [values[v] + sum(values[w] for w in graph.adjacency[v]) for v in range(graph.vertex_count)]


def verify_labeling(graph: Graph, labeling: Labeling | Sequence[int], n: int, k: int) -> VerifyReport:
    values = labeling.values if isinstance(labeling, Labeling) else tuple(labeling)
    if len(values) != graph.vertex_count:
        raise ValueError(f"labeling has {len(values)} values for {graph.vertex_count} vertices")
    if n < 1:
        raise ValueError("modulus must be positive")
    violation = None
    proper = True
    for u, v in graph.edges():
        if values[u] == values[v]:
            proper = False
            violation = violation or f"edge ({u}, {v}) has equal labels {values[u]}"
            break
    closed_ok = True
    for v, total in enumerate(closed_sums(graph, values)):
        if (total - k) % n:
            closed_ok = False
            violation = violation or (
                f"closed sum at vertex {v} is {total} = {total % n} (mod {n}), expected {k % n}")
            break
    return VerifyReport(proper, closed_ok, len(set(values)), violation)


def exists_closed_coloring(graph: Graph, n: int, k: int) -> SolutionSpace | None:
    """Residue solutions of the closed system, or ``None`` if there are none.

    By the lifting argument a proper closed colouring exists exactly when any
    closed colouring does, so this decides existence.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    if graph.vertex_count == 0:
        return SolutionSpace(n, (), (), independent=True)
    return solve_mod_linear(closed_matrix(graph), [k % n] * graph.vertex_count, n,
                            snf=_closed_snf(graph))


# ---------------------------------------------------------------------------
# exact chromatic number (bitmask branch and bound)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _degeneracy_order(masks: Sequence[int], subset: int) -> list[int]:
    """Smallest-last order, reversed so high-core vertices come first."""
    remaining = subset
    removed = []
    while remaining:
        best, best_deg = -1, None
        for v in _bits(remaining):
            deg = bin(masks[v] & remaining).count("1")
            if best_deg is None or deg < best_deg:
                best, best_deg = v, deg
        removed.append(best)
        remaining &= ~(1 << best)
    return removed[::-1]


def _greedy(masks: Sequence[int], order: list[int]) -> dict[int, int]:
    colors: dict[int, int] = {}
    for v in order:
        taken = {colors[w] for w in _bits(masks[v]) if w in colors}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    return colors


def _greedy_clique(masks: Sequence[int], order: list[int], subset: int) -> int:
    best = 1
    for start in order:
        clique = 1 << start
        cand = masks[start] & subset
        size = 1
        for v in order:
            if cand >> v & 1:
                clique |= 1 << v
                cand &= masks[v]
                size += 1
        best = max(best, size)
    return best


def _k_color(masks: Sequence[int], order: list[int], k: int) -> dict[int, int] | None:
    """Backtracking k-colouring in a fixed vertex order with forward checking."""
    pos = {v: i for i, v in enumerate(order)}
    colors: dict[int, int] = {}
    forbidden = {v: 0 for v in order}  # bitmask of colours used by coloured neighbours

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        limit = min(used + 1, k)
        for c in range(limit):
            if forbidden[v] >> c & 1:
                continue
            touched = []
            dead = False
            for w in _bits(masks[v]):
                if w in pos and w not in colors and not forbidden[w] >> c & 1:
                    forbidden[w] |= 1 << c
                    touched.append(w)
                    if forbidden[w] == (1 << k) - 1:
                        dead = True
            colors[v] = c
            if not dead and rec(i + 1, max(used, c + 1)):
                return True
            del colors[v]
            for w in touched:
                forbidden[w] &= ~(1 << c)
        return False

    return dict(colors) if rec(0, 0) else None


def _color_subset(masks: Sequence[int], subset: int) -> tuple[int, dict[int, int]]:
    verts = _bits(subset)
    if not verts:
        return 0, {}
    sub = [m & subset for m in masks]
    if all(sub[v] == 0 for v in verts):
        return 1, {v: 0 for v in verts}
    order = _degeneracy_order(sub, subset)
    best = _greedy(sub, order)
    upper = max(best.values()) + 1
    lower = _greedy_clique(sub, order, subset)
    for k in range(lower, upper):
        found = _k_color(sub, order, k)
        if found is not None:
            return k, found
    return upper, best


def optimal_coloring(graph: Graph, bound: int = DEFAULT_CHROMATIC_BOUND) -> list[int]:
    """A proper colouring with colours ``0..chi-1``."""
    if graph.vertex_count > bound:
        raise ResourceLimit(f"{graph.vertex_count} vertices exceeds chromatic bound {bound}")
    _, colors = _color_subset(graph.masks(), (1 << graph.vertex_count) - 1)
    return [colors[v] for v in range(graph.vertex_count)]


def exact_chromatic_number(graph: Graph, bound: int = DEFAULT_CHROMATIC_BOUND) -> int:
    coloring = optimal_coloring(graph, bound)
    return max(coloring) + 1 if coloring else 0


# ---------------------------------------------------------------------------
# minimum order via residue lifting


def _check_residue_solution(graph: Graph, x: Sequence[int], n: int) -> None:
    if len(x) != graph.vertex_count:
        raise ValueError("residue tuple length does not match vertex count")
    sums = {s % n for s in closed_sums(graph, x)}
    if len(sums) > 1:
        raise ValueError("residue tuple is not a closed colouring for any remainder")


def _classes(x: Sequence[int], n: int) -> dict[int, int]:
    classes: dict[int, int] = {}
    for v, r in enumerate(x):
        r %= n
        classes[r] = classes.get(r, 0) | (1 << v)
    return classes


def min_order_for_residue_solution(graph: Graph, x: Sequence[int], n: int,
                                   bound: int = DEFAULT_CHROMATIC_BOUND) -> int:
    """Fewest labels of any integer labelling congruent to ``x`` that is proper."""
    _check_residue_solution(graph, x, n)
    if graph.vertex_count > bound:
        raise ResourceLimit(f"{graph.vertex_count} vertices exceeds chromatic bound {bound}")
    masks = graph.masks()
    return sum(_color_subset(masks, cls)[0] for cls in _classes(x, n).values())


def lift_residue_solution(graph: Graph, x: Sequence[int], n: int) -> Labeling:
    """The optimal lift: ``x_v mod n + n * colour`` inside each residue class."""
    masks = graph.masks()
    values = [0] * graph.vertex_count
    for r, cls in _classes(x, n).items():
        _, colors = _color_subset(masks, cls)
        for v, c in colors.items():
            values[v] = r + n * c
    return Labeling(values)


def closed_chromatic_number(
    graph: Graph,
    n: int,
    k: int,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
    chromatic_bound: int = DEFAULT_CHROMATIC_BOUND,
    deadline: float | None = None,
) -> Verdict:
    """Exact ``chi_{n,k}`` by minimising the lift cost over residue solutions.

    Solutions are scanned in enumeration order and the first one of least
    cost supplies the witness. The scan stops early once the cost reaches
    ``chi(G)``, which no proper labelling can beat. If the scan is cut short
    (by ``enumeration_cap`` or the monotonic-clock ``deadline``) before that,
    the verdict is unknown and carries the best upper bound found so far.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    k %= n
    if graph.vertex_count > chromatic_bound:
        return Verdict.unknown(f"resource: {graph.vertex_count} vertices exceeds chromatic bound")
    masks = graph.masks()
    full = (1 << graph.vertex_count) - 1
    chi, base = _color_subset(masks, full)
    if n == 1:
        return Verdict.exists(chi, "oracle", Labeling(base[v] for v in range(graph.vertex_count)))

    space = exists_closed_coloring(graph, n, k)
    if space is None:
        return Verdict.not_exists("oracle")

    memo: dict[int, int] = {}

    def cost(cls: int) -> int:
        if cls not in memo:
            memo[cls] = _color_subset(masks, cls)[0]
        return memo[cls]

    best, best_x = None, None
    walk = enumerate_solutions(space, enumeration_cap)
    out_of_time = False
    for count, x in enumerate(walk):
        if deadline is not None and count % 512 == 0 and time.monotonic() > deadline:
            out_of_time = True
            break
        classes = _classes(x, n)
        if best is not None and len(classes) >= best:
            continue
        total = 0
        for cls in classes.values():
            total += cost(cls)
            if best is not None and total >= best:
                break
        else:
            best, best_x = total, x
            if best == chi:
                break

    witness = lift_residue_solution(graph, best_x, n) if best_x is not None else None
    if best == chi or not (walk.truncated or out_of_time):
        return Verdict.exists(best, "oracle", witness)
    reason = "budget" if out_of_time else "cap"
    bound = f": upper bound {best}" if best is not None else ""
    return Verdict.unknown(f"{reason}{bound}", best, witness)


# ---------------------------------------------------------------------------
# independent efficient dominating sets


def is_ieds(graph: Graph, subset: Iterable[int]) -> bool:
    chosen = set(subset)
    if any(not 0 <= v < graph.vertex_count for v in chosen):
        raise ValueError("subset contains a vertex outside the graph")
    return all(len(chosen.intersection(graph.closed_neighborhood(v))) == 1
               for v in range(graph.vertex_count))


def find_ieds(graph: Graph, bound: int = DEFAULT_IEDS_BOUND) -> tuple[int, ...] | None:
    """Lexicographically least IEDS, or ``None``.

    Exact-cover backtracking over vertices in index order, trying inclusion
    first; a vertex is abandoned as soon as every member of its closed
    neighbourhood has been decided without covering it.
    """
    size = graph.vertex_count
    if size > bound:
        raise ResourceLimit(f"{size} vertices exceeds IEDS bound {bound}")
    if size == 0:
        return ()
    closed = [m | (1 << v) for v, m in enumerate(graph.masks())]
    due: list[list[int]] = [[] for _ in range(size)]
    for v in range(size):
        due[max(graph.closed_neighborhood(v))].append(v)
    chosen: list[int] = []

    def settled(v: int, covered: int) -> bool:
        return all(covered >> u & 1 for u in due[v])

    def rec(v: int, covered: int) -> bool:
        if v == size:
            return True
        if not covered & closed[v]:
            grown = covered | closed[v]
            if settled(v, grown):
                chosen.append(v)
                if rec(v + 1, grown):
                    return True
                chosen.pop()
        return settled(v, covered) and rec(v + 1, covered)

    return tuple(chosen) if rec(0, 0) else None


def coloring_from_ieds(graph: Graph, ieds: Iterable[int], n: int, k: int,
                       bound: int = DEFAULT_CHROMATIC_BOUND) -> Labeling:
    """Closed colouring from an IEDS: ``k`` on the set, multiples of ``n`` above ``k`` elsewhere.

    Off the set, an optimal proper colouring is relabelled in order of first
    appearance with ``n*q, n*(q+1), ...`` where ``n*q`` is the least multiple
    of ``n`` exceeding ``k``.
    """
    chosen = set(ieds)
    if not is_ieds(graph, chosen):
        raise ValueError("vertex set is not an independent efficient dominating set")
    if n < 1:
        raise ValueError("modulus must be positive")
    coloring = optimal_coloring(graph, bound)
    first = k // n + 1
    rename: dict[int, int] = {}
    values = []
    for v in range(graph.vertex_count):
        if v in chosen:
            values.append(k)
        else:
            c = rename.setdefault(coloring[v], len(rename))
            values.append(n * (first + c))
    return Labeling(values)


# ---------------------------------------------------------------------------
# open-question probes


@dataclass(frozen=True)
class AdditivityRecord:
    n: int
    k1: int
    k2: int
    lhs: Verdict
    first: Verdict
    second: Verdict
    rhs_sum: int | None
    subadditive: bool | None


def probe_additivity(graph: Graph, n: int, k1: int, k2: int,
                     enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> AdditivityRecord:
    """Compare ``chi_{n,k1+k2}`` with ``chi_{n,k1} + chi_{n,k2}``.

    A ``False`` in ``subadditive`` would be a counterexample to the
    additivity question; ``None`` means the comparison does not apply.
    """
    first = closed_chromatic_number(graph, n, k1, enumeration_cap)
    second = closed_chromatic_number(graph, n, k2, enumeration_cap)
    lhs = closed_chromatic_number(graph, n, k1 + k2, enumeration_cap)
    rhs_sum = subadditive = None
    if first.is_exists and second.is_exists:
        rhs_sum = first.value + second.value
        if lhs.is_exists:
            subadditive = lhs.value <= rhs_sum
    return AdditivityRecord(n, k1, k2, lhs, first, second, rhs_sum, subadditive)


@dataclass(frozen=True)
class IedsRecord:
    ieds: tuple[int, ...] | None
    chromatic: int
    moduli_checked: int
    all_exist: bool
    failing_modulus: int | None


def probe_ieds_question(graph: Graph, n_max: int) -> IedsRecord:
    """Evidence for the IEDS question on one graph.

    Existence for every ``k`` is equivalent to existence for ``k = 1``, so
    only ``chi_{n,1}`` is checked for ``n = 1..n_max``.
    """
    failing = None
    for n in range(1, n_max + 1):
        if exists_closed_coloring(graph, n, 1) is None:
            failing = n
            break
    return IedsRecord(find_ieds(graph), exact_chromatic_number(graph), n_max,
                      failing is None, failing)
