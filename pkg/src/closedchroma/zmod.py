"""Exact integer linear algebra and linear congruence systems.

Matrices are plain lists of rows of Python ints, so every computation is
exact. The Smith normal form drives solvability and the full
parameterisation of ``A x = b (mod n)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterator, NamedTuple, Sequence

Matrix = list[list[int]]


def identity(size: int) -> Matrix:
    return [[int(i == j) for j in range(size)] for i in range(size)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a or not b:
        raise ValueError("empty matrix")
    if len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} times {len(b)}x{len(b[0])}")
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def matvec(a: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(c * v for c, v in zip(row, x)) for row in a]


def _shape(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    if not m or not m[0]:
        raise ValueError("matrix must be nonempty")
    cols = len(m[0])
    if any(len(row) != cols for row in m):
        raise ValueError("ragged matrix")
    return len(m), cols


class SnfDecomposition(NamedTuple):
    """``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0])))]


def smith_normal_form(m: Sequence[Sequence[int]]) -> SnfDecomposition:
    """Smith normal form of an integer matrix.

    The pivot at each stage is the nonzero entry of smallest absolute value
    in the trailing block (ties broken by row-major index), which makes the
    decomposition deterministic. The diagonal is nonnegative with
    ``d_1 | d_2 | ...`` and zeros trailing.

    >>> smith_normal_form([[2, 4], [6, 8]]).diagonal
    [2, 4]
    """
    rows, cols = _shape(m)
    s = [[int(x) for x in row] for row in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            s[i], s[j] = s[j], s[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in s:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        s[dst] = [a + q * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = s[i][j]
                    if x and (pivot is None or abs(x) < abs(s[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return SnfDecomposition(u, s, v)
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = s[t][t]
            clean = True
            for i in range(t + 1, rows):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
                    clean = clean and s[i][t] == 0
            for j in range(t + 1, cols):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
                    clean = clean and s[t][j] == 0
            if not clean:
                continue
            offender = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if s[i][j] % p),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return SnfDecomposition(u, s, v)


@dataclass(frozen=True)
class SolutionSpace:
    """Affine solution set ``particular + span(kernel generators)`` over Z_n.

    ``kernel`` holds ``(generator, order)`` pairs. When ``independent`` is
    set, distinct coefficient vectors give distinct solutions, so the
    solution count is the product of the orders.
    """

    modulus: int
    particular: tuple[int, ...]
    kernel: tuple[tuple[tuple[int, ...], int], ...]
    independent: bool = False

    @property
    def size_bound(self) -> int:
        out = 1
        for _, order in self.kernel:
            out *= order
        return out

    def contains(self, a: Sequence[Sequence[int]], b: Sequence[int], x: Sequence[int]) -> bool:
        n = self.modulus
        return all((lhs - rhs) % n == 0 for lhs, rhs in zip(matvec(a, x), b))


def solve_mod_linear(
    a: Sequence[Sequence[int]],
    b: Sequence[int],
    n: int,
    snf: SnfDecomposition | None = None,
) -> SolutionSpace | None:
    """Solve ``a @ x = b (mod n)``; return ``None`` when there is no solution.

    A precomputed Smith decomposition of ``a`` may be passed in, which makes
    repeated solves against the same matrix cheap.

    >>> solve_mod_linear([[4]], [1], 5).particular
    (4,)
    >>> solve_mod_linear([[2]], [1], 4) is None
    True
    """
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    rows, cols = _shape(a)
    if len(b) != rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {rows}")
    u, s, v = snf if snf is not None else smith_normal_form(a)
    if len(u) != rows or len(v) != cols:
        raise ValueError("decomposition does not match the matrix shape")

    # With y = V^-1 x the system decouples into d_i * y_i = c_i (mod n).
    c = [x % n for x in matvec(u, b)]
    y0 = [0] * cols
    steps: list[tuple[int, int]] = []  # (coordinate, number of solutions mod n)
    for i in range(rows):
        d = s[i][i] if i < cols else 0
        g = gcd(d, n)
        if c[i] % g:
            return None
        if i >= cols:
            continue
        step = n // g
        if step > 1:
            y0[i] = (c[i] // g) * pow((d // g) % step, -1, step) % step
        if g > 1:
            steps.append((i, g))
    for i in range(rows, cols):
        steps.append((i, n))

    particular = tuple(x % n for x in matvec(v, y0))
    kernel = []
    for i, order in steps:
        scale = n // order
        kernel.append((tuple(scale * row[i] % n for row in v), order))
    return SolutionSpace(n, particular, tuple(kernel), independent=True)


class Enumeration:
    """Lazy, duplicate-free walk over a solution space, stopping at ``cap``.

    After iteration finishes, ``truncated`` tells whether solutions were left
    unvisited and ``count`` how many were produced.
    """

    def __init__(self, space: SolutionSpace, cap: int):
        if cap < 1:
            raise ValueError("cap must be at least 1")
        self.space = space
        self.cap = cap
        self.count = 0
        self.truncated = False

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        space = self.space
        n = space.modulus
        gens = [g for g, _ in space.kernel]
        orders = [o for _, o in space.kernel]
        seen: set[tuple[int, ...]] | None = None if space.independent else set()
        self.count = 0
        self.truncated = False
        # last generator varies fastest; the first tuple is the particular solution
        for coeffs in itertools.product(*(range(o) for o in orders)):
            x = list(space.particular)
            for c, g in zip(coeffs, gens):
                if c:
                    for idx, gv in enumerate(g):
                        x[idx] += c * gv
            sol = tuple(val % n for val in x)
            if seen is not None:
                if sol in seen:
                    continue
                seen.add(sol)
            if self.count == self.cap:
                self.truncated = True
                return
            self.count += 1
            yield sol


def enumerate_solutions(space: SolutionSpace, cap: int) -> Enumeration:
    return Enumeration(space, cap)
