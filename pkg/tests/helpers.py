"""Independent oracles and random-instance generators for the test suite.

Everything here deliberately avoids the package's elimination engine:
the dense rank oracle is textbook row reduction on lists of lists, the
exhaustive tau oracle enumerates the entire boundary subspace, and the
survivor enumerator is a plain recursion without memoization.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ratslice.complexes import FilteredComplex
from ratslice.gf2 import SparseMatrixGF2
from ratslice.grid import GridDiagram


# -- dense GF(2) oracle ----------------------------------------------------

def dense_rank(matrix: SparseMatrixGF2) -> int:
    """Row-reduction rank over GF(2) on a dense list-of-lists copy."""
    rows = [[0] * matrix.cols for _ in range(matrix.rows)]
    for r, c in matrix.entries:
        rows[r][c] = 1
    rank = 0
    pivot_row = 0
    for col in range(matrix.cols):
        pivot = None
        for r in range(pivot_row, matrix.rows):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        for r in range(matrix.rows):
            if r != pivot_row and rows[r][col]:
                rows[r] = [a ^ b for a, b in zip(rows[r], rows[pivot_row])]
        rank += 1
        pivot_row += 1
        if pivot_row == matrix.rows:
            break
    return rank


def dense_in_image(matrix: SparseMatrixGF2, support: frozenset[int]) -> bool:
    """Membership via the augmented-rank criterion."""
    augmented = SparseMatrixGF2(
        matrix.rows,
        matrix.cols + 1,
        frozenset(matrix.entries) | {(r, matrix.cols) for r in support},
    )
    return dense_rank(augmented) == dense_rank(matrix)


def random_sparse_matrix(rng: random.Random, rows: int, cols: int) -> SparseMatrixGF2:
    density = rng.choice([0.1, 0.3, 0.5])
    entries = {
        (r, c)
        for r in range(rows)
        for c in range(cols)
        if rng.random() < density
    }
    return SparseMatrixGF2(rows, cols, frozenset(entries))


# -- random filtered complexes ----------------------------------------------

_GRADING_POOL = [
    Fraction(v, d) for d in (1, 2, 4, 9) for v in range(-6, 7)
]


def random_complex(rng: random.Random, max_generators: int = 12) -> FilteredComplex:
    """A random valid filtered complex.

    Built as a direct sum of free generators and cancelling arrow pairs
    with admissible gradings, then disguised by random filtered basis
    changes (x -> x + z with equal Maslov, equal Spin^c and A(z) <= A(x)),
    which preserve every invariant.
    """
    n = rng.randint(1, max_generators)
    spincs = ["0", "1"][: rng.randint(1, 2)]
    maslov = []
    alexander = []
    labels = []
    n_pairs = rng.randint(0, n // 2)
    columns = [0] * n
    for k in range(n_pairs):
        x, y = 2 * k, 2 * k + 1
        label = rng.choice(spincs)
        m = rng.choice(_GRADING_POOL)
        a_top = rng.choice(_GRADING_POOL)
        a_bot = rng.choice([g for g in _GRADING_POOL if g <= a_top])
        maslov += [m, m - 1]
        alexander += [a_top, a_bot]
        labels += [label, label]
        columns[x] = 1 << y
    for i in range(2 * n_pairs, n):
        maslov.append(rng.choice(_GRADING_POOL))
        alexander.append(rng.choice(_GRADING_POOL))
        labels.append(rng.choice(spincs))
    for _ in range(3 * n):
        x = rng.randrange(n)
        candidates = [
            z
            for z in range(n)
            if z != x
            and maslov[z] == maslov[x]
            and labels[z] == labels[x]
            and alexander[z] <= alexander[x]
        ]
        if not candidates:
            continue
        z = rng.choice(candidates)
        columns[x] ^= columns[z]
        for w in range(n):
            if columns[w] >> x & 1:
                columns[w] ^= 1 << z
    generators = [
        (f"g{i}", maslov[i], alexander[i], labels[i]) for i in range(n)
    ]
    differential = {
        f"g{i}": frozenset(
            f"g{j}" for j in range(n) if columns[i] >> j & 1
        )
        for i in range(n)
        if columns[i]
    }
    return FilteredComplex(generators, differential)


def max_alexander(complex_: FilteredComplex, bits: int) -> Fraction:
    """Top Alexander grading over the support of a chain (chain nonzero)."""
    assert bits
    values = [
        complex_.generators[i].alexander
        for i in range(len(complex_.generators))
        if bits >> i & 1
    ]
    return max(values)


def exhaustive_tau(complex_: FilteredComplex, cycle_bits: int) -> Fraction:
    """Brute-force tau: minimum top grading over the entire coset.

    Enumerates every element of the boundary subspace by Gray-coding over
    all subsets of the boundary columns (complexes small enough that 2^n
    is tractable), with no echelon structure involved.
    """
    cols = complex_.boundary_columns
    n = len(cols)
    best = max_alexander(complex_, cycle_bits)
    current = cycle_bits
    for step in range(1, 1 << n):
        flip = (step & -step).bit_length() - 1
        current ^= cols[flip]
        if current:
            value = max_alexander(complex_, current)
            if value < best:
                best = value
    return best


def boundary_subspace_contains(complex_: FilteredComplex, bits: int) -> bool:
    cols = complex_.boundary_columns
    current = 0
    for step in range(1, 1 << len(cols)):
        flip = (step & -step).bit_length() - 1
        current ^= cols[flip]
        if current == bits:
            return True
    return bits == 0


# -- random grids ------------------------------------------------------------

def random_knot_grid(rng: random.Random, n: int) -> GridDiagram:
    """Rejection-sample a valid knot grid of size n."""
    while True:
        x = list(range(n))
        o = list(range(n))
        rng.shuffle(x)
        rng.shuffle(o)
        if any(a == b for a, b in zip(x, o)):
            continue
        grid = GridDiagram(tuple(x), tuple(o))
        if grid.is_knot():
            return grid


# -- grid moves ---------------------------------------------------------------

def _interval(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def commutable_columns(grid: GridDiagram) -> list[int]:
    """Columns i where swapping columns i and i+1 is a legal commutation:
    the two closed vertical marking intervals are nested or disjoint."""
    out = []
    for i in range(grid.n - 1):
        lo1, hi1 = _interval(grid.x_markings[i], grid.o_markings[i])
        lo2, hi2 = _interval(grid.x_markings[i + 1], grid.o_markings[i + 1])
        disjoint = hi1 < lo2 or hi2 < lo1
        nested = (lo1 < lo2 and hi2 < hi1) or (lo2 < lo1 and hi1 < hi2)
        if disjoint or nested:
            out.append(i)
    return out


def commute_columns(grid: GridDiagram, i: int) -> GridDiagram:
    x = list(grid.x_markings)
    o = list(grid.o_markings)
    x[i], x[i + 1] = x[i + 1], x[i]
    o[i], o[i + 1] = o[i + 1], o[i]
    return GridDiagram(tuple(x), tuple(o))


def stabilize(grid: GridDiagram, column: int) -> GridDiagram:
    """Stabilization at the X marking of the given column (X:SW type).

    Splits that column and the X's row; the new 2x2 block holds the X at
    its southwest corner, an O above it, and an X at the northeast.
    """
    n = grid.n
    a = grid.x_markings[column]
    b = grid.o_markings[column]

    def shift_row(r: int) -> int:
        return r if r < a else r + 1

    new_x = [0] * (n + 1)
    new_o = [0] * (n + 1)
    for c in range(n):
        new_c = c if c <= column else c + 1
        if c == column:
            continue
        new_x[new_c] = shift_row(grid.x_markings[c])
        if grid.o_markings[c] == a:
            new_o[new_c] = a
        else:
            new_o[new_c] = shift_row(grid.o_markings[c])
    new_x[column] = a
    new_o[column] = a + 1
    new_x[column + 1] = a + 1
    new_o[column + 1] = shift_row(b)
    return GridDiagram(tuple(new_x), tuple(new_o))


# -- survivor enumeration oracle ----------------------------------------------

def naive_survivors(
    entries: list[tuple[Fraction, Fraction | None, int]], target: int
) -> set[tuple[Fraction, ...]]:
    """Plain recursive outcome enumeration, no memo, order independent."""
    entries = [(a, m, r) for a, m, r in entries if r]

    def expand(vector) -> tuple[Fraction, ...]:
        out = []
        for (a, _, _), count in zip(entries, vector):
            out.extend([a] * count)
        return tuple(sorted(out))

    results: set[tuple[Fraction, ...]] = set()

    def recurse(vector):
        if sum(vector) == target:
            results.add(expand(vector))
            return
        for hi in range(len(entries)):
            for lo in range(len(entries)):
                if entries[hi][0] <= entries[lo][0]:
                    continue
                m_hi, m_lo = entries[hi][1], entries[lo][1]
                if m_hi is not None and m_lo is not None and m_hi != m_lo + 1:
                    continue
                if vector[hi] and vector[lo]:
                    nxt = list(vector)
                    nxt[hi] -= 1
                    nxt[lo] -= 1
                    recurse(tuple(nxt))

    recurse(tuple(r for _, _, r in entries))
    return results
