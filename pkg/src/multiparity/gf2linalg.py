"""GF(2) linear systems with int bitsets.

Vectors are Python ints.  A system is given by its columns: column ``i`` is
an int whose bit ``r`` is the entry in row ``r``.  Solutions are ints over
the column indices.  Column 0 is treated as the most significant position
when choosing a lexicographically minimal solution.
"""

from __future__ import annotations

from typing import List, Optional, Tuple


def _low_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def solve(columns: List[int], target: int) -> Tuple[Optional[int], List[int]]:
    """Solve ``sum x_i * columns[i] = target`` over GF(2).

    Returns ``(x, kernel)`` where ``x`` is one solution (``None`` if the
    system is inconsistent) and ``kernel`` is a basis of the null space.
    """
    pivots = {}  # row -> (reduced column, combination of original columns)
    kernel = []
    for i, col in enumerate(columns):
        v, combo = col, 1 << i
        while v:
            p = _low_bit(v)
            if p not in pivots:
                pivots[p] = (v, combo)
                break
            pv, pc = pivots[p]
            v ^= pv
            combo ^= pc
        else:
            kernel.append(combo)
    v, combo = target, 0
    while v:
        p = _low_bit(v)
        if p not in pivots:
            return None, kernel
        pv, pc = pivots[p]
        v ^= pv
        combo ^= pc
    return combo, kernel


def rank(columns: List[int]) -> int:
    _, kernel = solve(columns, 0)
    return len(columns) - len(kernel)


def _rref_by_index(kernel: List[int]) -> List[Tuple[int, int]]:
    """Reduced echelon form with pivots at the lowest column index."""
    basis = []
    for v in kernel:
        for p, b in basis:
            if v >> p & 1:
                v ^= b
        if not v:
            continue
        p = _low_bit(v)
        basis = [(q, b ^ v if b >> p & 1 else b) for q, b in basis]
        basis.append((p, v))
    return sorted(basis)


def lex_min(x: int, kernel: List[int]) -> int:
    """Lexicographically smallest element of the coset ``x + span(kernel)``.

    Comparison reads the solution as a bit string from column 0 upward, with
    0 < 1 at the first differing column.
    """
    for p, b in _rref_by_index(kernel):
        if x >> p & 1:
            x ^= b
    return x
