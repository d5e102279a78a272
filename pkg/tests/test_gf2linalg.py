import itertools
import random

import pytest

from multiparity import gf2linalg


def brute_force_solutions(columns, target):
    n = len(columns)
    sols = []
    for bits in itertools.product((0, 1), repeat=n):
        acc = 0
        for b, col in zip(bits, columns):
            if b:
                acc ^= col
        if acc == target:
            sols.append(bits)
    return sols


def as_int(bits):
    return sum(b << i for i, b in enumerate(bits))


@pytest.mark.parametrize("seed", range(40))
def test_solve_against_enumeration(seed):
    rng = random.Random(seed)
    n_cols = rng.randint(1, 7)
    n_rows = rng.randint(1, 9)
    columns = [rng.getrandbits(n_rows) for _ in range(n_cols)]
    if rng.random() < 0.3:
        columns.append(columns[0] ^ columns[-1])
    target = rng.getrandbits(n_rows)
    sols = brute_force_solutions(columns, target)
    x, kernel = gf2linalg.solve(columns, target)
    assert len(kernel) == len(columns) - gf2linalg.rank(columns)
    if not sols:
        assert x is None
        return
    assert x is not None
    assert len(sols) == 2 ** len(kernel)
    best = min(sols)  # tuple order = column 0 most significant
    assert gf2linalg.lex_min(x, kernel) == as_int(best)


def test_kernel_vectors_are_in_null_space():
    columns = [0b0110, 0b0011, 0b0101, 0b1000]
    _, kernel = gf2linalg.solve(columns, 0)
    assert kernel
    for v in kernel:
        acc = 0
        for i, col in enumerate(columns):
            if v >> i & 1:
                acc ^= col
        assert acc == 0


def test_inconsistent_system():
    x, kernel = gf2linalg.solve([0b01, 0b01], 0b10)
    assert x is None
    assert len(kernel) == 1
