import numpy as np
import pytest

from dictblock.dictionary import DataItem, Dictionary


def random_dictionary(rng, n, s0, fill=0.6, complex_values=True):
    """Random valid (injective, disjoint) dictionary; items may be partial."""
    dim = 1 << n
    if s0 > dim * dim:
        raise ValueError("more items than coordinates")
    used = set()
    items = []
    for k in range(s0):
        perm = rng.permutation(dim)
        pairs = []
        for j in range(dim):
            i = int(perm[j])
            # keep one free coordinate for every item still to come
            spare = dim * dim - len(used) - 1 > s0 - k - 1
            if rng.random() < fill and (i, j) not in used and spare:
                used.add((i, j))
                pairs.append((j, i))
        if not pairs:
            free = [(i, j) for i in range(dim) for j in range(dim) if (i, j) not in used]
            i, j = free[rng.integers(len(free))]
            used.add((i, j))
            pairs.append((j, i))
        v = rng.normal() + (1j * rng.normal() if complex_values else 0)
        items.append(DataItem(v, pairs))
    return Dictionary(n, items)


def xor_shift_dictionary(rng, n, s0):
    dim = 1 << n
    masks = rng.choice(dim, size=min(s0, dim), replace=False)
    items = [DataItem(rng.normal() + 1j * rng.normal(), [(j, j ^ int(t)) for j in range(dim)]) for t in masks]
    return Dictionary(n, items)


def random_symmetric(rng, n, density=0.5, levels=3):
    """Non-negative symmetric matrix whose values repeat (drawn from a few levels)."""
    dim = 1 << n
    vals = rng.uniform(0.2, 2.0, levels)
    M = np.zeros((dim, dim))
    for i in range(dim):
        for j in range(i, dim):
            if rng.random() < density:
                M[i, j] = M[j, i] = vals[rng.integers(levels)]
    if not M.any():
        M[0, 0] = vals[0]
    return M


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# One line per acceptance criterion, printed after the run.
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
