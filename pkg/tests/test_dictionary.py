import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dictblock.dictionary import (DataItem, Dictionary, DictionaryCapacityError, DictionaryError, DomainError,
                                  HermitianDictionary, build_dictionary, edge_coloring, from_json,
                                  greedy_matchings, hermitianize, max_degree, subnormalization, to_json,
                                  to_matrix, validate)
from dictblock.sparse import SparseMatrix, from_dense, to_dense

from conftest import random_dictionary


def cyclic_items(a1, a2, a3, N=8):
    return [
        DataItem(a1, [(j, j) for j in range(N)]),
        DataItem(a2, [(j, (j + 1) % N) for j in range(N)]),
        DataItem(a3, [(j, (j - 1) % N) for j in range(N)]),
    ]


def cyclic_dense(a1, a2, a3, N=8):
    # written out from the figure: a1 diagonal, a2 below, a3 above, wrapping corners
    Q = np.diag([a1] * N).astype(complex)
    for j in range(N):
        Q[(j + 1) % N, j] = a2
        Q[(j - 1) % N, j] = a3
    return Q


def test_cyclic_dictionary_validates_against_matrix():
    d = Dictionary(3, cyclic_items(3, 2, 1))
    assert validate(d, from_dense(cyclic_dense(3, 2, 1))).ok
    assert subnormalization(d) == 6


def test_to_matrix_reproduces_figure():
    d = Dictionary(3, cyclic_items(2, 1, 1))
    np.testing.assert_array_equal(to_dense(to_matrix(d)), cyclic_dense(2, 1, 1))


def test_injectivity_violation():
    d = Dictionary(1, [DataItem(1, {0: 1, 1: 1})])
    assert validate(d).kinds() == {"injectivity"}


def test_disjointness_violation():
    d = Dictionary(1, [DataItem(1, {0: 0}), DataItem(2, {0: 0})])
    assert "disjointness" in validate(d).kinds()


def test_coverage_and_value_violations():
    A = from_dense(np.array([[1, 2], [0, 1]]))
    d = Dictionary(1, [DataItem(1, {0: 0, 1: 1})])
    assert validate(d, A).kinds() == {"coverage"}
    d = Dictionary(1, [DataItem(1, {0: 0, 1: 1}), DataItem(3, {1: 0})])
    assert validate(d, A).kinds() == {"value"}


def test_item_rejects_two_rows_in_one_column():
    with pytest.raises(DictionaryError):
        DataItem(1, [(0, 0), (0, 1)])


def test_to_matrix_overlap_raises():
    with pytest.raises(DictionaryError):
        to_matrix(Dictionary(1, [DataItem(1, {0: 0}), DataItem(2, {0: 0})]))


def test_single_item_to_matrix():
    np.testing.assert_array_equal(to_dense(to_matrix(Dictionary(1, [DataItem(5, {1: 0})]))), [[0, 5], [0, 0]])


def test_build_cyclic_three_items():
    A = from_dense(cyclic_dense(3, 2, 1))
    d = build_dictionary(A)
    assert d.s0 == 3 and validate(d, A).ok
    assert sorted(it.mapping[0] for it in d.items) == [0, 1, 7]


def test_build_identity():
    d = build_dictionary(from_dense(np.eye(4)))
    assert d.s0 == 1 and d.items[0].value == 1 and d.items[0].mapping == {j: j for j in range(4)}
    assert subnormalization(d) == 1


def test_build_splits_shared_column():
    A = SparseMatrix(1, [(1, 0, 0), (1, 1, 0)])
    d = build_dictionary(A)
    assert d.s0 == 2 and validate(d, A).ok


def test_build_empty_raises():
    with pytest.raises(DictionaryError):
        build_dictionary(SparseMatrix(2, []))


def test_build_ordering_descending_magnitude():
    A = from_dense(np.array([[1, -3], [2j, 0]]))
    assert [abs(v) for v in build_dictionary(A).values] == [3, 2, 1]


def test_value_tol_merges():
    A = from_dense(np.array([[1.0, 0], [0, 1.0 + 1e-12]]))
    assert build_dictionary(A).s0 == 2
    assert build_dictionary(A, value_tol=1e-9).s0 == 1


def _min_matchings_bruteforce(edges):
    """Smallest k admitting a proper edge colouring, found by exhaustive search."""
    for k in range(1, len(edges) + 1):
        for colours in itertools.product(range(k), repeat=len(edges)):
            ok = True
            for a in range(len(edges)):
                for b in range(a):
                    if colours[a] == colours[b] and (edges[a][0] == edges[b][0] or edges[a][1] == edges[b][1]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return k
    return 0


@settings(max_examples=40, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=7))
def test_edge_coloring_is_minimal(edge_set):
    edges = sorted(edge_set)
    matchings = edge_coloring(edges)
    assert len(matchings) == _min_matchings_bruteforce(edges) == max_degree(edges)
    flat = [e for m in matchings for e in m]
    assert sorted(flat) == edges
    for m in matchings:
        assert len({r for r, _ in m}) == len(m) == len({c for _, c in m})


def test_edge_coloring_larger_classes(rng):
    for _ in range(20):
        dim = 16
        mask = rng.random((dim, dim)) < 0.4
        edges = [(int(r), int(c)) for r, c in zip(*np.nonzero(mask))]
        assert len(edge_coloring(edges)) == max_degree(edges)


def test_greedy_may_use_more_but_is_valid(rng):
    M = np.ones((8, 8)) * (rng.random((8, 8)) < 0.5)
    M[0, 0] = 1
    A = from_dense(M)
    d = build_dictionary(A, method="greedy")
    assert validate(d, A).ok
    assert d.s0 >= build_dictionary(A).s0


def test_hermitianize_pauli_x():
    hd = hermitianize(from_dense(np.array([[0, 1], [1, 0]])))
    assert isinstance(hd, HermitianDictionary)
    assert hd.s0 == 1 and hd.items[0].mapping == {0: 1, 1: 0} and subnormalization(hd) == 1


def test_hermitianize_tridiagonal_three_items():
    S = np.diag([2.0] * 4) + np.diag([1.0] * 3, 1) + np.diag([1.0] * 3, -1)
    hd = hermitianize(from_dense(S))
    assert hd.s0 == 3 and validate(hd, from_dense(S)).ok
    assert subnormalization(hd) == 4


@pytest.mark.parametrize("M", [np.array([[0, -1], [-1, 0]]), np.array([[0, 1], [2, 0]]),
                               np.array([[1j, 0], [0, 1]])])
def test_hermitianize_domain(M):
    with pytest.raises(DomainError):
        hermitianize(from_dense(M))


def test_hermitianize_capacity():
    # three distinct values need three items, but n=1 leaves room for two
    M = np.array([[1, 2], [2, 3]])
    with pytest.raises(DictionaryCapacityError):
        hermitianize(from_dense(M))


def test_json_roundtrip(rng):
    d = random_dictionary(rng, 3, 4)
    text = to_json(d)
    back = from_json(text, A=to_matrix(d))
    assert back == d and to_json(back) == text


def test_json_validates_on_load():
    with pytest.raises(DictionaryError):
        from_json('{"n": 1, "items": [{"value": [1, 0], "map": [[0, 1], [1, 1]]}]}')
    with pytest.raises(DictionaryError):
        from_json('{"n": 1, "items": [{"value": [1, 0]}]}')


def test_random_invariants(rng):
    for _ in range(30):
        n = int(rng.integers(1, 4))
        M = (rng.random((1 << n, 1 << n)) < 0.5) * rng.choice([1.0, -2.0, 0.5j], size=(1 << n, 1 << n))
        if not M.any():
            continue
        A = from_dense(M)
        d = build_dictionary(A)
        assert validate(d, A).ok
        assert to_matrix(d) == A
        assert d.s0 <= d.s <= d.s0 * (1 << n)
        assert subnormalization(d) <= sum(abs(t.value) for t in A.triplets) + 1e-12
