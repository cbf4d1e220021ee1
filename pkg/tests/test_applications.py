import numpy as np
import pytest

from dictblock.applications import (GepParameters, gen_cyclic_laplacian, gen_gep_matrices, gen_laplacian2d,
                                    gep_stencil_mismatches, gep_subnormalizations)
from dictblock.dictionary import DomainError, build_dictionary, subnormalization, validate
from dictblock.sparse import frobenius_norm, to_dense


def test_cyclic_matches_figure():
    A, d = gen_cyclic_laplacian(3, 3, 2, 1)
    M = to_dense(A)
    assert d.s0 == 3 and A.nnz == 24 and subnormalization(d) == 6
    assert M[0, 0] == 3 and M[1, 0] == 2 and M[7, 0] == 1 and M[0, 7] == 2 and M[6, 7] == 1
    assert validate(d, A).ok


def test_cyclic_equal_weights_both_valid():
    A, d = gen_cyclic_laplacian(3, 1, 1, 1)
    assert d.s0 == 3 and validate(d, A).ok
    merged = build_dictionary(A)
    assert validate(merged, A).ok and merged.s0 == 3


def test_cyclic_domain():
    with pytest.raises(DomainError):
        gen_cyclic_laplacian(3, 1, 0, 1)
    with pytest.raises(DomainError):
        gen_cyclic_laplacian(1, 1, 1, 1)


def test_cyclic_frobenius_inequality(rng):
    for n in range(2, 9):
        a = rng.normal(size=3) + 1j * rng.normal(size=3)
        A, d = gen_cyclic_laplacian(n, *a)
        assert subnormalization(d) <= frobenius_norm(A)


def test_laplacian_4x4_instance():
    A, d = gen_laplacian2d(4, 4, 1, 1)
    assert A.n == 4 and d.s0 == 5 and A.nnz == 64 and d.s == 64
    assert subnormalization(d) == 8
    assert validate(d, A).ok
    assert 0 not in d.items[1].columns and all(j % 4 != 0 for j in d.items[1].columns)


def test_laplacian_interior_rows_vanish():
    A, _ = gen_laplacian2d(8, 4, 1, 1)
    M = to_dense(A)
    for a in range(1, 7):
        for b in range(1, 3):
            assert M[a + 8 * b].sum() == 0


def test_laplacian_matches_kron_construction():
    Nx, Ny, dx, dy = 4, 8, 0.5, 2.0
    A, d = gen_laplacian2d(Nx, Ny, dx, dy)

    def lap1(N, h):
        return (np.diag([-2.0] * N) + np.diag([1.0] * (N - 1), 1) + np.diag([1.0] * (N - 1), -1)) / h**2

    want = np.kron(np.eye(Ny), lap1(Nx, dx)) + np.kron(lap1(Ny, dy), np.eye(Nx))
    np.testing.assert_allclose(to_dense(A), want, atol=1e-15)
    assert abs(subnormalization(d) - (abs(-2 / dx**2 - 2 / dy**2) + 2 / dx**2 + 2 / dy**2)) < 1e-12


def test_laplacian_non_power_of_two():
    with pytest.raises(DomainError):
        gen_laplacian2d(3, 4)


def test_gep_item_counts_and_sizes():
    p = GepParameters.random(2, 3, seed=7)
    (A, dA), (B, dB) = gen_gep_matrices(p)
    assert p.dim == 16 and A.n == B.n == 4
    assert dA.s0 == 19 and dB.s0 == 9
    assert validate(dA, A).ok and validate(dB, B).ok
    # counted from the index tables; the closed forms quoted alongside them give 62 and 18
    assert A.nnz == 20 * 2 + 3 * 3 + 7 == 56
    assert B.nnz == 6 * 2 + 3 + 1 == 16


@pytest.mark.parametrize("N1, N2", [(2, 2), (3, 5), (5, 2), (4, 9)])
def test_gep_subnormalization_formulas(N1, N2):
    p = GepParameters.random(N1, N2, seed=N1 * 100 + N2, complex_values=True)
    (_, dA), (_, dB) = gen_gep_matrices(p)
    fa, fb = gep_subnormalizations(p)
    assert abs(subnormalization(dA) - fa) < 1e-12 and abs(subnormalization(dB) - fb) < 1e-12


def test_gep_a_tables_match_stencils():
    for N1 in range(2, 6):
        for N2 in range(2, 7):
            assert gep_stencil_mismatches(GepParameters.random(N1, N2, seed=0), "A") == []


def test_gep_b_stencil_disagreement_reported():
    p = GepParameters.random(2, 3, seed=1)
    bad = gep_stencil_mismatches(p, "B")
    coords = {m["coord"] for m in bad}
    # the b_0, b_1, b_2 pairs sit one column further right in the table than in the stencil
    assert (3, 4) in coords and (3, 3) in coords
    assert all(m["coord"][0] in (3, 4, 5, 7, 8, 9) for m in bad)


def test_gep_parameter_checks():
    with pytest.raises(DomainError):
        GepParameters(1, 3, [1] * 13, [1] * 6)
    with pytest.raises(DomainError):
        GepParameters(2, 3, [1] * 12 + [0], [1] * 6)
    with pytest.raises(DomainError):
        GepParameters(2, 3, [1] * 13, [1] * 5)
