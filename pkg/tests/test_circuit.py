import numpy as np
import pytest
from scipy.stats import unitary_group

from dictblock.circuit import (CX, MCX, U2, Circuit, MustDecomposeError, Multiplexed, RegisterLayout, Swap,
                               X, H, decompose, depth, layers, pool_demand, zyz, rz, ry)
from dictblock.qasm import export_qasm, import_qasm, u_matrix
from dictblock.simulate import apply_to_state, to_unitary
from dictblock.sparse import CapacityError


def flat(nq):
    return RegisterLayout([("q", nq)])


def mcx_matrix(nq, controls, pattern, targets):
    """Permutation matrix of a multi-controlled X, built from index arithmetic."""
    dim = 1 << nq
    P = np.zeros((dim, dim))
    for k in range(dim):
        fire = all((k >> c) & 1 == b for c, b in zip(controls, pattern))
        out = k
        if fire:
            for t in targets:
                out ^= 1 << t
        P[out, k] = 1
    return P


def mux_matrix(nq, selectors, target, payloads):
    dim = 1 << nq
    M = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        sel = sum(((k >> q) & 1) << b for b, q in enumerate(selectors))
        bit = (k >> target) & 1
        for out_bit in (0, 1):
            out = (k & ~(1 << target)) | (out_bit << target)
            M[out, k] += payloads[sel][out_bit, bit]
    return M


def random_circuit(rng, nq, count, composite=True):
    c = Circuit(flat(nq))
    for _ in range(count):
        kind = rng.integers(5 if composite else 2)
        qs = [int(q) for q in rng.permutation(nq)]
        if kind == 0:
            c.u(qs[0], unitary_group.rvs(2, random_state=rng))
        elif kind == 1:
            c.cx(qs[0], qs[1])
        elif kind == 2:
            c.swap(qs[0], qs[1])
        elif kind == 3:
            k = int(rng.integers(1, max(2, nq - 1)))
            c.mcx(qs[:k], rng.integers(0, 2, k), qs[k:k + int(rng.integers(1, 3))] or [qs[-1]])
        else:
            k = int(rng.integers(0, min(3, nq - 1) + 1))
            c.mux(qs[:k], qs[k], [unitary_group.rvs(2, random_state=rng) for _ in range(1 << k)])
    return c


# -- depth --------------------------------------------------------------------------

def test_depth_examples():
    assert depth(Circuit(flat(4))) == 0
    assert depth(Circuit(flat(4)).cx(0, 1).cx(2, 3)) == 1
    assert depth(Circuit(flat(4)).cx(0, 1).cx(1, 2)) == 2


def test_depth_rejects_composite():
    with pytest.raises(MustDecomposeError):
        depth(Circuit(flat(2)).swap(0, 1))
    with pytest.raises(MustDecomposeError):
        depth(Circuit(flat(2)).cx(0, 1, polarity=0))


def test_layering_order_stable(rng):
    for _ in range(10):
        c = decompose(random_circuit(rng, 5, 15))
        ls = layers(c)
        shuffled = [g for layer in ls for g in rng.permutation(np.array(layer, dtype=object))]
        d = Circuit(c.layout, list(shuffled))
        assert depth(d) == depth(c) <= len(c.gates)
        if c.gates:
            assert depth(c) >= 1


# -- decomposition ------------------------------------------------------------------------

def test_swap_becomes_three_cnots():
    c = decompose(Circuit(flat(2)).swap(0, 1))
    assert [g.kind for g in c.gates] == ["cx"] * 3
    np.testing.assert_allclose(to_unitary(c), mcx_matrix(2, [], [], []) [[0, 2, 1, 3]], atol=0)


def test_toffoli_matrix():
    c = decompose(Circuit(flat(3)).mcx([0, 1], [1, 1], [2]))
    assert c.num_qubits == 3 and c.is_elementary()
    np.testing.assert_allclose(to_unitary(c), mcx_matrix(3, [0, 1], [1, 1], [2]), atol=1e-12)


def test_single_u2_unchanged():
    U = unitary_group.rvs(2, random_state=1)
    c = decompose(Circuit(flat(1)).u(0, U))
    assert len(c.gates) == 1 and np.array_equal(c.gates[0].matrix, U)


@pytest.mark.parametrize("k, targets", [(3, 1), (4, 1), (3, 2), (2, 2)])
def test_vchain_matches_bruteforce(k, targets):
    rng = np.random.default_rng(k * 10 + targets)
    nq = k + targets
    pattern = [int(b) for b in rng.integers(0, 2, k)]
    comp = Circuit(flat(nq)).mcx(range(k), pattern, range(k, nq))
    dec = decompose(comp)
    U = to_unitary(dec)
    dim = 1 << nq
    # pool is the top register: its |0> subspace is the leading block and must be preserved
    np.testing.assert_allclose(U[:dim, :dim], mcx_matrix(nq, range(k), pattern, range(k, nq)), atol=1e-12)


def test_pool_shortfall_reported():
    c = Circuit(flat(5)).mcx([0, 1, 2, 3], [1, 1, 1, 1], [4])
    assert pool_demand(c) == 2
    with pytest.raises(CapacityError, match="short by 1"):
        decompose(c, pool=1)


def test_multiplexed_matches_bruteforce(rng):
    for k in range(4):
        pay = [unitary_group.rvs(2, random_state=rng) for _ in range(1 << k)]
        sel = list(range(1, k + 1))
        c = Circuit(flat(k + 1)).mux(sel, 0, pay)
        want = mux_matrix(k + 1, sel, 0, pay)
        np.testing.assert_allclose(to_unitary(c), want, atol=1e-12)
        np.testing.assert_allclose(to_unitary(decompose(c)), want, atol=1e-10)


def test_zyz_reconstructs(rng):
    for _ in range(50):
        U = unitary_group.rvs(2, random_state=rng)
        ph, b, g, d = zyz(U)
        np.testing.assert_allclose(np.exp(1j * ph) * rz(b) @ ry(g) @ rz(d), U, atol=1e-12)
    for U in (X, H, np.eye(2), np.diag([1, 1j])):
        ph, b, g, d = zyz(U)
        np.testing.assert_allclose(np.exp(1j * ph) * rz(b) @ ry(g) @ rz(d), U, atol=1e-12)


def test_decompose_preserves_random_circuits(rng):
    worst = 0.0
    for trial in range(50):
        nq = int(rng.integers(3, 7))
        c = random_circuit(rng, nq, 12)
        dec = decompose(c)
        assert dec.is_elementary()
        assert dec.num_qubits <= 10
        U = to_unitary(dec)
        dim = 1 << nq
        worst = max(worst, float(np.max(np.abs(U[:dim, :dim] - to_unitary(c)))))
    assert worst <= 1e-10


# -- simulation ----------------------------------------------------------------------

def test_to_unitary_examples():
    np.testing.assert_array_equal(to_unitary(Circuit(flat(2))), np.eye(4))
    np.testing.assert_array_equal(to_unitary(Circuit(flat(1)).x(0)), X)
    np.testing.assert_allclose(to_unitary(Circuit(flat(1)).h(0).h(0)), np.eye(2), atol=1e-12)


def test_to_unitary_cap():
    with pytest.raises(CapacityError, match="apply_to_state"):
        to_unitary(Circuit(flat(15)))


def test_apply_examples():
    np.testing.assert_array_equal(apply_to_state(Circuit(flat(1)).x(0), [1, 0]), [0, 1])
    # qubit 1 is the control and holds 1; |10> is basis index 2
    out = apply_to_state(Circuit(flat(2)).cx(1, 0), np.eye(4)[2])
    np.testing.assert_array_equal(out, np.eye(4)[3])
    with pytest.raises(ValueError):
        apply_to_state(Circuit(flat(2)), np.ones(3))


def test_apply_matches_unitary(rng):
    c = random_circuit(rng, 6, 30)
    psi = rng.normal(size=64) + 1j * rng.normal(size=64)
    np.testing.assert_allclose(apply_to_state(c, psi), to_unitary(c) @ psi, atol=1e-12)


def test_zero_cnot_and_swap_semantics():
    U = to_unitary(Circuit(flat(2)).cx(0, 1, polarity=0))
    np.testing.assert_array_equal(U, mcx_matrix(2, [0], [0], [1]))
    np.testing.assert_array_equal(to_unitary(Circuit(flat(2)).swap(0, 1)), np.eye(4)[[0, 2, 1, 3]])


def test_adjoint_inverts(rng):
    c = random_circuit(rng, 4, 20)
    both = c.copy().compose(c.adjoint())
    np.testing.assert_allclose(to_unitary(both), np.eye(16), atol=1e-12)


def test_gate_validation():
    with pytest.raises(ValueError):
        Circuit(flat(2)).u(0, [[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        Circuit(flat(2)).cx(0, 0)
    with pytest.raises(ValueError):
        Circuit(flat(2)).cx(0, 2)
    with pytest.raises(ValueError):
        Circuit(flat(3)).mux([1], 0, [np.eye(2)])


def test_layout_registers():
    L = RegisterLayout([("system", 3), ("scratch", 3), ("del", 1), ("idx", 2)])
    assert L["idx"].qubits == (7, 8) and L.num_qubits == 9
    assert RegisterLayout.from_dict(L.as_dict()) == L
    with pytest.raises(ValueError):
        RegisterLayout([("a", 1), ("a", 2)])


def test_json_dump_roundtrip(rng):
    c = random_circuit(rng, 4, 15)
    back = Circuit.from_json(c.to_json())
    np.testing.assert_allclose(to_unitary(back), to_unitary(c), atol=1e-15)


# -- QASM ---------------------------------------------------------------------------

def test_qasm_cx():
    text = export_qasm(Circuit(flat(2)).cx(0, 1))
    assert text.count("cx q[0],q[1];") == 1 and "qreg q[2];" in text


def test_qasm_x_angles():
    text = export_qasm(Circuit(flat(1)).x(0))
    assert "u(pi,0,pi) q[0];" in text
    np.testing.assert_allclose(u_matrix(np.pi, 0, np.pi), X, atol=1e-15)


def test_qasm_refuses_composite():
    with pytest.raises(MustDecomposeError):
        export_qasm(Circuit(flat(2)).swap(0, 1))


def test_qasm_roundtrip_exact_phase(rng):
    for _ in range(5):
        c = decompose(random_circuit(rng, 4, 20))
        back = import_qasm(export_qasm(c), c.layout)
        np.testing.assert_allclose(to_unitary(back), to_unitary(c), atol=1e-9)


def test_qasm_deterministic(rng):
    seed = int(rng.integers(1 << 30))
    texts = {export_qasm(decompose(random_circuit(np.random.default_rng(seed), 4, 20))) for _ in range(2)}
    assert len(texts) == 1
