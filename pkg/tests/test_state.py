import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noisygrover.state import (
    HADAMARD,
    PAULI,
    StateVector,
    apply_hadamard_all,
    apply_phase_oracle,
    apply_product,
    apply_single_qubit_gate,
    apply_zero_inversion,
    check_qubits,
    hamming_distance,
    is_unitary,
    probability_of,
)

from oracles import layer


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, psi / np.linalg.norm(psi))


def random_unitary(rng):
    q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    return q * (np.diag(r) / abs(np.diag(r)))


@pytest.mark.parametrize("x,y,n,d", [(17, 31, 5, 3), (17, 17, 5, 0), (0, 255, 8, 8)])
def test_hamming_distance(x, y, n, d):
    assert hamming_distance(x, y, n) == d


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1), st.integers(0, 2**n - 1))))
def test_hamming_distance_is_bitwise_count(args):
    n, x, y = args
    assert hamming_distance(x, y, n) == sum(((x >> k) & 1) != ((y >> k) & 1) for k in range(n))


def test_index_out_of_range():
    with pytest.raises(ValueError):
        hamming_distance(32, 0, 5)
    with pytest.raises(ValueError):
        StateVector.basis(3, 8)


def test_qubit_limit():
    with pytest.raises(ValueError):
        check_qubits(0)
    with pytest.raises(ValueError):
        check_qubits(30)


def test_identity_gate_leaves_state():
    s = random_state(4, 0)
    before = s.amplitudes.copy()
    apply_single_qubit_gate(s, 2, np.eye(2))
    np.testing.assert_array_equal(s.amplitudes, before)


def test_hadamard_on_qubit_zero():
    s = apply_single_qubit_gate(StateVector.basis(3, 0), 0, HADAMARD)
    expect = np.zeros(8)
    expect[[0, 1]] = 1 / np.sqrt(2)
    np.testing.assert_allclose(s.amplitudes, expect, atol=1e-15)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1), st.integers(0, 2**n - 1))))
def test_not_flips_bit_k(args):
    n, k, x = args
    s = apply_single_qubit_gate(StateVector.basis(n, x), k, PAULI[1])
    assert probability_of(s, x ^ (1 << k)) == pytest.approx(1.0, abs=1e-15)


def test_non_unitary_gate_rejected():
    with pytest.raises(ValueError):
        apply_single_qubit_gate(StateVector.basis(2), 0, np.array([[1, 1], [0, 1]]))
    with pytest.raises(ValueError):
        apply_single_qubit_gate(StateVector.basis(2), 2, np.eye(2))


@settings(max_examples=30)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_product_matches_dense_kron(n, seed):
    rng = np.random.default_rng(seed)
    gates = np.array([random_unitary(rng) for _ in range(n)])
    s = random_state(n, seed)
    expect = layer(list(gates)) @ s.amplitudes
    np.testing.assert_allclose(apply_product(s, gates).amplitudes, expect, atol=1e-12)


def test_hadamard_layer_uniform():
    for n in (1, 4, 9):
        s = apply_hadamard_all(StateVector.basis(n, 0))
        np.testing.assert_allclose(s.amplitudes, np.full(1 << n, 2 ** (-n / 2)), atol=1e-14)


def test_hadamard_twice_identity():
    s = random_state(6, 3)
    before = s.amplitudes.copy()
    apply_hadamard_all(apply_hadamard_all(s))
    np.testing.assert_allclose(s.amplitudes, before, atol=1e-10)


@pytest.mark.parametrize("m", [0, 5, 63])
def test_hadamard_matrix_element(m):
    s = apply_hadamard_all(StateVector.basis(6, m))
    assert s.amplitudes[0] == pytest.approx(1 / 8, abs=1e-15)


def test_phase_oracle():
    n, m = 5, 19
    s = StateVector.uniform(n)
    apply_phase_oracle(s, m)
    expect = np.full(32, 32**-0.5)
    expect[m] *= -1
    np.testing.assert_allclose(s.amplitudes, expect, atol=1e-15)
    before = s.amplitudes.copy()
    apply_phase_oracle(apply_phase_oracle(s, m), m)
    np.testing.assert_array_equal(s.amplitudes, before)
    z = StateVector.basis(n, 3)
    apply_phase_oracle(z, m)
    np.testing.assert_array_equal(z.amplitudes, StateVector.basis(n, 3).amplitudes)


def test_zero_inversion():
    s = apply_zero_inversion(StateVector.basis(4, 0))
    assert s.amplitudes[0] == -1
    apply_zero_inversion(s)
    assert s.amplitudes[0] == 1
    # I0 W|m> = W|m> - (2/sqrt N)|0>
    n, m = 4, 9
    wm = apply_hadamard_all(StateVector.basis(n, m))
    out = apply_zero_inversion(wm.copy())
    expect = wm.amplitudes.copy()
    expect[0] -= 2 / 4
    np.testing.assert_allclose(out.amplitudes, expect, atol=1e-15)


def test_probabilities():
    assert probability_of(StateVector.basis(3, 0), 0) == 1.0
    u = StateVector.uniform(7)
    assert probability_of(u, 77) == pytest.approx(1 / 128)
    assert random_state(8, 1).probabilities().sum() == pytest.approx(1.0, abs=1e-10)


def test_is_unitary():
    assert is_unitary(HADAMARD)
    assert not is_unitary(2 * HADAMARD)
    assert not is_unitary(np.ones(3))
