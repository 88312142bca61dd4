"""State-vector register and the fixed gates of Grover's search.

Conventions: basis index bit k is the value of qubit k, and the k-th
tensor factor of an n-qubit product operator acts on that bit. All gate
functions modify ``state`` in place and return it so calls can be chained.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels

MAX_QUBITS = 24
UNITARY_TOL = 1e-12

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)
PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)


def check_qubits(n: int, max_qubits: int = MAX_QUBITS) -> int:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"qubit count must be a positive integer, got {n!r}")
    if n > max_qubits:
        raise ValueError(f"n={n} exceeds the configured maximum of {max_qubits} qubits")
    return int(n)


def check_index(x: int, n: int) -> int:
    if not isinstance(x, (int, np.integer)) or not 0 <= x < (1 << n):
        raise ValueError(f"basis index {x!r} out of range for {n} qubits")
    return int(x)


@dataclass
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        check_qubits(self.n)
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n,):
            raise ValueError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got shape {self.amplitudes.shape}"
            )

    @classmethod
    def basis(cls, n: int, x: int = 0) -> StateVector:
        n = check_qubits(n)
        psi = np.zeros(1 << n, dtype=np.complex128)
        psi[check_index(x, n)] = 1.0
        return cls(n, psi)

    @classmethod
    def uniform(cls, n: int) -> StateVector:
        n = check_qubits(n)
        N = 1 << n
        return cls(n, np.full(N, 1.0 / np.sqrt(N), dtype=np.complex128))

    @property
    def dim(self) -> int:
        return 1 << self.n

    def copy(self) -> StateVector:
        return StateVector(self.n, self.amplitudes.copy())

    def probabilities(self) -> np.ndarray:
        a = self.amplitudes
        return a.real**2 + a.imag**2

    def norm_squared(self) -> float:
        return float(np.sum(self.probabilities()))


def hamming_distance(x: int, y: int, n: int) -> int:
    """Number of bit positions in which the n-bit strings x and y differ."""
    check_index(x, n)
    check_index(y, n)
    return bin(int(x) ^ int(y)).count("1")


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def apply_single_qubit_gate(state: StateVector, k: int, u: np.ndarray) -> StateVector:
    if not 0 <= k < state.n:
        raise ValueError(f"qubit index {k} out of range for n={state.n}")
    u = np.ascontiguousarray(u, dtype=np.complex128)
    if u.shape != (2, 2) or not is_unitary(u):
        raise ValueError("gate must be a 2x2 unitary matrix")
    _kernels.apply_gate(state.amplitudes, k, u)
    return state


def apply_product(state: StateVector, gates: np.ndarray) -> StateVector:
    """Apply the tensor product of ``gates[k]`` (one 2x2 per qubit)."""
    gates = np.ascontiguousarray(gates, dtype=np.complex128)
    if gates.shape != (state.n, 2, 2):
        raise ValueError(f"expected gates of shape ({state.n}, 2, 2), got {gates.shape}")
    _kernels.apply_layer(state.amplitudes, gates)
    return state


def hadamard_layer(n: int) -> np.ndarray:
    return np.broadcast_to(HADAMARD, (n, 2, 2)).copy()


def apply_hadamard_all(state: StateVector) -> StateVector:
    return apply_product(state, hadamard_layer(state.n))


def apply_phase_oracle(state: StateVector, m: int) -> StateVector:
    """I_m = I - 2|m><m|."""
    m = check_index(m, state.n)
    state.amplitudes[m] = -state.amplitudes[m]
    return state


def apply_zero_inversion(state: StateVector) -> StateVector:
    """I_0 = I - 2|0><0|."""
    state.amplitudes[0] = -state.amplitudes[0]
    return state


def probability_of(state: StateVector, x: int) -> float:
    a = state.amplitudes[check_index(x, state.n)]
    return float(a.real**2 + a.imag**2)
