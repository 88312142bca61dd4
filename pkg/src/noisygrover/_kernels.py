"""Compiled inner loops over the amplitude array.

Bit k of a basis index is qubit k; a 2x2 gate on qubit k mixes the amplitude
pairs (j, j + 2**k) for every j with bit k clear.
"""
import numba
import numpy as np

_JIT = dict(cache=True, nogil=True, fastmath={"contract"})


@numba.njit(**_JIT)
def apply_gate(psi, k, u):
    stride = 1 << k
    u00, u01, u10, u11 = u[0, 0], u[0, 1], u[1, 0], u[1, 1]
    for base in range(0, psi.shape[0], 2 * stride):
        for j in range(base, base + stride):
            a = psi[j]
            b = psi[j + stride]
            psi[j] = u00 * a + u01 * b
            psi[j + stride] = u10 * a + u11 * b


@numba.njit(**_JIT)
def apply_layer(psi, gates):
    # gates[k] acts on qubit k
    for k in range(gates.shape[0]):
        apply_gate(psi, k, gates[k])


@numba.njit(**_JIT)
def oracle_and_layer(psi, marked, gates):
    psi[marked] = -psi[marked]
    apply_layer(psi, gates)


@numba.njit(**_JIT)
def negated_zero_inversion(psi):
    # -I0: every amplitude except index 0 flips sign
    for j in range(1, psi.shape[0]):
        psi[j] = -psi[j]


@numba.njit(**_JIT)
def run_iterations(psi, marked, u_layers, v_layers):
    """T noisy iterations followed by the closing layer u_layers[T]."""
    T = v_layers.shape[0]
    for t in range(T):
        apply_layer(psi, u_layers[t])
        psi[marked] = -psi[marked]
        apply_layer(psi, v_layers[t])
        negated_zero_inversion(psi)
    apply_layer(psi, u_layers[T])

