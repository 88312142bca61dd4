"""Exact simulation of Grover search with noisy Hadamard gates."""
__version__ = "0.1.0"
