"""Shared helpers for the test suite: random inputs and independent oracles."""

import numpy as np


def rand_matrix(rng, n, scale=1.0):
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def rand_hermitian(rng, n, scale=1.0):
    m = rand_matrix(rng, n, scale)
    return (m + m.conj().T) / 2.0


def rand_unit_norm(rng, n):
    m = rand_matrix(rng, n)
    return m / np.linalg.norm(m, 2)


def exp_series_oracle(m, terms=60):
    """Plain power-series exponential, independent of the scaling-and-squaring path."""
    m = np.asarray(m, dtype=complex)
    acc = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ m / k
        acc = acc + term
    return acc


def match_multisets(xs, ys, tol):
    """Greedy multiset matching of complex values within tol; True when exact cover."""
    ys = list(ys)
    for x in xs:
        best, best_d = None, None
        for i, y in enumerate(ys):
            d = abs(x - y)
            if best_d is None or d < best_d:
                best, best_d = i, d
        if best is None or best_d > tol:
            return False
        ys.pop(best)
    return not ys
