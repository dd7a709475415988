"""
Independent reference computations for small matrices.

Dense eigenpairs come from the Faddeev-LeVerrier characteristic polynomial
and an SVD null space; max cycle means from enumerating every simple cycle.
"""
from itertools import combinations, permutations

import numpy as np


def characteristic_polynomial(M: np.ndarray) -> np.ndarray:
    """Coefficients of det(t I - M), highest degree first (Faddeev-LeVerrier)."""
    m = np.asarray(M, dtype=float)
    n = m.shape[0]
    coefficients = [1.0]
    adjugate = np.eye(n)
    for k in range(1, n + 1):
        product = m @ adjugate
        c = -np.trace(product) / k
        coefficients.append(c)
        adjugate = product + c * np.eye(n)
    return np.array(coefficients)


def perron_oracle(X: np.ndarray):
    """(geometric-mean-1 eigenvector, eigenvalue) of a positive matrix."""
    x = np.asarray(X, dtype=float)
    scale = np.max(x)
    scaled = x / scale
    roots = np.roots(characteristic_polynomial(scaled))
    eigenvalue = float(np.max(roots.real))

    _, _, vt = np.linalg.svd(scaled - eigenvalue * np.eye(x.shape[0]))
    v = np.abs(vt[-1])
    v = v / np.exp(np.mean(np.log(v)))
    return v, eigenvalue * scale


def spectral_norm_oracle(M: np.ndarray) -> float:
    m = np.asarray(M, dtype=float)
    roots = np.roots(characteristic_polynomial(m.T @ m))
    return float(np.sqrt(max(np.max(roots.real), 0.0)))


def max_cycle_mean_oracle(A: np.ndarray) -> float:
    """Best mean over all simple cycles (loops included)."""
    a = np.asarray(A, dtype=float)
    n = a.shape[0]
    best = -np.inf
    for length in range(1, n + 1):
        for nodes in combinations(range(n), length):
            first, rest = nodes[0], nodes[1:]
            for order in permutations(rest):
                cycle = (first,) + order + (first,)
                weight = sum(a[cycle[i], cycle[i + 1]] for i in range(length))
                best = max(best, weight / length)
    return float(best)


def max_plus_apply(A: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.max(np.asarray(A) + np.asarray(x)[None, :], axis=1)
