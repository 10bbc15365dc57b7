"""Independent oracles used to fix expected values.

Everything here is deliberately brute force and shares no code path with the
package: index-loop Kronecker products, permutation sums for Gram entries,
and the textbook q-factorial.
"""

from __future__ import annotations

from itertools import permutations, product

import numpy as np


def kron_oracle(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product by explicit index loops."""
    ar, ac = a.shape
    br, bc = b.shape
    out = np.zeros((ar * br, ac * bc), dtype=complex)
    for i in range(ar):
        for j in range(ac):
            for k in range(br):
                for l in range(bc):
                    out[i * br + k, j * bc + l] = a[i, j] * b[k, l]
    return out


def ttilde_oracle(t4: np.ndarray) -> np.ndarray:
    """Companion tensor by explicit reindexing: out^{ij}_{kl} = in^{ki}_{lj}."""
    n = t4.shape[0]
    out = np.zeros_like(t4)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    out[k, l, i, j] = t4[l, j, k, i]
    return out.reshape(n * n, n * n)


def ttilde_inverse_oracle(m4: np.ndarray) -> np.ndarray:
    """Inverse of the companion reindexing: out^{ij}_{kl} = in^{jl}_{ik}."""
    n = m4.shape[0]
    out = np.zeros_like(m4)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    # in^{jl}_{ik} is stored at in[i, k, j, l]
                    out[k, l, i, j] = m4[i, k, j, l]
    return out


def inversions(sigma: tuple[int, ...]) -> list[tuple[int, int]]:
    return [
        (a, b)
        for a in range(len(sigma))
        for b in range(a + 1, len(sigma))
        if sigma[a] > sigma[b]
    ]


def perm_gram_entry(w: tuple[int, ...], u: tuple[int, ...], qmat: np.ndarray) -> complex:
    """<w, u> as a sum over letter-matching permutations with inversion phases.

    Sums over sigma with u[sigma(m)] = w[m] for every position m; each
    inversion (a, b) of sigma contributes the factor qmat[w_a - 1, w_b - 1].
    """
    n = len(w)
    if sorted(w) != sorted(u):
        return 0.0
    total = 0.0 + 0.0j
    for sigma in permutations(range(n)):
        if any(u[sigma[m]] != w[m] for m in range(n)):
            continue
        phase = 1.0 + 0.0j
        for a, b in inversions(sigma):
            phase *= qmat[w[a] - 1, w[b] - 1]
        total += phase
    return total


def perm_gram(n_species: int, degree: int, qmat: np.ndarray) -> np.ndarray:
    """Full sector Gram matrix from the permutation-sum oracle."""
    words = list(product(range(1, n_species + 1), repeat=degree))
    dim = len(words)
    out = np.zeros((dim, dim), dtype=complex)
    for r, w in enumerate(words):
        for c, u in enumerate(words):
            out[r, c] = perm_gram_entry(w, u, qmat)
    return out


def q_factorial(n: int, q: float) -> float:
    """[n]_q! = prod_m (1 + q + ... + q^(m-1))."""
    total = 1.0
    for m in range(1, n + 1):
        total *= sum(q**p for p in range(m))
    return total


def preset_qmat(name: str, n_species: int, q: float | None = None,
                phi: np.ndarray | None = None) -> np.ndarray:
    """Species-pair coefficient matrix of a flip-scaled preset, built from scratch."""
    if name == "boltzmann":
        return np.zeros((n_species, n_species), dtype=complex)
    if name == "boson":
        return np.ones((n_species, n_species), dtype=complex)
    if name == "fermion":
        return -np.ones((n_species, n_species), dtype=complex)
    if name == "quon":
        return q * np.ones((n_species, n_species), dtype=complex)
    if name == "phase":
        return np.exp(1j * np.asarray(phi, dtype=float))
    raise ValueError(name)
