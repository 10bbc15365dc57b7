"""Dense complex linear algebra substrate.

All matrices are ``numpy.ndarray`` with dtype ``complex128``.  Tensor indices
are flattened row-major: the basis vector ``x^{i1} (x) ... (x) x^{in}`` of an
N-ary tensor power sits at offset ``sum((i_k - 1) * N**(n-k))`` (letters are
1-based, offsets 0-based).  Every module in the package relies on this one
convention.
"""

from __future__ import annotations

import numpy as np

from .errors import NotHermitian

#: Global default equality tolerance; overridable per call and via the CLI.
DEFAULT_EPS = 1e-9


def resolve_eps(eps: float | None) -> float:
    """Return ``eps`` or the global default, rejecting non-positive values."""
    if eps is None:
        return DEFAULT_EPS
    if not eps > 0:
        raise ValueError(f"tolerance must be positive, got {eps}")
    return float(eps)


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting NaN/Inf entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {m.shape}")
    if m.size and not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def max_abs(a: np.ndarray) -> float:
    """Largest entry magnitude; 0 for empty arrays."""
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; block (i, j) of the result is ``a[i, j] * b``."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=complex).conj().T


def hermitian_spectrum(a: np.ndarray, eps: float | None = None) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending.

    Raises :class:`NotHermitian` when ``a`` deviates from its conjugate
    transpose by more than ``eps`` in any entry; otherwise diagonalizes the
    Hermitian part ``(a + dagger(a)) / 2``.
    """
    eps = resolve_eps(eps)
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise NotHermitian(f"matrix is not square: shape {m.shape}")
    residual = max_abs(m - dagger(m))
    if residual > eps:
        raise NotHermitian(
            f"matrix deviates from Hermitian by {residual:.3e} (eps={eps:.3e})"
        )
    if m.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh((m + dagger(m)) / 2)


def operator_norm(a: np.ndarray) -> float:
    """Largest singular value; 0 for empty matrices."""
    m = as_matrix(a)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, ord=2))


def kernel_basis(a: np.ndarray, eps: float | None = None) -> np.ndarray:
    """Orthonormal basis of the numerical null space, as matrix columns.

    Singular values at or below ``eps * max(1, sigma_max)`` count as zero.
    A ``(cols, 0)``-shaped result means the kernel is trivial.
    """
    eps = resolve_eps(eps)
    m = as_matrix(a)
    if m.shape[1] == 0:
        return np.zeros((0, 0), dtype=complex)
    if m.shape[0] == 0:
        return eye(m.shape[1])
    _, s, vh = np.linalg.svd(m)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > eps * max(1.0, smax)))
    return vh[rank:].conj().T


def span_and_complement(
    vectors, ambient_dim: int, eps: float | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases of the span of ``vectors`` and of its complement.

    ``vectors`` is a matrix with the vectors as columns, or any sequence of
    length-``ambient_dim`` vectors.  Both returned bases are column matrices
    in the standard Euclidean inner product; their widths always add up to
    ``ambient_dim``.
    """
    eps = resolve_eps(eps)
    if isinstance(vectors, (list, tuple)):
        if len(vectors) == 0:
            vecs = np.zeros((ambient_dim, 0), dtype=complex)
        else:
            vecs = np.stack(
                [np.asarray(v, dtype=complex).reshape(-1) for v in vectors], axis=1
            )
    else:
        vecs = np.asarray(vectors, dtype=complex)
        if vecs.size == 0:
            vecs = np.zeros((ambient_dim, 0), dtype=complex)
        elif vecs.ndim == 1:
            vecs = vecs[:, None]
    if vecs.shape[0] != ambient_dim:
        raise ValueError(
            f"vectors have length {vecs.shape[0]}, ambient dimension is {ambient_dim}"
        )
    if vecs.shape[1] == 0:
        return np.zeros((ambient_dim, 0), dtype=complex), eye(ambient_dim)
    u, s, _ = np.linalg.svd(vecs, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > eps * max(1.0, smax)))
    return u[:, :rank], u[:, rank:]
