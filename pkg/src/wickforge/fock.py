"""Fock-space representation built sector by sector.

Degree-n sectors are spanned by the N^n words of length n over the species
alphabet 1..N, in lexicographic order (which coincides with the global
row-major flattening).  Creation prepends a letter; annihilation acts by the
one-step recursion

    a_i (x^j (x) w) = delta_ij * w + sum_{k,l} T^{ij}_{kl} * x^k (x) a_l(w),
    a_i |0> = 0,

whose matrix form drives the Gram recursion and everything downstream.  The
vacuum is normalized to <0|0> = 1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import NoBraid, NotWellDefined, SizeLimit
from .linalg import (
    dagger,
    eye,
    hermitian_spectrum,
    kernel_basis,
    kron,
    max_abs,
    resolve_eps,
    span_and_complement,
)
from .operators import StatisticsSystem, build_ttilde

#: Hard ceiling on sector dimension N^n; exceeding it raises SizeLimit.
DEFAULT_SECTOR_CAP = 100_000

Word = tuple[int, ...]

_CACHE_LOCK = threading.Lock()
_CACHE: dict[tuple, object] = {}


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


def _cache_get(key):
    with _CACHE_LOCK:
        return _CACHE.get(key)


def _cache_put(key, value):
    with _CACHE_LOCK:
        return _CACHE.setdefault(key, value)


def _check_cap(dim: int, cap: int | None) -> None:
    limit = DEFAULT_SECTOR_CAP if cap is None else cap
    if dim > limit:
        raise SizeLimit(f"sector dimension {dim} exceeds cap {limit}")


def _check_species(system: StatisticsSystem, i: int) -> None:
    if not 1 <= i <= system.dim:
        raise ValueError(f"species {i} out of range 1..{system.dim}")


def word_index(word: Word, n_species: int) -> int:
    """Offset of a word under the row-major flattening."""
    idx = 0
    for letter in word:
        if not 1 <= letter <= n_species:
            raise ValueError(f"letter {letter} out of range 1..{n_species}")
        idx = idx * n_species + (letter - 1)
    return idx


@dataclass(frozen=True, eq=False)
class QuotientData:
    """Representatives of TE/I inside a sector: complement basis and projector."""

    complement_basis: np.ndarray  # N^n x d', orthonormal columns
    projector: np.ndarray         # N^n x N^n, Hermitian idempotent

    @property
    def dim(self) -> int:
        return self.complement_basis.shape[1]


@dataclass(frozen=True, eq=False)
class FockSector:
    n: int
    dim_full: int
    basis: tuple[Word, ...]
    quotient: QuotientData | None = None


@dataclass(frozen=True, eq=False)
class GramMatrix:
    n: int
    mat: np.ndarray
    quotient: bool = False

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class PositivityReport:
    n: int
    min_eig: float | None
    kernel_dim: int
    positive_semidefinite: bool
    positive_definite: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "min_eig": self.min_eig,
            "kernel_dim": self.kernel_dim,
            "positive_semidefinite": self.positive_semidefinite,
            "positive_definite": self.positive_definite,
        }


def sector_basis(n_species: int, n: int, cap: int | None = None) -> FockSector:
    """All words of length n over 1..n_species, lexicographic."""
    if n_species < 1:
        raise ValueError(f"need at least one species, got {n_species}")
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    dim = n_species**n
    _check_cap(dim, cap)
    words = tuple(product(range(1, n_species + 1), repeat=n))
    return FockSector(n=n, dim_full=dim, basis=words)


def creation_matrix(
    system: StatisticsSystem, i: int, n: int, cap: int | None = None
) -> np.ndarray:
    """Matrix of w -> x^i (x) w from sector n to sector n+1."""
    _check_species(system, i)
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    n_sp = system.dim
    _check_cap(n_sp ** (n + 1), cap)
    unit = np.zeros((n_sp, 1), dtype=complex)
    unit[i - 1, 0] = 1.0
    return kron(unit, eye(n_sp**n))


def _annihilation_level(system: StatisticsSystem, m: int) -> tuple[np.ndarray, ...]:
    """Annihilation matrices for every species at degree m (maps m -> m-1)."""
    key = ("annlev", system.content_key, m)
    cached = _cache_get(key)
    if cached is not None:
        return cached
    n_sp = system.dim
    if m == 1:
        mats = []
        for i0 in range(n_sp):
            row = np.zeros((1, n_sp), dtype=complex)
            row[0, i0] = 1.0
            mats.append(row)
    else:
        prev = _annihilation_level(system, m - 1)
        t4 = system.cross.tensor()
        dim_in = n_sp**m
        dim_out = n_sp ** (m - 1)
        blk = n_sp ** (m - 2)
        mats = []
        for i0 in range(n_sp):
            mat = np.zeros((dim_out, dim_in), dtype=complex)
            for j0 in range(n_sp):
                cols = slice(j0 * dim_out, (j0 + 1) * dim_out)
                if i0 == j0:
                    mat[:, cols] += eye(dim_out)
                for k0 in range(n_sp):
                    rows = slice(k0 * blk, (k0 + 1) * blk)
                    for l0 in range(n_sp):
                        coeff = t4[k0, l0, i0, j0]
                        if coeff != 0:
                            mat[rows, cols] += coeff * prev[l0]
            mats.append(mat)
    for mat in mats:
        mat.setflags(write=False)
    return _cache_put(key, tuple(mats))


def annihilation_matrix(
    system: StatisticsSystem, i: int, n: int, cap: int | None = None
) -> np.ndarray:
    """Matrix of the annihilation recursion from sector n to sector n-1."""
    _check_species(system, i)
    if n < 1:
        raise ValueError(f"annihilation needs degree >= 1, got {n}")
    _check_cap(system.dim**n, cap)
    return _annihilation_level(system, n)[i - 1]


def gram_matrix(system: StatisticsSystem, n: int, cap: int | None = None) -> GramMatrix:
    """Sector Gram matrix of the scalar product making creators adjoint.

    G_0 = [[1]]; the (i, j) species block of G_n is ``G_{n-1} A_i C_j``, which
    collapses to stacking ``G_{n-1} A_i`` row-blockwise.
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    _check_cap(system.dim**n, cap)
    key = ("gram", system.content_key, n)
    cached = _cache_get(key)
    if cached is not None:
        return GramMatrix(n=n, mat=cached)
    if n == 0:
        mat = np.ones((1, 1), dtype=complex)
    else:
        prev = gram_matrix(system, n - 1, cap).mat
        anns = _annihilation_level(system, n)
        mat = np.vstack([prev @ anns[i0] for i0 in range(system.dim)])
    mat.setflags(write=False)
    return GramMatrix(n=n, mat=_cache_put(key, mat))


def quotient_gram(system: StatisticsSystem, n: int,
                  eps: float | None = None, cap: int | None = None) -> GramMatrix:
    """Gram matrix compressed to the quotient representatives of sector n."""
    sector = quotient_sector(system, n, eps=eps, cap=cap)
    q = sector.quotient.complement_basis
    full = gram_matrix(system, n, cap).mat
    return GramMatrix(n=n, mat=dagger(q) @ full @ q, quotient=True)


def positivity_report(
    system: StatisticsSystem,
    n: int,
    eps: float | None = None,
    quotient: bool = False,
    cap: int | None = None,
) -> PositivityReport:
    """Spectrum-based positivity verdict for the (possibly quotient) Gram."""
    eps = resolve_eps(eps)
    if quotient:
        gram = quotient_gram(system, n, eps=eps, cap=cap)
    else:
        gram = gram_matrix(system, n, cap=cap)
    mat = gram.mat
    if mat.shape[0] == 0:
        return PositivityReport(n=n, min_eig=None, kernel_dim=0,
                                positive_semidefinite=True, positive_definite=True)
    spectrum = hermitian_spectrum(mat, eps)
    min_eig = float(spectrum[0])
    kdim = kernel_basis(mat, eps).shape[1]
    psd = min_eig >= -eps
    return PositivityReport(
        n=n,
        min_eig=min_eig,
        kernel_dim=kdim,
        positive_semidefinite=psd,
        positive_definite=psd and kdim == 0 and min_eig > eps,
    )


def p2_kernel(system: StatisticsSystem, eps: float | None = None) -> np.ndarray:
    """Kernel of id + Ttilde on the two-fold tensor power, as matrix columns."""
    n_sp = system.dim
    return kernel_basis(eye(n_sp * n_sp) + build_ttilde(system.cross), eps)


def _ideal_bases(
    system: StatisticsSystem, n: int, eps: float, cap: int | None
) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases of the degree-n slice of the braid ideal and its complement."""
    if system.braid is None:
        raise NoBraid("no braid operator: the free algebra has no quotient")
    n_sp = system.dim
    dim = n_sp**n
    _check_cap(dim, cap)
    key = ("ideal", system.content_key, n, eps)
    cached = _cache_get(key)
    if cached is not None:
        return cached
    if n < 2:
        span, comp = np.zeros((dim, 0), dtype=complex), eye(dim)
    else:
        gen = eye(n_sp * n_sp) - system.braid.mat
        blocks = [
            kron(eye(n_sp ** (p - 1)), kron(gen, eye(n_sp ** (n - p - 1))))
            for p in range(1, n)
        ]
        span, comp = span_and_complement(np.hstack(blocks), dim, eps)
    span.setflags(write=False)
    comp.setflags(write=False)
    return _cache_put(key, (span, comp))


def ideal_subspace(
    system: StatisticsSystem, n: int, eps: float | None = None, cap: int | None = None
) -> np.ndarray:
    """Degree-n slice of the two-sided ideal generated by the image of id - B.

    Spanned by the images of ``id^(p-1) (x) (id - B) (x) id^(n-p-1)`` over all
    insertion positions p; empty below degree 2.
    """
    span, _ = _ideal_bases(system, n, resolve_eps(eps), cap)
    return span


def quotient_sector(
    system: StatisticsSystem, n: int, eps: float | None = None, cap: int | None = None
) -> FockSector:
    """Sector with quotient representatives (complement of the ideal) attached."""
    eps = resolve_eps(eps)
    sector = sector_basis(system.dim, n, cap)
    _, comp = _ideal_bases(system, n, eps, cap)
    projector = comp @ dagger(comp)
    projector.setflags(write=False)
    return FockSector(
        n=sector.n,
        dim_full=sector.dim_full,
        basis=sector.basis,
        quotient=QuotientData(complement_basis=comp, projector=projector),
    )


def descended_operators(
    system: StatisticsSystem,
    i: int,
    n: int,
    eps: float | None = None,
    cap: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Creation (n -> n+1) and annihilation (n -> n-1) on quotient sectors.

    Raises :class:`NotWellDefined` unless creation and annihilation map the
    degree-n ideal slice into the neighboring slices, which is exactly the
    consistency requirement on (T, B).  At n = 0 the annihilation factor is
    the empty map (the vacuum is killed).
    """
    eps = resolve_eps(eps)
    _check_species(system, i)
    span_n, q_n = _ideal_bases(system, n, eps, cap)
    _, q_up = _ideal_bases(system, n + 1, eps, cap)
    cmat = creation_matrix(system, i, n, cap)
    if span_n.shape[1]:
        res_c = max_abs(dagger(q_up) @ (cmat @ span_n))
        if res_c > eps:
            raise NotWellDefined(
                f"creation does not preserve the ideal at degree {n} "
                f"(residual {res_c:.3e})"
            )
    if n == 0:
        ann = np.zeros((0, q_n.shape[1]), dtype=complex)
    else:
        _, q_down = _ideal_bases(system, n - 1, eps, cap)
        amat = annihilation_matrix(system, i, n, cap)
        if span_n.shape[1]:
            res_a = max_abs(dagger(q_down) @ (amat @ span_n))
            if res_a > eps:
                raise NotWellDefined(
                    f"annihilation does not preserve the ideal at degree {n} "
                    f"(residual {res_a:.3e}); (T, B) violate the consistency laws"
                )
        ann = dagger(q_down) @ amat @ q_n
    return dagger(q_up) @ cmat @ q_n, ann


def sector_report(
    system: StatisticsSystem,
    n: int,
    quotient: bool = False,
    eps: float | None = None,
    cap: int | None = None,
) -> dict:
    """JSON-ready summary of one sector, as consumed by the CLI."""
    eps = resolve_eps(eps)
    report = positivity_report(system, n, eps=eps, quotient=quotient, cap=cap)
    qdim = None
    if quotient:
        qdim = quotient_sector(system, n, eps=eps, cap=cap).quotient.dim
    gram = (quotient_gram(system, n, eps, cap) if quotient
            else gram_matrix(system, n, cap))
    herm = max_abs(gram.mat - dagger(gram.mat)) <= eps
    return {
        "sector": n,
        "dim": system.dim**n,
        "quotient_dim": qdim,
        "min_eig": report.min_eig,
        "kernel_dim": report.kernel_dim,
        "checks": {
            "gram_hermitian": herm,
            "positive_semidefinite": report.positive_semidefinite,
            "positive_definite": report.positive_definite,
        },
    }
