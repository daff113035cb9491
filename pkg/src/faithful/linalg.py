"""Dense complex linear algebra used by every other module.

Hermitian eigendecomposition routes through the selected kernel backend;
SVD is built on top of it (eigendecomposition of A^dag A with recovered and
re-orthonormalized left factors). Bipartite reshuffling operations (partial
trace / transpose, realignment, Schmidt decomposition) are pure index
manipulation plus the above.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels

HERMITICITY_TOL = 1e-9
SCHMIDT_CUTOFF = 1e-10


@dataclass(frozen=True)
class HermitianEig:
    """Spectrum (descending) and orthonormal eigenvector columns."""
    values: np.ndarray
    vectors: np.ndarray


class SvdResult(NamedTuple):
    u: np.ndarray
    s: np.ndarray
    vh: np.ndarray


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Descending Schmidt coefficients and local basis columns."""
    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray
    rank: int


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def _as_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def hermitian_part(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Symmetrize (m + m^dag)/2; reject deviations beyond ``tol``."""
    m = _as_square(m)
    dev = np.linalg.norm(m - dagger(m))
    if dev > tol * max(1.0, np.linalg.norm(m)):
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e})")
    return 0.5 * (m + dagger(m))


def eigh(m: np.ndarray) -> HermitianEig:
    """Full spectrum of a Hermitian matrix, eigenvalues descending."""
    h = hermitian_part(m)
    w, v = _kernels.eigh(h)
    return HermitianEig(values=w, vectors=v)


def _orthonormalize_columns(u: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt, in place column order."""
    u = u.copy()
    n = u.shape[1]
    for i in range(n):
        for j in range(i):
            u[:, i] -= u[:, j] * np.vdot(u[:, j], u[:, i])
        nrm = np.linalg.norm(u[:, i])
        if nrm > 1e-14:
            u[:, i] /= nrm
    return u


def svd(m: np.ndarray) -> SvdResult:
    """Thin SVD, singular values descending, m = u @ diag(s) @ vh."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError("svd expects a matrix")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix contains NaN or Inf entries")
    rows, cols = m.shape
    if rows < cols:
        u, s, vh = svd(dagger(m))
        return SvdResult(dagger(vh), s, dagger(u))

    h = dagger(m) @ m
    w, v = _kernels.eigh(0.5 * (h + dagger(h)))
    s = np.sqrt(np.maximum(w, 0.0))
    scale = max(float(s[0]), 1e-300)
    u = np.zeros((rows, cols), dtype=complex)
    filled = 0
    for i in range(cols):
        if s[i] > 1e-13 * scale:
            u[:, i] = (m @ v[:, i]) / s[i]
            filled = i + 1
    # complete columns for (near-)zero singular values
    for i in range(filled, cols):
        for j in range(rows):
            cand = np.zeros(rows, dtype=complex)
            cand[j] = 1.0
            for k in range(i):
                cand -= u[:, k] * np.vdot(u[:, k], cand)
            nrm = np.linalg.norm(cand)
            if nrm > 0.5:
                u[:, i] = cand / nrm
                break
    u = _orthonormalize_columns(u)
    return SvdResult(u, s, dagger(v))


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values."""
    return float(np.sum(svd(m).s))


def _reshape4(m: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    da, db = dims
    m = _as_square(m)
    if m.shape[0] != da * db:
        raise ValueError(f"matrix of size {m.shape[0]} does not match dims {dims}")
    return m.reshape(da, db, da, db)


def partial_trace(m: np.ndarray, dims: tuple[int, int], over: str) -> np.ndarray:
    """Trace out subsystem ``over`` ('A' or 'B')."""
    m4 = _reshape4(m, dims)
    if over.upper() == "B":
        return np.einsum("ijkj->ik", m4)
    if over.upper() == "A":
        return np.einsum("ijil->jl", m4)
    raise ValueError("over must be 'A' or 'B'")


def partial_transpose(m: np.ndarray, dims: tuple[int, int], which: str = "B") -> np.ndarray:
    """Transpose subsystem ``which``; exact involution."""
    m4 = _reshape4(m, dims)
    d = dims[0] * dims[1]
    if which.upper() == "B":
        return m4.transpose(0, 3, 2, 1).reshape(d, d)
    if which.upper() == "A":
        return m4.transpose(2, 1, 0, 3).reshape(d, d)
    raise ValueError("which must be 'A' or 'B'")


def realign(m: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    """Realignment R(m)[(i,j),(k,l)] = m[(i,k),(j,l)], shape (da^2, db^2)."""
    da, db = dims
    m4 = _reshape4(m, dims)
    return m4.transpose(0, 2, 1, 3).reshape(da * da, db * db)


def unrealign(r: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    """Inverse rearrangement of :func:`realign`."""
    da, db = dims
    r = np.asarray(r, dtype=complex)
    if r.shape != (da * da, db * db):
        raise ValueError(f"realigned matrix has shape {r.shape}, expected {(da*da, db*db)}")
    return r.reshape(da, da, db, db).transpose(0, 2, 1, 3).reshape(da * db, da * db)


def schmidt_decompose(psi: np.ndarray, dims: tuple[int, int]) -> SchmidtDecomposition:
    """Schmidt decomposition of a unit-norm bipartite vector.

    Returns descending coefficients above the rank cutoff (1e-10) together
    with the matching local basis columns: psi = sum_k s_k |a_k>|b_k>.
    """
    da, db = dims
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != da * db:
        raise ValueError(f"vector of length {psi.size} does not match dims {dims}")
    nrm = np.linalg.norm(psi)
    if nrm < 1e-12:
        raise ValueError("cannot decompose the zero vector")
    if abs(nrm - 1.0) > 1e-9:
        raise ValueError(f"state vector is not normalized (norm {nrm!r})")
    u, s, vh = svd(psi.reshape(da, db))
    rank = int(np.sum(s > SCHMIDT_CUTOFF))
    rank = max(rank, 1)
    return SchmidtDecomposition(
        coefficients=s[:rank].copy(),
        left=u[:, :rank].copy(),
        right=vh[:rank, :].conj().T.copy(),
        rank=rank,
    )
