"""Pure-numpy kernels: eigendecomposition, ADMM inner loop, see-saw inner loop.

Mirrors the API of the compiled core (``_core``); selected at import time when
the extension is unavailable or explicitly requested via ``FAITHFUL_KERNELS``.
"""

from __future__ import annotations

import numpy as np

name = "numpy"


def eigh(a: np.ndarray):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""
    w, v = np.linalg.eigh(a)
    return w[::-1].copy(), np.ascontiguousarray(v[:, ::-1])


def psd_project(a: np.ndarray) -> np.ndarray:
    """Nearest positive semidefinite matrix (eigenvalue clipping)."""
    w, v = np.linalg.eigh(a)
    w = np.maximum(w, 0.0)
    out = (v * w) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def _proj_marginal_affine(y: np.ndarray, d: int, eye_d: np.ndarray,
                          eye_dd: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto {trace 1, both marginals = identity/d}."""
    y4 = y.reshape(d, d, d, d)
    ya = np.einsum("ijkj->ik", y4)  # marginal on A
    yb = np.einsum("ijil->jl", y4)  # marginal on B
    t = np.trace(y)
    out = y - np.kron(ya, eye_d) / d - np.kron(eye_d, yb) / d
    out += ((t + 1.0) / (d * d)) * eye_dd
    return out


def sdp_admm(c: np.ndarray, d: int, tol: float = 1e-9, max_iter: int = 50000,
             sigma: float = 1.0, collect_objective: bool = False):
    """ADMM for  max Tr(c x)  over x >= 0, Tr x = 1, both marginals = 1/d.

    Alternates the closed-form affine projection with the PSD-cone
    projection; the penalty is rebalanced x2 whenever the residual ratio
    exceeds 10. Stops at max(primal, dual) <= tol (absolute, Frobenius).

    Returns (chi, iterations, r_primal, r_dual, converged, dual_norm, trace).
    """
    dd = d * d
    c = 0.5 * (c + c.conj().T)
    eye_d = np.eye(d)
    eye_dd = np.eye(dd)

    z = eye_dd / dd
    u = np.zeros((dd, dd), dtype=complex)
    r_primal = r_dual = np.inf
    objective = [] if collect_objective else None
    it = 0
    for it in range(1, max_iter + 1):
        x = _proj_marginal_affine(z - u + c / sigma, d, eye_d, eye_dd)
        z_old = z
        z = psd_project(x + u)
        u = u + x - z
        r_primal = np.linalg.norm(x - z)
        r_dual = sigma * np.linalg.norm(z - z_old)
        if collect_objective:
            objective.append(float(np.trace(c @ z).real))
        if max(r_primal, r_dual) <= tol:
            break
        if r_primal > 10.0 * r_dual and sigma < 1e4:
            sigma *= 2.0
            u *= 0.5
        elif r_dual > 10.0 * r_primal and sigma > 1e-4:
            sigma *= 0.5
            u *= 2.0
    converged = max(r_primal, r_dual) <= tol
    dual_norm = sigma * np.linalg.norm(u)
    if collect_objective:
        objective = np.asarray(objective)
    return z, it, float(r_primal), float(r_dual), bool(converged), \
        float(dual_norm), objective


def _polar_keep_prev(g: np.ndarray, v_prev: np.ndarray) -> np.ndarray:
    """Unitary polar factor of g; null directions keep the previous basis."""
    uu, ss, vh = np.linalg.svd(g)
    if ss[0] <= 0.0:
        return v_prev
    rank = int(np.sum(ss > 1e-13 * ss[0]))
    n = g.shape[0]
    if rank == n:
        return uu @ vh
    # complete the left factor from the previous unitary's matching columns
    w = vh.conj().T
    cols = [uu[:, i] for i in range(rank)]
    for i in range(rank, n):
        cand = v_prev @ w[:, i]
        for q in cols:
            cand = cand - q * np.vdot(q, cand)
        nrm = np.linalg.norm(cand)
        if nrm < 1e-8:  # previous column collapsed; fall back to canonical
            for j in range(n):
                cand = np.eye(n, dtype=complex)[:, j]
                for q in cols:
                    cand = cand - q * np.vdot(q, cand)
                nrm = np.linalg.norm(cand)
                if nrm >= 1e-8:
                    break
        cols.append(cand / nrm)
    u_full = np.column_stack(cols)
    return u_full @ w.conj().T


def seesaw_restart(rho: np.ndarray, d: int, v0: np.ndarray,
                   tol: float = 1e-12, max_iter: int = 10000):
    """Ascend F(V) = <phi_V| rho |phi_V> over d x d unitaries V.

    ``phi_V = (1 (x) V)|phi+>``; each step replaces V by the unitary polar
    factor of the gradient matrix. Monotone for positive semidefinite rho.
    Returns (value, V, iterations).
    """
    rho4 = rho.reshape(d, d, d, d)
    v = np.asarray(v0, dtype=complex)
    g = np.einsum("ijkl,lk->ji", rho4, v) / d
    f = float(np.vdot(v, g).real)
    it = 0
    for it in range(1, max_iter + 1):
        if np.linalg.norm(g) < 1e-300:
            break
        v_new = _polar_keep_prev(g, v)
        g_new = np.einsum("ijkl,lk->ji", rho4, v_new) / d
        f_new = float(np.vdot(v_new, g_new).real)
        gain = f_new - f
        if f_new > f:
            v, g, f = v_new, g_new, f_new
        if gain <= tol:
            break
    return f, v, it
