"""Semidefinite solvers: the maximally-mixed-marginal overlap problem and
the witness-ordering program.

Both use operator splitting (ADMM): a closed-form projection onto the affine
constraints alternated with a cone projection by eigenvalue clipping. No
external solver dependency; matrices stay small (d <= 8).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import _kernels, linalg
from .criteria import BOUNDARY_MARGIN
from .states import BipartiteState

MAX_LOCAL_DIM = 8
PURITY_TOL = 1e-6
#: the residual stopping threshold is this factor below the objective tolerance
RESIDUAL_FACTOR = 1e-2


@dataclass
class SdpSolution:
    """Optimum and optimizer of max Tr(rho chi) over unital-marginal states."""

    optimum: float
    chi: np.ndarray
    purity: float
    iterations: int
    primal_residual: float
    dual_residual: float
    converged: bool
    gap_bound: float
    objective_trace: Optional[np.ndarray] = None

    def diagnostics(self) -> dict:
        return {
            "optimum": self.optimum,
            "purity": self.purity,
            "iterations": self.iterations,
            "primal_residual": self.primal_residual,
            "dual_residual": self.dual_residual,
            "converged": self.converged,
            "gap_bound": self.gap_bound,
        }


def sdp_max_overlap(operator: Union[BipartiteState, np.ndarray],
                    d: Optional[int] = None,
                    tol: float = 1e-7,
                    max_iterations: int = 50000,
                    collect_objective: bool = False) -> SdpSolution:
    """Maximize Tr(rho chi) over chi >= 0, Tr chi = 1, both marginals 1/d.

    ``operator`` may be a state or any Hermitian matrix (the optimum is
    invariant under removing marginal components). ``tol`` is the objective
    accuracy; iteration stops when both ADMM residuals fall below
    ``tol * 1e-2`` (1e-9 at the default). Non-convergence is reported in the
    result, never silently.
    """
    if isinstance(operator, BipartiteState):
        dim = operator.d
        c = operator.rho
    else:
        if d is None:
            raise ValueError("local dimension d is required for a bare matrix")
        dim = int(d)
        c = np.asarray(operator, dtype=complex)
    if dim < 2 or dim > MAX_LOCAL_DIM:
        raise ValueError(f"local dimension must lie in [2, {MAX_LOCAL_DIM}], got {dim}")
    if c.shape != (dim * dim, dim * dim):
        raise ValueError(f"operator shape {c.shape} does not match d = {dim}")
    c = linalg.hermitian_part(c)
    if tol <= 0:
        raise ValueError("tolerance must be positive")

    chi, iters, rp, rd, converged, dual_norm, trace = _kernels.sdp_admm(
        c, dim, tol=tol * RESIDUAL_FACTOR, max_iter=max_iterations,
        collect_objective=collect_objective)
    optimum = float(np.trace(c @ chi).real)
    purity = float(np.trace(chi @ chi).real)
    gap_bound = rp * dual_norm + rd * float(np.linalg.norm(chi))
    return SdpSolution(optimum=optimum, chi=chi, purity=purity,
                       iterations=iters, primal_residual=rp,
                       dual_residual=rd, converged=converged,
                       gap_bound=gap_bound, objective_trace=trace)


@dataclass(frozen=True)
class Obs3Verdict:
    """Faithfulness fragment derived from an SDP solution."""

    status: str  # unfaithful | faithful | inconclusive
    optimum: float
    purity: float
    chi: np.ndarray


def obs3_verdict(state: BipartiteState, solution: SdpSolution) -> Obs3Verdict:
    """Interpret the overlap SDP: optimum not above 1/d proves unfaithful;
    an optimum above 1/d with a pure optimizer proves faithful."""
    if not solution.converged:
        raise ValueError("refusing an unconverged SDP solution "
                         f"(residuals {solution.primal_residual:.2e}/"
                         f"{solution.dual_residual:.2e})")
    bound = 1.0 / state.d
    if solution.optimum < bound - BOUNDARY_MARGIN:
        status = "unfaithful"
    elif solution.optimum > bound + BOUNDARY_MARGIN and \
            solution.purity >= 1.0 - PURITY_TOL:
        status = "faithful"
    else:
        status = "inconclusive"
    return Obs3Verdict(status, solution.optimum, solution.purity, solution.chi)


# ---------------------------------------------------------------------------
# Witness ordering: is W weaker than a finite witness set?


@dataclass
class OrderingVerdict:
    weaker: bool
    worst_value: float
    certificate: np.ndarray
    converged: bool = True
    note: str = ""


def witness_weaker_than(w: np.ndarray, ws: Sequence[np.ndarray],
                        tol: float = 1e-9,
                        max_iterations: int = 200000) -> OrderingVerdict:
    """Minimize Tr(W rho) over unit-trace rho >= 0 with Tr(W_k rho) >= 0.

    ``weaker`` is true when the minimum is not below -1e-7: every state
    detected by W is then detected by some member of the set. The unit-trace
    normalization makes the (scale-invariant) program numerically well posed
    without changing the decision. Returns the minimizing state as a
    counterexample certificate when the answer is negative.
    """
    w = linalg.hermitian_part(np.asarray(w, dtype=complex))
    ws = [linalg.hermitian_part(np.asarray(wk, dtype=complex)) for wk in ws]
    n = w.shape[0]
    for wk in ws:
        if wk.shape != w.shape:
            raise ValueError("all witnesses must share the same dimensions")
    k = len(ws)

    # Gram matrix of the affine constraint functionals (trace; Tr(W_k.) - s_k)
    gram = np.empty((k + 1, k + 1))
    gram[0, 0] = n
    for j in range(k):
        tj = float(np.trace(ws[j]).real)
        gram[0, j + 1] = gram[j + 1, 0] = tj
        for l in range(j, k):
            gram[j + 1, l + 1] = gram[l + 1, j + 1] = \
                float(np.trace(ws[j] @ ws[l]).real) + (1.0 if j == l else 0.0)
    gram_inv = np.linalg.inv(gram)

    def proj_affine(rho, s):
        viol = np.empty(k + 1)
        viol[0] = float(np.trace(rho).real) - 1.0
        for j in range(k):
            viol[j + 1] = float(np.trace(ws[j] @ rho).real) - s[j]
        lam = gram_inv @ viol
        out = rho - lam[0] * np.eye(n)
        for j in range(k):
            out = out - lam[j + 1] * ws[j]
        return out, s + lam[1:]

    sigma = 1.0
    z_rho = np.eye(n, dtype=complex) / n
    z_s = np.array([float(np.trace(wk).real) / n for wk in ws])
    u_rho = np.zeros((n, n), dtype=complex)
    u_s = np.zeros(k)
    rp = rd = np.inf
    it = 0
    for it in range(1, max_iterations + 1):
        x_rho, x_s = proj_affine(z_rho - u_rho - w / sigma, z_s - u_s)
        z_rho_old, z_s_old = z_rho, z_s
        z_rho = _kernels.psd_project(x_rho + u_rho)
        z_s = np.maximum(x_s + u_s, 0.0)
        u_rho = u_rho + x_rho - z_rho
        u_s = u_s + x_s - z_s
        rp = np.sqrt(np.linalg.norm(x_rho - z_rho) ** 2
                     + np.linalg.norm(x_s - z_s) ** 2)
        rd = sigma * np.sqrt(np.linalg.norm(z_rho - z_rho_old) ** 2
                             + np.linalg.norm(z_s - z_s_old) ** 2)
        if max(rp, rd) <= tol:
            break
        if rp > 10.0 * rd and sigma < 1e4:
            sigma *= 2.0
            u_rho *= 0.5
            u_s *= 0.5
        elif rd > 10.0 * rp and sigma > 1e-4:
            sigma *= 0.5
            u_rho *= 2.0
            u_s *= 2.0

    converged = max(rp, rd) <= tol
    worst = float(np.trace(w @ z_rho).real)
    note = ""
    if not converged and rp > 1e-4:
        # a stuck primal residual means the constraint set is likely empty
        note = ("solver did not reach feasibility; constraint set may be "
                "infeasible, in which case W is vacuously weaker")
        return OrderingVerdict(True, worst, z_rho, converged=False, note=note)
    weaker = worst >= -BOUNDARY_MARGIN
    if not converged:
        note = "unconverged; decision based on the last iterate"
    return OrderingVerdict(weaker, worst, z_rho, converged=converged, note=note)
