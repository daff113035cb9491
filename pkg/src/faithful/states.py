"""Bipartite state model, named families, and random-state ensembles.

Samplers are pure functions of an explicit counter-based stream, so a state
is fully determined by (master seed, sample index) regardless of worker
scheduling. Hilbert-Schmidt states are G G^dag normalized; Bures states use
the (1+U) G G^dag (1+U^dag) construction with full-size Ginibre and Haar
factors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, linalg
from .rng import Stream

TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-9


@dataclass
class BipartiteState:
    """Density matrix with local dimensions; validated on construction."""

    rho: np.ndarray
    d_a: int
    d_b: int

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (self.d_a * self.d_b, self.d_a * self.d_b):
            raise ValueError(
                f"density matrix shape {rho.shape} does not match "
                f"dimensions ({self.d_a}, {self.d_b})")
        rho = linalg.hermitian_part(rho)
        tr = float(np.trace(rho).real)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"normalization error: Tr(rho) = {tr!r}, expected 1")
        w, _ = _kernels.eigh(rho)
        if w[-1] < -POSITIVITY_TOL:
            raise ValueError(f"positivity error: minimal eigenvalue {w[-1]:.3e}")
        self.rho = rho

    @property
    def dims(self) -> tuple[int, int]:
        return (self.d_a, self.d_b)

    @property
    def d(self) -> int:
        if self.d_a != self.d_b:
            raise ValueError(f"local dimensions differ: {self.d_a} != {self.d_b}")
        return self.d_a

    def marginal(self, side: str) -> np.ndarray:
        """Reduced state of subsystem ``side`` ('A' or 'B')."""
        over = "B" if side.upper() == "A" else "A"
        return linalg.partial_trace(self.rho, self.dims, over=over)


@dataclass(frozen=True)
class SamplerConfig:
    """Which ensemble to draw from, and the stream address of the draw."""

    measure: str
    d: int
    seed: int
    index: int = 0

    def __post_init__(self):
        if self.measure not in ("bures", "hs"):
            raise ValueError(f"measure must be 'bures' or 'hs', got {self.measure!r}")
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")


def max_entangled(d: int) -> np.ndarray:
    """Vector sum_i |ii> / sqrt(d)."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    psi = np.zeros(d * d, dtype=complex)
    psi[:: d + 1] = 1.0 / np.sqrt(d)
    return psi


def isotropic(d: int, p: float) -> BipartiteState:
    """p |phi+><phi+| + (1-p) identity/d^2."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {p}")
    phi = max_entangled(d)
    rho = p * np.outer(phi, phi.conj()) + (1.0 - p) * np.eye(d * d) / (d * d)
    return BipartiteState(rho, d, d)


def werner_qubit(p: float) -> BipartiteState:
    """p |psi-><psi-| + (1-p) identity/4."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {p}")
    psi = np.zeros(4, dtype=complex)
    psi[1] = 1.0 / np.sqrt(2.0)
    psi[2] = -1.0 / np.sqrt(2.0)
    rho = p * np.outer(psi, psi.conj()) + (1.0 - p) * np.eye(4) / 4.0
    return BipartiteState(rho, 2, 2)


def ginibre(n: int, stream: Stream) -> np.ndarray:
    """n x n matrix with i.i.d. standard-normal real and imaginary parts."""
    if n < 1:
        raise ValueError("n must be >= 1")
    draws = stream.normals(2 * n * n)
    return (draws[0::2] + 1j * draws[1::2]).reshape(n, n)


def haar_unitary(n: int, stream: Stream) -> np.ndarray:
    """Haar-distributed n x n unitary (QR of a Ginibre matrix, phases fixed)."""
    g = ginibre(n, stream)
    q, r = np.linalg.qr(g)
    dr = np.diagonal(r)
    mag = np.abs(dr)
    phases = np.where(mag > 0, dr / np.where(mag > 0, mag, 1.0), 1.0)
    return q * phases


def sample_hs(d: int, stream: Stream) -> BipartiteState:
    """Hilbert-Schmidt random state on d x d: G G^dag / Tr(G G^dag)."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    g = ginibre(d * d, stream)
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return BipartiteState(rho, d, d)


def sample_bures(d: int, stream: Stream) -> BipartiteState:
    """Bures random state: (1+U) G G^dag (1+U^dag), normalized.

    Stream consumption order is pinned: the Ginibre factor first, then the
    Haar factor.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    dd = d * d
    g = ginibre(dd, stream)
    u = haar_unitary(dd, stream)
    a = (np.eye(dd) + u) @ g
    rho = a @ a.conj().T
    rho /= np.trace(rho).real
    return BipartiteState(rho, d, d)


def sample(config: SamplerConfig) -> BipartiteState:
    stream = Stream.for_sample(config.seed, config.index)
    if config.measure == "bures":
        return sample_bures(config.d, stream)
    return sample_hs(config.d, stream)


# ---------------------------------------------------------------------------
# JSON state files: {"d_a", "d_b", "re", "im"} with row-major square arrays.
# The writer emits 17 significant digits so round trips are lossless.

def _fmt17(x: float) -> str:
    return format(float(x), ".17g")


def _matrix_text(a: np.ndarray) -> str:
    rows = ("[" + ", ".join(_fmt17(x) for x in row) + "]" for row in a)
    return "[" + ", ".join(rows) + "]"


def save_state(state: BipartiteState) -> str:
    return ('{"d_a": %d, "d_b": %d, "re": %s, "im": %s}'
            % (state.d_a, state.d_b,
               _matrix_text(state.rho.real), _matrix_text(state.rho.imag)))


def load_state(doc: str | bytes) -> BipartiteState:
    try:
        data = json.loads(doc)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed state document: {exc}") from exc
    for key in ("d_a", "d_b", "re", "im"):
        if key not in data:
            raise ValueError(f"state document is missing field {key!r}")
    d_a, d_b = int(data["d_a"]), int(data["d_b"])
    n = d_a * d_b
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data["im"], dtype=float)
    if re.shape != (n, n) or im.shape != (n, n):
        raise ValueError(
            f"matrix arrays must be {n} x {n} for dimensions ({d_a}, {d_b})")
    return BipartiteState(re + 1j * im, d_a, d_b)


def save_pure(psi: np.ndarray, dims: tuple[int, int]) -> str:
    """Pure-state document: same schema with flat coefficient arrays."""
    psi = np.asarray(psi, dtype=complex).ravel()
    return ('{"d_a": %d, "d_b": %d, "re": %s, "im": %s}'
            % (dims[0], dims[1],
               "[" + ", ".join(_fmt17(x) for x in psi.real) + "]",
               "[" + ", ".join(_fmt17(x) for x in psi.imag) + "]"))


def load_pure(doc: str | bytes) -> tuple[np.ndarray, tuple[int, int]]:
    try:
        data = json.loads(doc)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed state document: {exc}") from exc
    for key in ("d_a", "d_b", "re", "im"):
        if key not in data:
            raise ValueError(f"state document is missing field {key!r}")
    d_a, d_b = int(data["d_a"]), int(data["d_b"])
    re = np.asarray(data["re"], dtype=float).ravel()
    im = np.asarray(data["im"], dtype=float).ravel()
    if re.size != d_a * d_b or im.size != d_a * d_b:
        raise ValueError(f"vector length must be {d_a * d_b}")
    psi = re + 1j * im
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > 1e-9:
        raise ValueError(f"normalization error: |psi| = {nrm!r}, expected 1")
    return psi, (d_a, d_b)
