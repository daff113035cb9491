"""Counter-based random streams for reproducible parallel sampling.

The generator is SplitMix64 used in counter mode: output ``j`` of a stream
is a pure function of ``(key, j)``, so any draw can be produced without
generating its predecessors and results never depend on worker scheduling.
Per-sample streams are derived from ``(master seed, sample index)``.
"""

from __future__ import annotations

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SEED_SALT = np.uint64(0x5851F42D4C957F2D)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)

_U64 = np.uint64
_TWO53_INV = 1.0 / 9007199254740992.0  # 2**-53


def _mix(z: np.ndarray) -> np.ndarray:
    """SplitMix64 output mix on uint64 values (vectorized, wraps mod 2^64)."""
    z = (z ^ (z >> _U64(30))) * _M1
    z = (z ^ (z >> _U64(27))) * _M2
    return z ^ (z >> _U64(31))


def stream_key(seed: int, index: int) -> int:
    """Derive the 64-bit key of sub-stream ``index`` from a master seed."""
    s = _mix(np.asarray(_U64(seed & 0xFFFFFFFFFFFFFFFF) ^ _SEED_SALT))
    return int(_mix(s + _U64((index + 1) & 0xFFFFFFFFFFFFFFFF) * _GAMMA))


class Stream:
    """A deterministic stream of uniforms / normals addressed by a counter."""

    def __init__(self, key: int, counter: int = 0):
        self.key = _U64(key & 0xFFFFFFFFFFFFFFFF)
        self.counter = int(counter)

    @classmethod
    def for_sample(cls, seed: int, index: int) -> "Stream":
        return cls(stream_key(seed, index))

    def raw(self, n: int) -> np.ndarray:
        """Next ``n`` raw 64-bit words."""
        j = np.arange(self.counter + 1, self.counter + n + 1, dtype=np.uint64)
        self.counter += n
        return _mix(self.key + j * _GAMMA)

    def uniforms(self, n: int) -> np.ndarray:
        """Next ``n`` doubles, uniform on [0, 1)."""
        return (self.raw(n) >> _U64(11)).astype(np.float64) * _TWO53_INV

    def normals(self, n: int) -> np.ndarray:
        """Next ``n`` standard normals via Box-Muller.

        Pairs are always consumed whole (2*ceil(n/2) uniforms), keeping the
        counter advance independent of parity.
        """
        pairs = (n + 1) // 2
        u = self.uniforms(2 * pairs)
        u1, u2 = u[0::2], u[1::2]
        # 1 - u1 lies in (0, 1], so the log is finite
        r = np.sqrt(-2.0 * np.log1p(-u1))
        theta = 2.0 * np.pi * u2
        out = np.empty(2 * pairs)
        out[0::2] = r * np.cos(theta)
        out[1::2] = r * np.sin(theta)
        return out[:n]

    def spawn(self, index: int) -> "Stream":
        """Derive an independent child stream (restart loops, workers)."""
        return Stream(stream_key(int(self.key), index))
