"""Kernel backend selection.

The hot inner loops (Hermitian eigensolver, ADMM iteration, see-saw
iteration) exist twice: a Cython extension (``_core``) and a pure-numpy
fallback (``_numpy``) with identical call signatures. The extension is used
when importable; ``FAITHFUL_KERNELS=numpy|compiled|auto`` overrides.
"""

from __future__ import annotations

import os

from . import _numpy


def _load():
    choice = os.environ.get("FAITHFUL_KERNELS", "auto").lower()
    if choice not in ("auto", "compiled", "numpy"):
        raise ValueError(f"FAITHFUL_KERNELS must be auto|compiled|numpy, got {choice!r}")
    if choice == "numpy":
        return _numpy
    try:
        from . import _core
        return _core
    except ImportError:
        if choice == "compiled":
            raise ImportError(
                "FAITHFUL_KERNELS=compiled but the extension is not built; "
                "reinstall with a C compiler available")
        return _numpy


impl = _load()

eigh = impl.eigh
psd_project = impl.psd_project
sdp_admm = impl.sdp_admm
seesaw_restart = impl.seesaw_restart


def backend_name() -> str:
    return impl.name


def available_backends() -> list[str]:
    names = ["numpy"]
    try:
        from . import _core  # noqa: F401
        names.insert(0, "compiled")
    except ImportError:
        pass
    return names


def get_backend(which: str):
    """Fetch a specific kernel module (used by tests and benchmarks)."""
    if which == "numpy":
        return _numpy
    if which == "compiled":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {which!r}")
