"""Backend selection for the hot loops.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
pure-Python ``_pykernels`` takes over. Set ``TIGROUPS_KERNELS=python`` to
force the fallback (used by the benchmark and the backend-parity tests).
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

_requested = os.environ.get("TIGROUPS_KERNELS", "auto").lower()

_ext = None
if _requested != "python":
    try:
        from . import _ckernels as _ext  # type: ignore[no-redef]
    except ImportError:
        if _requested == "cython":
            raise
        _ext = None

BACKEND = "cython" if _ext is not None else "python"


def _mask_to_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def dimino(G, base, gens, backend: str | None = None) -> tuple[np.ndarray, int]:
    """Closure of subgroup ``base`` plus ``gens``; returns ``(elements, bitset)``."""
    use = backend or BACKEND
    if use == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernels are not available")
        elems, mask = _ext.dimino(G.mul, base, gens)
    else:
        elems, mask = _pykernels.dimino(G.rows, base, gens)
    return elems, _mask_to_bits(mask)


def conjugate_bits(G, members, g: int, backend: str | None = None) -> int:
    use = backend or BACKEND
    if use == "cython":
        mask = _ext.conjugate_members(G.mul, G.inv, members, g)
    else:
        mask = _pykernels.conjugate_members(G.rows, G.inv, members, g)
    return _mask_to_bits(mask)


def associativity_violation(G, backend: str | None = None):
    use = backend or BACKEND
    if use == "cython":
        return _ext.associativity_violation(G.mul)
    return _pykernels.associativity_violation(G.rows)


def available_backends() -> list[str]:
    return ["cython", "python"] if _ext is not None else ["python"]
