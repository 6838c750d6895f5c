"""Hot-loop backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used. Both produce identical results.
"""
from __future__ import annotations

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_active = _ckernels if _ckernels is not None else _pykernels


def backend() -> str:
    return "cython" if _active is _ckernels and _ckernels is not None else "python"


def use_backend(name: str) -> None:
    global _active
    try:
        _active = BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def dl_walk(p: int, q: int, choices: np.ndarray) -> np.ndarray:
    return _active.dl_walk(p, q, np.ascontiguousarray(choices, dtype=np.int64))


def lamplighter_walk(p: int, choices: np.ndarray) -> np.ndarray:
    return _active.lamplighter_walk(p, np.ascontiguousarray(choices, dtype=np.int64))


def sol_length_grad(pts: np.ndarray, p: float, q: float) -> tuple[float, np.ndarray]:
    return _active.sol_length_grad(np.ascontiguousarray(pts, dtype=np.float64), p, q)
