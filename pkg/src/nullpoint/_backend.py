"""Kernel backend selection.

The compiled extension is preferred when it imports; otherwise the pure-Python
kernels are used. Both expose the same functions (``airy``, ``airy_vec``,
``trig_det``, ``trig_det_vec``, ``scan_trig``).
"""

from __future__ import annotations

import logging
from contextlib import contextmanager
from types import ModuleType

from . import _pykernels

logger = logging.getLogger(__name__)

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
    logger.debug("compiled kernels unavailable; using pure Python")

_BACKENDS: dict[str, ModuleType | None] = {"compiled": _ckernels, "python": _pykernels}
_active: ModuleType = _ckernels if _ckernels is not None else _pykernels


def available() -> list[str]:
    return [name for name, mod in _BACKENDS.items() if mod is not None]


def kernels() -> ModuleType:
    return _active


def name() -> str:
    return _active.BACKEND


def use(backend: str) -> None:
    """Switch the process-wide kernel backend (``"compiled"`` or ``"python"``)."""
    global _active
    if backend not in _BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {list(_BACKENDS)}")
    mod = _BACKENDS[backend]
    if mod is None:
        raise RuntimeError(f"backend {backend!r} is not available in this build")
    _active = mod


@contextmanager
def using(backend: str):
    previous = name()
    use(backend)
    try:
        yield kernels()
    finally:
        use(previous)
