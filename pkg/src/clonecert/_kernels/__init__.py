"""Hot numerical kernels with an import-time backend choice.

The compiled Cython extension (`_core`) is preferred when importable; the
numpy reference (`_pyref`) is the fallback. Set CLONECERT_KERNELS=python or
CLONECERT_KERNELS=compiled to force one; forcing an unavailable backend is an
ImportError rather than a silent downgrade.

`use_backend` rebinds the dispatch for benchmarks and tests. It mutates
module state, so it is not meant for concurrent use; normal library code
never calls it.
"""
from __future__ import annotations

import os

from . import _pyref

try:
    from . import _core
except ImportError:  # extension not built
    _core = None

_ALIASES = {
    "python": "python", "py": "python",
    "compiled": "compiled", "c": "compiled", "cython": "compiled",
}


def available_backends() -> tuple[str, ...]:
    return ("compiled", "python") if _core is not None else ("python",)


def _module_for(name: str):
    try:
        canonical = _ALIASES[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown kernel backend {name!r}; expected 'python' or 'compiled'") from None
    if canonical == "compiled":
        if _core is None:
            raise ImportError("compiled kernel backend requested but the extension is not built")
        return "compiled", _core
    return "python", _pyref


_env = os.environ.get("CLONECERT_KERNELS", "")
if _env:
    BACKEND, _active = _module_for(_env)
else:
    BACKEND, _active = ("compiled", _core) if _core is not None else ("python", _pyref)


def use_backend(name: str) -> str:
    """Force a backend by name; returns the canonical name now active."""
    global BACKEND, _active
    BACKEND, _active = _module_for(name)
    return BACKEND


def eigh_descending(a):
    return _active.eigh_descending(a)


def partial_trace_ket(amps, dims, keep):
    return _active.partial_trace_ket(amps, dims, keep)


def kron_vec(a, b):
    return _active.kron_vec(a, b)
