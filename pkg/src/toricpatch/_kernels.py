"""Backend selection for the term-arithmetic kernels.

The compiled backend (``toricpatch._speedups``) is preferred when it was
built; set ``TORICPATCH_PURE=1`` in the environment to force the pure-Python
fallback, or call :func:`use` to switch at runtime (the benchmark and the
backend-agreement tests do this).
"""

import os

from toricpatch import _pure

_BACKENDS = {"python": _pure}

try:
    from toricpatch import _speedups
except ImportError:
    _speedups = None
else:
    _BACKENDS["cython"] = _speedups


def available_backends():
    return sorted(_BACKENDS)


def _default_name():
    if os.environ.get("TORICPATCH_PURE"):
        return "python"
    return "cython" if "cython" in _BACKENDS else "python"


active_name = _default_name()
active = _BACKENDS[active_name]


def use(name):
    """Switch the active backend; returns the previous backend name."""
    global active, active_name
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    previous = active_name
    active_name = name
    active = _BACKENDS[name]
    return previous
