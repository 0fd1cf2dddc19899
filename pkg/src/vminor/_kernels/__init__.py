"""LC-orbit search kernels.

The compiled kernel (``_orbit``) is used when it was built and the graph has
at most 64 vertices; otherwise the pure-Python kernel runs. Setting the
environment variable ``VMINOR_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _orbit_py

COMPLETE, FOUND, TRUNCATED = _orbit_py.COMPLETE, _orbit_py.FOUND, _orbit_py.TRUNCATED

try:
    if os.environ.get("VMINOR_PURE_PYTHON") == "1":
        raise ImportError("pure-Python kernel forced")
    from . import _orbit as _compiled
except ImportError:
    _compiled = None

HAVE_COMPILED = _compiled is not None
BACKEND = "cython" if HAVE_COMPILED else "python"


def bfs(rows, budget, mask=0, target=None, collect=False, backend=None):
    """Dispatch to a kernel; see ``_orbit_py.bfs`` for the contract."""
    use = backend or BACKEND
    if use == "cython" and _compiled is not None and len(rows) <= 64:
        return _compiled.bfs(rows, budget, mask, target, collect)
    if use not in ("cython", "python"):
        raise ValueError(f"unknown backend {use!r}")
    return _orbit_py.bfs(rows, budget, mask, target, collect)
