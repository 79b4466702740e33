"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``CATASSOC_PURE_PYTHON`` is set to a non-empty value,
the pure-Python module is used.  Both expose the same functions.
"""
import os

from . import _pykernels

if os.environ.get("CATASSOC_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

rotate_code = _impl.rotate_code
rotation_graph = _impl.rotation_graph
bfs = _impl.bfs
eccentricities = _impl.eccentricities
optimal_bst_tables = _impl.optimal_bst_tables
wilber_lambdas = _impl.wilber_lambdas


def available_backends():
    """Mapping of backend name to module, for benchmarks and cross-checks."""
    backends = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        backends["cython"] = _ckernels
    return backends
