"""Series-kernel backend selection.

Prefers the compiled `locq._speedups` extension and falls back to the
pure-Python kernel when the extension is unavailable or when the
environment variable LOCQ_PURE_PYTHON is set to a nonempty value.
Both backends implement the same three functions with identical exact
semantics; `benchmarks/bench_kernel.py` compares their throughput.
"""

import os

from . import _kernel_py

if os.environ.get("LOCQ_PURE_PYTHON"):
    _impl = _kernel_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

BACKEND = _impl.BACKEND

mul_trunc = _impl.mul_trunc
invert_ints = _impl.invert_ints
mul_binomial_inplace = _impl.mul_binomial_inplace


def available_backends():
    """Map backend name -> module, for tests and benchmarks."""
    backends = {"python": _kernel_py}
    try:
        from . import _speedups
        backends["cython"] = _speedups
    except ImportError:
        pass
    return backends
