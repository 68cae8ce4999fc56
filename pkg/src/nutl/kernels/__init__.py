"""Graph kernels: the compiled extension when it was built, otherwise the
pure-Python implementation.  Set NUTL_PURE=1 to force the fallback."""

import os

from . import _pure

BACKEND = "python"
scc = _pure.scc
nu_decompose = _pure.nu_decompose

if not os.environ.get("NUTL_PURE"):
    try:
        from . import _fast
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        scc = _fast.scc
        nu_decompose = _fast.nu_decompose
