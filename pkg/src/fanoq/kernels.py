"""Hot kernels: the compiled extension when it was built, else pure Python.

Set FANOQ_PURE_PYTHON=1 to force the fallback.
"""

import os

BACKEND = "python"
if not os.environ.get("FANOQ_PURE_PYTHON"):
    try:
        from ._kernels import (balance_sums, canonical_key, fano_classes,  # noqa: F401
                               fano_cycles, mutate_exchange)
        BACKEND = "cython"
    except ImportError:
        pass
if BACKEND == "python":
    from ._kernels_py import (balance_sums, canonical_key, fano_classes,  # noqa: F401
                              fano_cycles, mutate_exchange)
