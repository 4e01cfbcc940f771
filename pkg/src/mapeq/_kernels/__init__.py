"""Hot numeric kernels with two interchangeable backends.

The numba backend (JIT-compiled loops) is used when numba imports cleanly;
``MAPEQ_BACKEND=numpy`` forces the vectorized pure-numpy path, and
``MAPEQ_BACKEND=numba`` makes a missing numba an error instead of a silent
fallback.  Both backends implement identical contracts; results agree to
floating-point roundoff (summation order differs).  See
``benchmarks/bench_kernels.py`` for a timing comparison.
"""

import os

_choice = os.environ.get("MAPEQ_BACKEND", "").strip().lower()

if _choice not in ("", "numba", "numpy"):
    raise ValueError(
        f"MAPEQ_BACKEND={_choice!r} not recognized (use 'numba' or 'numpy')"
    )

if _choice == "numpy":
    from . import _numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _numba as _impl

        BACKEND = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        from . import _numpy as _impl

        BACKEND = "numpy"

autocorr_circular = _impl.autocorr_circular
autocorr_truncated = _impl.autocorr_truncated
weighted_autocorr_circular = _impl.weighted_autocorr_circular
pair_counts_circular = _impl.pair_counts_circular
dft_spectrum = _impl.dft_spectrum

__all__ = [
    "BACKEND",
    "autocorr_circular",
    "autocorr_truncated",
    "weighted_autocorr_circular",
    "pair_counts_circular",
    "dft_spectrum",
]
