"""Hot loops of the verifier and the Monte Carlo counter.

Two interchangeable backends expose the same functions:

* ``_numba`` -- ``@njit`` kernels, used by default when numba imports.
* ``_numpy`` -- vectorized numpy, always available.

Set ``LLLCOVER_BACKEND=numpy`` (or ``numba``) to force a choice. Random
numbers are never drawn inside a kernel, so both backends produce identical
results for identical seeds.
"""

import logging
import os

from . import _numpy

logger = logging.getLogger(__name__)

_requested = os.environ.get("LLLCOVER_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ImportError(f"LLLCOVER_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

backend = _numpy
if _requested != "numpy":
    try:
        from . import _numba

        backend = _numba
    except ImportError:
        if _requested == "numba":
            raise
        logger.debug("numba unavailable, using numpy kernels")

BACKEND = backend.NAME
first_deficient = backend.first_deficient
count_missing_all_ones = backend.count_missing_all_ones


def available_backends():
    """Name -> module for every backend that imports in this environment."""
    found = {"numpy": _numpy}
    try:
        from . import _numba

        found["numba"] = _numba
    except ImportError:
        pass
    return found
