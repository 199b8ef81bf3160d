"""Hot loops of the truncated Taylor model.

The compiled extension is used when it was built; setting
``HARDY_SPECTA_BACKEND=python`` forces the numpy fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("HARDY_SPECTA_BACKEND", "").lower() != "python":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

series_powers = _impl.series_powers
compose_head = _impl.compose_head
cayley_power_coeffs = _impl.cayley_power_coeffs
binomial_coeffs = _impl.binomial_coeffs


def available_backends():
    """Map backend name to kernel module for every backend importable here."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels

        found["cython"] = _ckernels
    except ImportError:
        pass
    return found


__all__ = [
    "BACKEND",
    "available_backends",
    "binomial_coeffs",
    "cayley_power_coeffs",
    "compose_head",
    "series_powers",
]
