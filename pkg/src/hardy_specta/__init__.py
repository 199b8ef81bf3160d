"""Composition operators with linear fractional symbols on Hardy spaces.

Submodules:

* ``mobius``    symbol algebra, fixed points, classes, canonical forms
* ``series``    truncated Taylor models, H^p norms and the dual pairing
* ``operator``  matrix models of C_phi and C_phi*, local spectral radii
* ``catalog``   closed-form spectra and eigenfunction families
* ``verdicts``  SVEP / property (C) / decomposability and local spectra
* ``harness``   numerical corroboration checks
* ``cli``       the ``hardy-specta`` command
"""

from ._kernels import BACKEND
from .catalog import full_spectrum, point_spectrum, spectrum
from .mobius import MobiusMap, SymbolClass, canonical_map, classify, fixed_points, to_canonical
from .series import TaylorFunction
from .verdicts import verdict

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "MobiusMap",
    "SymbolClass",
    "TaylorFunction",
    "canonical_map",
    "classify",
    "fixed_points",
    "full_spectrum",
    "point_spectrum",
    "spectrum",
    "to_canonical",
    "verdict",
]
