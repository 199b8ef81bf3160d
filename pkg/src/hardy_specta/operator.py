"""Composition operators on the truncated monomial basis.

``A[k, n]`` is the ``k``-th Taylor coefficient of ``phi**n``, so ``A @ c``
maps the coefficients of ``f`` to those of ``f o phi`` (up to truncation).
Monomials are orthonormal for the boundary pairing, which makes the adjoint
the conjugate transpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NotSelfMap, NumericalUnderflow, ZeroFunction
from .mobius import MobiusMap, SymbolClass, is_self_map, to_canonical
from .series import (
    DEFAULT_QUAD,
    PoleForm,
    TaylorFunction,
    check_exponent,
    composition_norm,
    conjugate_exponent,
    hp_norm,
    lft_series,
    pole_form_norm,
)

DEFAULT_WINDOW = (10, 30)
DEFAULT_ADJOINT_WINDOW = (2, 5)
NORM_RANGE = (1e-300, 1e300)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    symbol: MobiusMap
    adjoint: bool = False

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def apply(self, f: TaylorFunction) -> TaylorFunction:
        return TaylorFunction(self.entries @ f.padded(self.n), f.p)

    def conj_transpose(self) -> "OperatorMatrix":
        return OperatorMatrix(np.ascontiguousarray(self.entries.conj().T), self.symbol, not self.adjoint)

    def to_json(self) -> dict:
        rows = [[[float(x.real), float(x.imag)] for x in row] for row in self.entries]
        return {"symbol": self.symbol.to_json(), "adjoint": self.adjoint, "n": self.n, "entries": rows}


def build_matrix(m: MobiusMap, n: int) -> OperatorMatrix:
    if not is_self_map(m):
        raise NotSelfMap("composition operators need a self-map of the disc")
    if n < 1:
        raise ValueError("truncation order must be positive")
    entries = _kernels.series_powers(lft_series(m, n), n)
    entries.setflags(write=False)
    return OperatorMatrix(entries, m)


def adjoint_matrix(a: OperatorMatrix) -> OperatorMatrix:
    return a.conj_transpose()


def iterate_symbol(m: MobiusMap, n: int) -> MobiusMap:
    if n < 1:
        raise ValueError("iterate index must be >= 1")
    return m.power(n)


# --- iterates in pole form ---------------------------------------------------


def _canonical_iterate_form(cls: SymbolClass, r: float, n: int) -> PoleForm | None:
    """Pole form of the ``n``-th iterate of a canonical HA / HNA II map.

    The iterates of these two families have their pole approaching the
    circle geometrically fast; the parameter laws give the pole distance
    without forming ``1 - r**n`` by subtraction.
    """
    if cls is SymbolClass.HNA_II:
        # r z/(1 - (1 - r) z) with r -> r**n
        rn = math.exp(n * math.log(r))
        q = -math.expm1(n * math.log(r))
        return PoleForm(-rn / q, -rn / (q * q), 0.0, rn / q)
    if cls is SymbolClass.HA:
        # (z + r)/(1 + r z) with (1 + r_n)/(1 - r_n) = ((1 + r)/(1 - r))**n
        log_k = n * math.log((1 + r) / (1 - r))
        s = 2.0 * math.exp(-log_k) / (1.0 + math.exp(-log_k)) if log_k > 0 else 2.0 / (math.exp(log_k) + 1.0)
        rn = 1.0 - s
        return PoleForm(1.0 / rn, 1.0 - 1.0 / rn**2, math.pi, s / rn)
    return None


def _iterate_norms(m: MobiusMap, f: TaylorFunction, p: float, ns, quad: int) -> np.ndarray:
    dec = to_canonical(m)
    sigma = dec.conjugator
    fast = dec.symbol_class in (SymbolClass.HA, SymbolClass.HNA_II) and sigma is not None
    if fast and sigma.is_identity():
        sigma = None
    out = []
    for n in ns:
        if fast:
            form = _canonical_iterate_form(dec.symbol_class, dec.param[0].real, n)
            out.append(pole_form_norm(f, form, p, outer=sigma, quad=quad))
        else:
            out.append(composition_norm(f, iterate_symbol(m, n), p, quad=quad))
    return np.array(out)


# --- local spectral radius -------------------------------------------------------


@dataclass(frozen=True)
class RadiusEstimate:
    estimate: float
    window: tuple[int, int]
    residual: float
    norms: tuple[float, ...]

    def to_json(self) -> dict:
        return {"estimate": self.estimate, "slopeWindow": list(self.window), "residual": self.residual}


def _fit(ns, norms, window) -> RadiusEstimate:
    lo, hi = NORM_RANGE
    bad = [(n, x) for n, x in zip(ns, norms) if not (lo <= x <= hi)]
    if bad:
        raise NumericalUnderflow(f"||T^n f|| left [{lo:g}, {hi:g}] at n = {bad[0][0]} ({bad[0][1]:g})")
    logs = np.log(norms)
    slope, icpt = np.polyfit(ns, logs, 1)
    resid = float(np.sqrt(np.mean((logs - (slope * ns + icpt)) ** 2)))
    return RadiusEstimate(float(math.exp(slope)), tuple(window), resid, tuple(float(x) for x in norms))


def local_spectral_radius_estimate(m: MobiusMap, f: TaylorFunction, adjoint: bool = False,
                                   window: tuple[int, int] | None = None, p: float | None = None,
                                   n: int = 256, quad: int = DEFAULT_QUAD) -> RadiusEstimate:
    """Slope fit of ``log ||T^k f||`` over ``k`` in ``window``, exponentiated.

    ``T = C_phi`` uses exact symbol iteration and boundary quadrature.  The
    adjoint uses powers of the conjugate-transposed ``n x n`` matrix and the
    norm of the conjugate exponent.
    """
    if not is_self_map(m):
        raise NotSelfMap("composition operators need a self-map of the disc")
    p = check_exponent(f.p if p is None else p)
    if not np.any(f.coeffs):
        raise ZeroFunction("the local spectral radius of 0 is not defined")
    if window is None:
        window = DEFAULT_ADJOINT_WINDOW if adjoint else DEFAULT_WINDOW
    n0, n1 = int(window[0]), int(window[1])
    if not 0 <= n0 < n1:
        raise ValueError(f"bad regression window {window}")
    ns = np.arange(n0, n1 + 1)
    if not adjoint:
        return _fit(ns, _iterate_norms(m, f, p, ns, quad), (n0, n1))

    q = conjugate_exponent(p)
    star = build_matrix(m, n).conj_transpose().entries
    v = f.padded(n)
    norms = []
    for k in range(n1 + 1):
        if k >= n0:
            norms.append(hp_norm(TaylorFunction(v, q), max(quad, 4 * n)))
        v = star @ v
    return _fit(ns, np.array(norms), (n0, n1))
