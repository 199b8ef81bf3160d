"""Truncated Taylor models of Hardy-space functions.

A :class:`TaylorFunction` is the polynomial ``sum_n c_n z^n`` together with
the Hardy exponent ``p`` it is measured in.  Truncations are polynomials, so
boundary values on the unit circle are exact and norms are plain boundary
integrals.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidExponent, NotSelfMap
from .mobius import MobiusMap, is_self_map

DEFAULT_TRUNC = 128
DEFAULT_QUAD = 4096


def check_exponent(p: float) -> float:
    p = float(p)
    if not (1.0 < p < math.inf):
        raise InvalidExponent(f"Hardy exponent must lie in (1, inf), got {p}")
    return p


def conjugate_exponent(p: float) -> float:
    p = check_exponent(p)
    return p / (p - 1.0)


@dataclass(frozen=True, eq=False)
class TaylorFunction:
    """First ``N`` Taylor coefficients of an element of ``H^p``."""

    coeffs: np.ndarray
    p: float = 2.0

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if c.size == 0:
            raise ValueError("a TaylorFunction needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "p", float(self.p))

    @classmethod
    def monomial(cls, n: int, p: float = 2.0, length: int | None = None):
        c = np.zeros(max(n + 1, length or 0), dtype=np.complex128)
        c[n] = 1.0
        return cls(c, p)

    @property
    def n(self) -> int:
        return self.coeffs.size

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    @property
    def vanishes_at_zero(self) -> bool:
        return self.coeffs[0] == 0

    def padded(self, n: int) -> np.ndarray:
        out = np.zeros(n, dtype=np.complex128)
        k = min(n, self.n)
        out[:k] = self.coeffs[:k]
        return out

    def truncate(self, n: int) -> "TaylorFunction":
        return TaylorFunction(self.padded(n), self.p)

    def with_exponent(self, p: float) -> "TaylorFunction":
        return TaylorFunction(self.coeffs, p)

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __call__(self, z):
        return evaluate(self, z)

    def to_json(self) -> dict:
        return {"p": self.p, "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "TaylorFunction":
        try:
            coeffs = [complex(float(re), float(im)) for re, im in obj["coeffs"]]
            p = float(obj.get("p", 2.0))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError('function JSON must look like {"p": 2, "coeffs": [[re,im],...]}') from exc
        return cls(np.array(coeffs), p)


def evaluate(f: TaylorFunction, z):
    """Horner evaluation of the truncated polynomial."""
    return np.polyval(f.coeffs[::-1], z)


def boundary_values(f: TaylorFunction, quad: int) -> np.ndarray:
    """``f`` at the ``quad`` equispaced points ``exp(2 pi i k / quad)``."""
    if quad < f.n:
        raise ValueError(f"need at least {f.n} boundary points, got {quad}")
    return np.fft.ifft(f.padded(quad)) * quad


def hp_norm(f: TaylorFunction, quad: int = DEFAULT_QUAD, p: float | None = None) -> float:
    """``(mean |f|^p over quad boundary points)^(1/p)``."""
    p = check_exponent(f.p if p is None else p)
    if quad < 4 * f.n:
        raise ValueError(f"quadrature needs at least 4N = {4 * f.n} points, got {quad}")
    vals = np.abs(boundary_values(f, quad))
    top = vals.max()
    if top == 0.0:
        return 0.0
    # scaled so |f|^p neither underflows nor overflows
    return float(top * np.mean((vals / top) ** p) ** (1.0 / p))


def pairing(f: TaylorFunction, g: TaylorFunction) -> complex:
    """``(1/2pi) int f conj(g)`` in its Parseval form ``sum c_n(f) conj(c_n(g))``."""
    n = min(f.n, g.n)
    return complex(np.vdot(g.coeffs[:n], f.coeffs[:n]))


def lft_series(m: MobiusMap, n: int) -> np.ndarray:
    """First ``n`` Taylor coefficients of ``(az + b)/(cz + d)`` about 0."""
    a, b, c, d = m.coeffs
    if d == 0:
        raise ValueError("map has a pole at the origin")
    q = -c / d
    out = np.empty(n, dtype=np.complex128)
    out[0] = b / d
    if n > 1:
        k = np.arange(1, n)
        out[1:] = (b * q**k + a * q ** (k - 1)) / d
    return out


def truncated_compose(f: TaylorFunction, m: MobiusMap, n: int) -> TaylorFunction:
    """First ``n`` Taylor coefficients of ``f o m``."""
    if not is_self_map(m):
        raise NotSelfMap("composition needs a self-map of the disc")
    phi = lft_series(m, n)
    return TaylorFunction(_kernels.compose_head(f.coeffs, phi, n), f.p)


def cayley_power(lam: complex, n: int, p: float = 2.0) -> TaylorFunction:
    """Truncation of ``((1 + z)/(1 - z))**lam`` (principal branch)."""
    return TaylorFunction(_kernels.cayley_power_coeffs(lam, n), p)


def boundary_power(s: complex, n: int, p: float = 2.0) -> TaylorFunction:
    """Truncation of ``(1 - z)**s`` (principal branch)."""
    return TaylorFunction(_kernels.binomial_coeffs(s, n), p)


# --- norms of f o m for rational m -----------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


def _graded_nodes(delta: float, degree: int):
    """Nodes/weights for ``int_0^pi g(t) dt`` graded geometrically toward ``t = 0``.

    With ``t = exp(u)`` a feature of width ``delta`` at the origin becomes a
    bump of unit width in ``u``; panels cover ``u`` from ``log(delta) - 40``.
    """
    u_lo, u_hi = math.log(delta) - 40.0, math.log(math.pi)
    width = min(0.5, 8.0 / (degree + 1))
    panels = max(1, math.ceil((u_hi - u_lo) / width))
    edges = np.linspace(u_lo, u_hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    u = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    t = np.exp(u)
    return t, w * t


@dataclass(frozen=True)
class PoleForm:
    """``w -> kappa + mu/(w - P)`` with ``P = (1 + delta) exp(i theta0)``.

    Keeping ``delta`` separate from ``P`` lets the boundary values be computed
    without cancellation when the pole sits within rounding distance of the
    circle: at ``w = exp(i(theta0 + t))``, ``w - P = exp(i theta0)(expm1(it) - delta)``.
    """

    kappa: complex
    mu: complex
    theta0: float
    delta: float

    @classmethod
    def of(cls, m: MobiusMap) -> "PoleForm | None":
        a, b, c, d = m.coeffs
        if c == 0:
            return None
        pole = -d / c
        det = a * d - b * c
        return cls(a / c, -det / (c * c), cmath.phase(pole), abs(pole) - 1.0)

    def at_offset(self, t):
        gap = np.exp(1j * self.theta0) * (np.expm1(1j * t) - self.delta)
        return self.kappa + self.mu / gap


def circle_average(g, theta0: float = 0.0, delta: float | None = None, degree: int = 0,
                   quad: int = DEFAULT_QUAD) -> float:
    """``(1/2pi) int g(t) dt`` over one turn of the angle ``theta0 + t``.

    ``g`` receives offsets ``t`` from ``theta0``.  When a feature of width
    ``delta < 1`` sits at ``t = 0`` a geometrically graded rule is used on both
    sides of it; otherwise a trapezoid rule with enough points for ``degree``.
    """
    if delta is None or delta >= 1.0:
        count = max(quad, 32 * (degree + 1))
        t = 2.0 * np.pi * np.arange(count) / count
        return float(np.mean(g(t)))
    t, w = _graded_nodes(max(delta, 1e-300), degree)
    return float(np.dot(w, g(t) + g(-t)) / (2.0 * math.pi))


def composition_norm(f: TaylorFunction, m: MobiusMap, p: float | None = None, quad: int = DEFAULT_QUAD) -> float:
    """``||f o m||_p`` by quadrature of ``|f(m(z))|^p`` on the circle.

    When the pole of ``m`` is within distance 1 of the circle the integrand is
    concentrated near the pole's direction on the scale of that distance, so
    the graded rule centred there replaces the uniform one.
    """
    p = check_exponent(f.p if p is None else p)
    form = PoleForm.of(m)
    if form is None or form.delta >= 1.0:
        theta0 = 0.0 if form is None else form.theta0
        integrand = lambda t: np.abs(evaluate(f, m(np.exp(1j * (theta0 + t))))) ** p
        return circle_average(integrand, degree=f.degree, quad=quad) ** (1.0 / p)
    return pole_form_norm(f, form, p, quad=quad)


def pole_form_norm(f: TaylorFunction, form: PoleForm, p: float, outer: MobiusMap | None = None,
                   quad: int = DEFAULT_QUAD) -> float:
    """``||f o outer o psi o outer^-1||_p`` where ``psi`` is given by ``form``.

    ``outer`` is a disc automorphism (identity when omitted); the substitution
    ``z = outer(w)`` moves the integral to the circle in ``w`` with weight
    ``|outer'(w)|``.
    """
    def integrand(t):
        vals = form.at_offset(t)
        if outer is None:
            return np.abs(evaluate(f, vals)) ** p
        w = np.exp(1j * (form.theta0 + t))
        return np.abs(evaluate(f, outer(vals))) ** p * np.abs(outer.derivative(w))

    return circle_average(integrand, form.theta0, form.delta, f.degree, quad) ** (1.0 / p)
