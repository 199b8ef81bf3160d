"""Closed-form spectral regions and eigenfunction families.

Regions are small symbolic objects with exact membership tests.  Radii for
the three hyperbolic families are powers of the intrinsic parameter; the
elliptic family gives the closure of the rotation orbit.  Classes with no
closed form get :class:`NumericOnly`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InadmissibleGenerator, NumericOnlyRegion, UnsupportedClass
from .mobius import SymbolClass
from .series import TaylorFunction, boundary_power, cayley_power, check_exponent

MEMBER_TOL = 1e-12
ROOT_OF_UNITY_TOL = 1e-10
ROOT_OF_UNITY_MAX = 1024


class SpectralRegion:
    variant = ""
    certified_subset_only = False

    def contains(self, lam) -> bool:
        raise NotImplementedError

    def max_modulus(self) -> float:
        raise NotImplementedError

    def params(self) -> dict:
        return {}

    def to_json(self) -> dict:
        return {"variant": self.variant, "params": self.params(), "certifiedSubsetOnly": self.certified_subset_only}

    def isolated_points(self) -> tuple[complex, ...]:
        return ()

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Random points of the region (used by subset checks)."""
        raise NotImplementedError


def _disk_sample(rng, count, radius):
    rho = radius * np.sqrt(rng.uniform(0, 1, count))
    return rho * np.exp(2j * np.pi * rng.uniform(0, 1, count))


@dataclass(frozen=True)
class Annulus(SpectralRegion):
    r_inner: float
    r_outer: float
    closed: bool = True
    certified_subset_only: bool = False
    variant = "Annulus"

    def __post_init__(self):
        if not 0 < self.r_inner <= self.r_outer:
            raise ValueError(f"need 0 < rInner <= rOuter, got {self.r_inner}, {self.r_outer}")

    def contains(self, lam) -> bool:
        x = abs(complex(lam))
        if self.closed:
            return self.r_inner - MEMBER_TOL <= x <= self.r_outer + MEMBER_TOL
        return self.r_inner + MEMBER_TOL < x < self.r_outer - MEMBER_TOL

    def max_modulus(self) -> float:
        return self.r_outer

    def params(self) -> dict:
        return {"rInner": self.r_inner, "rOuter": self.r_outer, "closed": self.closed}

    def sample(self, rng, count):
        rho = np.sqrt(rng.uniform(self.r_inner**2, self.r_outer**2, count))
        return rho * np.exp(2j * np.pi * rng.uniform(0, 1, count))


@dataclass(frozen=True)
class ClosedDisk(SpectralRegion):
    radius: float
    certified_subset_only: bool = False
    variant = "ClosedDisk"

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")

    def contains(self, lam) -> bool:
        return abs(complex(lam)) <= self.radius + MEMBER_TOL

    def max_modulus(self) -> float:
        return self.radius

    def params(self) -> dict:
        return {"radius": self.radius}

    def sample(self, rng, count):
        return _disk_sample(rng, count, self.radius)


@dataclass(frozen=True)
class OpenDisk(SpectralRegion):
    radius: float
    certified_subset_only: bool = False
    variant = "OpenDisk"

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")

    def contains(self, lam) -> bool:
        return abs(complex(lam)) < self.radius - MEMBER_TOL

    def max_modulus(self) -> float:
        return self.radius

    def params(self) -> dict:
        return {"radius": self.radius}

    def sample(self, rng, count):
        return _disk_sample(rng, count, self.radius * (1 - 1e-9))


@dataclass(frozen=True)
class DiskUnionPoint(SpectralRegion):
    """Closed disk together with one extra point."""

    radius: float
    point: complex
    certified_subset_only: bool = False
    variant = "DiskUnionPoint"

    def contains(self, lam) -> bool:
        lam = complex(lam)
        return abs(lam) <= self.radius + MEMBER_TOL or abs(lam - self.point) <= MEMBER_TOL

    def max_modulus(self) -> float:
        return max(self.radius, abs(self.point))

    def params(self) -> dict:
        return {"radius": self.radius, "point": [self.point.real, self.point.imag]}

    def isolated_points(self):
        return () if abs(self.point) <= self.radius else (complex(self.point),)

    def sample(self, rng, count):
        out = _disk_sample(rng, count, self.radius)
        out[::10] = self.point
        return out


@dataclass(frozen=True)
class SingletonSet(SpectralRegion):
    points: tuple[complex, ...]
    certified_subset_only: bool = False
    variant = "SingletonSet"

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(complex(z) for z in self.points))

    def contains(self, lam) -> bool:
        lam = complex(lam)
        return any(abs(lam - z) <= MEMBER_TOL for z in self.points)

    def max_modulus(self) -> float:
        return max(abs(z) for z in self.points)

    def params(self) -> dict:
        return {"points": [[z.real, z.imag] for z in self.points]}

    def isolated_points(self):
        return self.points

    def sample(self, rng, count):
        return np.array(self.points)[rng.integers(0, len(self.points), count)]


@dataclass(frozen=True)
class FiniteSetClosure(SpectralRegion):
    """Closure of ``{omega**n}``: the roots of unity it cycles through, or the whole circle."""

    omega: complex
    certified_subset_only: bool = False
    variant = "FiniteSetClosure"
    order: int | None = field(init=False, default=None)

    def __post_init__(self):
        w = complex(self.omega)
        object.__setattr__(self, "omega", w)
        power = 1.0 + 0j
        for k in range(1, ROOT_OF_UNITY_MAX + 1):
            power *= w
            if abs(power - 1.0) < ROOT_OF_UNITY_TOL:
                object.__setattr__(self, "order", k)
                break

    @property
    def is_full_circle(self) -> bool:
        return self.order is None

    def points(self) -> tuple[complex, ...]:
        if self.order is None:
            raise ValueError("orbit is dense in the unit circle")
        return tuple(cmath.exp(2j * math.pi * k * self._step() / self.order) for k in range(self.order))

    def _step(self) -> int:
        # omega = exp(2 pi i j / order) for the integer j recovered here
        return round(cmath.phase(self.omega) / (2 * math.pi) * self.order) % self.order

    def contains(self, lam) -> bool:
        lam = complex(lam)
        if self.order is None:
            return abs(abs(lam) - 1.0) <= MEMBER_TOL
        return any(abs(lam - z) <= MEMBER_TOL for z in self.points())

    def max_modulus(self) -> float:
        return 1.0

    def params(self) -> dict:
        return {"omega": [self.omega.real, self.omega.imag], "order": self.order, "fullCircle": self.is_full_circle}

    def isolated_points(self):
        return () if self.order is None else self.points()

    def sample(self, rng, count):
        if self.order is None:
            return np.exp(2j * np.pi * rng.uniform(0, 1, count))
        pts = np.array(self.points())
        return pts[rng.integers(0, len(pts), count)]


@dataclass(frozen=True)
class NumericOnly(SpectralRegion):
    reason: str = "no closed form is cataloged for this class"
    variant = "NumericOnly"

    def contains(self, lam):
        raise NumericOnlyRegion(self.reason)

    def max_modulus(self):
        raise NumericOnlyRegion(self.reason)

    def params(self) -> dict:
        return {"reason": self.reason}

    def sample(self, rng, count):
        raise NumericOnlyRegion(self.reason)


def contains(region: SpectralRegion, lam) -> bool:
    return region.contains(lam)


def full_spectrum(region: SpectralRegion) -> SpectralRegion:
    """Fill bounded holes.  Only annuli and the full circle have one."""
    if isinstance(region, NumericOnly):
        raise NumericOnlyRegion(region.reason)
    if isinstance(region, Annulus):
        return ClosedDisk(region.r_outer)
    if isinstance(region, FiniteSetClosure) and region.is_full_circle:
        return ClosedDisk(1.0)
    return region


def region_from_json(obj: dict) -> SpectralRegion:
    v, prm = obj["variant"], obj.get("params", {})
    cert = bool(obj.get("certifiedSubsetOnly", False))
    if v == "Annulus":
        return Annulus(prm["rInner"], prm["rOuter"], prm.get("closed", True), cert)
    if v == "ClosedDisk":
        return ClosedDisk(prm["radius"], cert)
    if v == "OpenDisk":
        return OpenDisk(prm["radius"], cert)
    if v == "DiskUnionPoint":
        return DiskUnionPoint(prm["radius"], complex(*prm["point"]), cert)
    if v == "SingletonSet":
        return SingletonSet(tuple(complex(*z) for z in prm["points"]), cert)
    if v == "FiniteSetClosure":
        return FiniteSetClosure(complex(*prm["omega"]), cert)
    if v == "NumericOnly":
        return NumericOnly(prm.get("reason", NumericOnly.reason))
    raise ValueError(f"unknown region variant {v!r}")


# --- catalog -----------------------------------------------------------------


def _r(param) -> float:
    if isinstance(param, (tuple, list)):
        param = param[0]
    x = complex(param)
    if abs(x.imag) > 1e-12 or not 0 < x.real < 1:
        raise ValueError(f"parameter r must lie in (0, 1), got {param}")
    return x.real


def _ha_ratio(r: float) -> float:
    return (1 + r) / (1 - r)


def spectrum(cls: SymbolClass, param, p: float = 2.0) -> SpectralRegion:
    cls = SymbolClass(cls)
    p = check_exponent(p)
    if cls is SymbolClass.HA:
        k = _ha_ratio(_r(param)) ** (1.0 / p)
        return Annulus(1.0 / k, k, closed=True)
    if cls is SymbolClass.HNA_I:
        return ClosedDisk(_r(param) ** (-1.0 / p))
    if cls is SymbolClass.HNA_II:
        return DiskUnionPoint(_r(param) ** (1.0 / p), 1.0 + 0j)
    if cls is SymbolClass.EA:
        omega = complex(param[0] if isinstance(param, (tuple, list)) else param)
        return FiniteSetClosure(omega)
    return NumericOnly(f"no closed-form spectrum is cataloged for {cls.value}")


def point_spectrum(cls: SymbolClass, param, p: float = 2.0) -> SpectralRegion:
    cls = SymbolClass(cls)
    p = check_exponent(p)
    if cls is SymbolClass.HA:
        k = _ha_ratio(_r(param)) ** (1.0 / p)
        return Annulus(1.0 / k, k, closed=False)
    if cls is SymbolClass.HNA_I:
        return OpenDisk(_r(param) ** (-1.0 / p), certified_subset_only=True)
    if cls is SymbolClass.HNA_II:
        _r(param)
        return SingletonSet((1.0 + 0j,))
    return NumericOnly(f"no closed-form point spectrum is cataloged for {cls.value}")


def require_exact(region: SpectralRegion) -> SpectralRegion:
    if isinstance(region, NumericOnly):
        raise UnsupportedClass(region.reason)
    return region


@dataclass(frozen=True)
class Eigenpair:
    eigenvalue: complex
    eigenfunction: TaylorFunction
    parameter: complex

    def to_json(self) -> dict:
        return {
            "eigenvalue": [self.eigenvalue.real, self.eigenvalue.imag],
            "parameter": [self.parameter.real, self.parameter.imag],
            "eigenfunction": self.eigenfunction.to_json(),
        }


def eigenfunction(cls: SymbolClass, param, generator: complex, p: float = 2.0, n: int = 128) -> Eigenpair:
    """Cataloged eigenpair of ``C_phi`` for a canonical symbol.

    HA: ``((1+z)/(1-z))**lam`` with ``|Re lam| < 1/p``; HNA I: ``(1-z)**s``
    with ``Re s > -1/p``; HNA II: constants.  Principal branch throughout.
    """
    cls = SymbolClass(cls)
    p = check_exponent(p)
    g = complex(generator)
    if cls is SymbolClass.HA:
        r = _r(param)
        if not abs(g.real) < 1.0 / p:
            raise InadmissibleGenerator(f"need |Re(lambda)| < 1/p = {1 / p}, got {g}")
        return Eigenpair(cmath.exp(g * math.log(_ha_ratio(r))), cayley_power(g, n, p), g)
    if cls is SymbolClass.HNA_I:
        r = _r(param)
        if not g.real > -1.0 / p:
            raise InadmissibleGenerator(f"need Re(s) > -1/p = {-1 / p}, got {g}")
        return Eigenpair(cmath.exp(g * math.log(r)), boundary_power(g, n, p), g)
    if cls is SymbolClass.HNA_II:
        _r(param)
        return Eigenpair(1.0 + 0j, TaylorFunction.monomial(0, p, n), g)
    raise UnsupportedClass(f"no eigenfunction family is cataloged for {cls.value}")
