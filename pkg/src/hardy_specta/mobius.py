"""Linear fractional self-maps of the unit disc.

A :class:`MobiusMap` stores ``z -> (az + b)/(cz + d)`` in the ``ad - bc = 1``
normalization.  On top of the group algebra this module locates fixed points,
sorts a self-map into one of the seven symbol classes and conjugates it to the
standard representative of its class.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateMap, IdentityMap, NotSelfMap

INF = complex(math.inf, 0.0)


def is_infinite(z) -> bool:
    return cmath.isinf(z)


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds.

    ``eps_par`` is relative to ``(|a| + |d|)**2``; ``eps_circle`` decides
    whether a fixed point lies on the unit circle.
    """

    eps_fix: float = 1e-10
    eps_par: float = 1e-9
    eps_det: float = 1e-12
    eps_circle: float = 1e-8


DEFAULT_TOL = Tolerances()


class SymbolClass(str, enum.Enum):
    HA = "HA"
    EA = "EA"
    PA = "PA"
    HNA_I = "HNA_I"
    HNA_II = "HNA_II"
    PNA = "PNA"
    LOX = "LOX"

    def __str__(self) -> str:
        return self.value


AUTOMORPHISM_CLASSES = frozenset({SymbolClass.HA, SymbolClass.EA, SymbolClass.PA})
PARABOLIC_CLASSES = frozenset({SymbolClass.PA, SymbolClass.PNA})


def _sign_key(x: complex) -> float:
    if abs(x.real) > 1e-12 * abs(x):
        return x.real
    return x.imag


@dataclass(frozen=True)
class MobiusMap:
    """``z -> (a z + b)/(c z + d)`` with ``ad - bc`` scaled to 1.

    The projective representative is fixed at construction: the first
    coefficient that is not negligible gets a nonnegative real part.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    tol: Tolerances = field(default=DEFAULT_TOL, repr=False, compare=False)
    # products of unimodular matrices are unimodular by construction, even when
    # the computed ad - bc cancels badly (long iterates); such products skip
    # both the degeneracy check and the rescaling
    check_det: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        coeffs = [complex(x) for x in (self.a, self.b, self.c, self.d)]
        scale = max(abs(x) for x in coeffs)
        if not math.isfinite(scale) or scale == 0.0:
            raise DegenerateMap(f"invalid coefficients {coeffs}")
        det = coeffs[0] * coeffs[3] - coeffs[1] * coeffs[2]
        if self.check_det and abs(det) < self.tol.eps_det * scale * scale:
            raise DegenerateMap(f"ad - bc = {det!r} is numerically zero")
        if self.check_det and abs(det - 1.0) > 8 * np.finfo(float).eps:
            # already-normalized input is left alone so serialization round-trips
            root = cmath.sqrt(det)
            coeffs = [x / root for x in coeffs]
        scale = max(abs(x) for x in coeffs)
        lead = next(x for x in coeffs if abs(x) > 1e-12 * scale)
        if _sign_key(lead) < 0:
            coeffs = [-x for x in coeffs]
        for name, value in zip("abcd", coeffs):
            object.__setattr__(self, name, value)

    @classmethod
    def from_matrix(cls, mat, tol: Tolerances = DEFAULT_TOL) -> "MobiusMap":
        mat = np.asarray(mat, dtype=complex)
        return cls(mat[0, 0], mat[0, 1], mat[1, 0], mat[1, 1], tol=tol)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def coeffs(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    def __call__(self, z):
        if np.isscalar(z) and is_infinite(z):
            return INF if self.c == 0 else self.a / self.c
        return (self.a * z + self.b) / (self.c * z + self.d)

    def derivative(self, z):
        return 1.0 / (self.c * z + self.d) ** 2

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return compose(self, other)

    def inverse(self) -> "MobiusMap":
        return inverse(self)

    def power(self, n: int) -> "MobiusMap":
        """The ``n``-th compositional iterate (``n >= 0``) by repeated squaring."""
        if n < 0:
            return self.inverse().power(-n)
        result = np.eye(2, dtype=complex)
        base = self.matrix
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return MobiusMap(*result.ravel(), tol=self.tol, check_det=False)

    def is_identity(self) -> bool:
        scale = max(abs(x) for x in self.coeffs)
        return (abs(self.b) + abs(self.c) + abs(self.a - self.d)) <= self.tol.eps_fix * scale

    def projectively_equal(self, other: "MobiusMap", tol: float | None = None) -> bool:
        tol = self.tol.eps_fix if tol is None else tol
        m1, m2 = self.matrix, other.matrix
        scale = max(np.abs(m1).max(), np.abs(m2).max())
        gap = min(np.abs(m1 - m2).max(), np.abs(m1 + m2).max())
        return gap <= tol * scale

    def to_json(self) -> dict:
        return {k: [float(v.real), float(v.imag)] for k, v in zip("abcd", self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict, tol: Tolerances = DEFAULT_TOL) -> "MobiusMap":
        try:
            vals = [complex(*map(float, obj[k])) for k in "abcd"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(
                'symbol JSON must look like {"a":[re,im],"b":[re,im],"c":[re,im],"d":[re,im]}'
            ) from exc
        return cls(*vals, tol=tol)


def compose(m1: MobiusMap, m2: MobiusMap) -> MobiusMap:
    """``m1 o m2`` as the product of coefficient matrices."""
    # both factors are unimodular, so the product is too
    return MobiusMap(*(m1.matrix @ m2.matrix).ravel(), tol=m1.tol, check_det=False)


def inverse(m: MobiusMap) -> MobiusMap:
    return MobiusMap(m.d, -m.b, -m.c, m.a, tol=m.tol)


def conjugate(phi: MobiusMap, sigma: MobiusMap) -> MobiusMap:
    """``sigma o phi o sigma^-1``."""
    return compose(compose(sigma, phi), inverse(sigma))


def rotation(omega: complex) -> MobiusMap:
    return MobiusMap(omega, 0, 0, 1)


def disc_automorphism(alpha: complex, omega: complex = 1.0) -> MobiusMap:
    """``z -> omega (z + alpha)/(1 + conj(alpha) z)``; sends 0 to ``omega alpha``."""
    if abs(alpha) >= 1:
        raise ValueError("alpha must lie in the open unit disc")
    alpha = complex(alpha)
    return MobiusMap(omega, omega * alpha, alpha.conjugate(), 1)


def three_point_map(z1: complex, z2: complex, z3: complex) -> MobiusMap:
    """The map sending ``z1, z2, z3`` to ``0, 1, inf``."""
    return MobiusMap(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))


def boundary_samples(count: int = 64) -> np.ndarray:
    return np.exp(2j * np.pi * (np.arange(count) + 0.5) / count)


# --- self-map and automorphism tests -------------------------------------


def _scale2(m: MobiusMap) -> float:
    return sum(abs(x) ** 2 for x in m.coeffs)


def is_self_map(m: MobiusMap) -> bool:
    """True iff ``m`` sends the unit disc into itself.

    The image of the unit circle has center ``(b d* - a c*)/(|d|^2 - |c|^2)``
    and radius ``|ad - bc|/(|d|^2 - |c|^2)``; containment is
    ``|b d* - a c*| + |ad - bc| <= |d|^2 - |c|^2``.
    """
    a, b, c, d = m.coeffs
    lhs = abs(b * d.conjugate() - a * c.conjugate()) + abs(a * d - b * c)
    rhs = abs(d) ** 2 - abs(c) ** 2
    return lhs <= rhs + m.tol.eps_fix * _scale2(m)


def is_automorphism(m: MobiusMap) -> bool:
    """Self-map whose image of the unit circle is the unit circle itself."""
    if not is_self_map(m):
        return False
    a, b, c, d = m.coeffs
    radius_gap = (abs(d) ** 2 - abs(c) ** 2) - abs(a * d - b * c)
    return abs(radius_gap) <= m.tol.eps_fix * _scale2(m)


def boundary_sup(m: MobiusMap, count: int = 256) -> float:
    """max |m| over ``count`` points of the unit circle (independent check)."""
    return float(np.abs(m(boundary_samples(count))).max())


# --- fixed points --------------------------------------------------------


@dataclass(frozen=True)
class FixedPointPair:
    """Fixed points on the Riemann sphere with the multiplier at each.

    ``p1`` is the one of smaller modulus; at infinity the multiplier is that
    of ``w -> 1/m(1/w)`` at 0.  For a parabolic map ``p1 == p2``.
    """

    p1: complex
    p2: complex
    multiplier1: complex
    multiplier2: complex
    parabolic: bool

    def points(self) -> tuple[complex, complex]:
        return (self.p1, self.p2)

    def multiplier_at(self, p: complex) -> complex:
        return self.multiplier1 if p == self.p1 else self.multiplier2


def fixed_points(m: MobiusMap) -> FixedPointPair:
    """Roots of ``c z^2 + (d - a) z - b = 0`` on the Riemann sphere."""
    if m.is_identity():
        raise IdentityMap("the identity fixes every point")
    a, b, c, d = m.coeffs
    tol = m.tol
    scale = max(abs(x) for x in m.coeffs)
    if abs(c) <= tol.eps_det * scale:
        if abs(a - d) <= tol.eps_fix * scale:
            return FixedPointPair(INF, INF, 1.0, 1.0, True)
        p = b / (d - a)
        return FixedPointPair(p, INF, a / d, d / a, False)
    B = d - a
    disc = B * B + 4.0 * b * c
    if abs(disc) < tol.eps_par * (abs(a) + abs(d)) ** 2:
        p = (a - d) / (2.0 * c)
        return FixedPointPair(p, p, 1.0, 1.0, True)
    root = cmath.sqrt(disc)
    if abs(B + root) < abs(B - root):
        root = -root
    q = -(B + root) / 2.0
    z1, z2 = q / c, -b / q
    if abs(z2) < abs(z1):
        z1, z2 = z2, z1
    return FixedPointPair(z1, z2, m.derivative(z1), m.derivative(z2), False)


def _location(p: complex, tol: Tolerances) -> str:
    r = abs(p)
    if abs(r - 1.0) <= tol.eps_circle:
        return "circle"
    return "inside" if r < 1.0 else "outside"


def classify(m: MobiusMap) -> SymbolClass:
    """Symbol class of a non-identity self-map, decided by fixed-point location."""
    if not is_self_map(m):
        raise NotSelfMap(f"{m} does not map the disc into itself")
    fp = fixed_points(m)
    auto = is_automorphism(m)
    if fp.parabolic:
        return SymbolClass.PA if auto else SymbolClass.PNA
    loc1, loc2 = _location(fp.p1, m.tol), _location(fp.p2, m.tol)
    locs = sorted([loc1, loc2])
    if locs == ["circle", "circle"]:
        return SymbolClass.HA
    if "circle" in locs:
        other = loc2 if loc1 == "circle" else loc1
        return SymbolClass.HNA_I if other == "outside" else SymbolClass.HNA_II
    if locs == ["inside", "outside"]:
        return SymbolClass.EA if auto else SymbolClass.LOX
    raise ArithmeticError(f"fixed-point configuration {locs} impossible for a self-map")


# --- canonical forms -----------------------------------------------------


def canonical_map(cls: SymbolClass, param) -> MobiusMap:
    """Standard representative of ``cls``.

    ``param`` is ``r`` (HA, HNA_I, HNA_II), ``omega`` (EA), the half-plane
    translation ``a`` (PA, PNA) or the pair ``(a, c)`` (LOX).
    """
    cls = SymbolClass(cls)
    if cls is SymbolClass.LOX:
        a, c = (complex(x) for x in param)
        return MobiusMap(a, c * (1 - a), 0, 1)
    if isinstance(param, (tuple, list)):
        (param,) = param
    x = complex(param)
    if cls is SymbolClass.HA:
        return MobiusMap(1, x, x, 1)
    if cls is SymbolClass.HNA_I:
        return MobiusMap(x, 1 - x, 0, 1)
    if cls is SymbolClass.HNA_II:
        return MobiusMap(x, 0, -(1 - x), 1)
    if cls is SymbolClass.EA:
        return MobiusMap(x, 0, 0, 1)
    # PA, PNA: w -> w + a in the half-plane w = (1 + z)/(1 - z)
    return MobiusMap(2 - x, x, -x, 2 + x)


def param_admissible(cls: SymbolClass, param, tol: float = 1e-10) -> bool:
    cls = SymbolClass(cls)
    if cls is SymbolClass.LOX:
        a, c = (complex(x) for x in param)
        return abs(a) < 1 and abs(a) + abs(1 - a) * abs(c) <= 1 + tol and abs(c) < 1
    if isinstance(param, (tuple, list)):
        (param,) = param
    x = complex(param)
    if cls in (SymbolClass.HA, SymbolClass.HNA_I, SymbolClass.HNA_II):
        return abs(x.imag) <= tol and 0 < x.real < 1
    if cls is SymbolClass.EA:
        return abs(abs(x) - 1) <= tol and abs(x - 1) > tol
    if cls is SymbolClass.PA:
        return abs(x.real) <= tol and abs(x) > tol
    return x.real > tol  # PNA


@dataclass(frozen=True)
class CanonicalDecomposition:
    """``phi = conjugator o canonical o conjugator^-1`` when a conjugator exists."""

    symbol_class: SymbolClass
    param: tuple[complex, ...]
    conjugator: MobiusMap | None
    conjugator_is_disc_automorphism: bool
    canonical: MobiusMap
    roundtrip_error: float

    @property
    def invariant(self) -> tuple[complex, ...]:
        """The part of ``param`` unchanged by conjugation with disc automorphisms.

        Parabolic translations are only defined up to a positive factor
        (half-plane dilations commute with the fixed point at infinity), so
        their direction ``a/|a|`` is what survives.
        """
        if self.symbol_class in PARABOLIC_CLASSES:
            (a,) = self.param
            return (a / abs(a),)
        return self.param

    def to_json(self) -> dict:
        if len(self.param) == 1:
            param = [self.param[0].real, self.param[0].imag]
        else:
            param = [[p.real, p.imag] for p in self.param]
        return {
            "class": self.symbol_class.value,
            "param": param,
            "conjugatorIsDiscAutomorphism": self.conjugator_is_disc_automorphism,
            "conjugator": None if self.conjugator is None else self.conjugator.to_json(),
            "canonical": self.canonical.to_json(),
            "roundtripError": self.roundtrip_error,
        }


def _rotated_automorphism(alpha: complex, zeta: complex) -> MobiusMap:
    """Disc automorphism sending 0 to ``alpha`` and 1 to ``zeta``."""
    alpha = complex(alpha)
    lam = (zeta - alpha) / (1 - alpha.conjugate() * zeta)
    return compose(disc_automorphism(alpha), rotation(lam / abs(lam)))


def _reflect(q: complex) -> complex:
    """Reflection ``1/conj(q)`` in the unit circle, with ``inf -> 0``."""
    return 0j if is_infinite(q) else 1.0 / complex(q).conjugate()


def _split(fp: FixedPointPair, tol: Tolerances, wanted: str):
    """Return (point at ``wanted`` location, multiplier, other point, its multiplier)."""
    if _location(fp.p1, tol) == wanted:
        return fp.p1, fp.multiplier1, fp.p2, fp.multiplier2
    return fp.p2, fp.multiplier2, fp.p1, fp.multiplier1


def _real_param(x: complex) -> complex:
    return complex(x.real, 0.0)


def to_canonical(m: MobiusMap) -> CanonicalDecomposition:
    """Class, intrinsic parameter and disc-automorphism conjugator of ``m``.

    Parameters are read off multipliers at fixed points, which conjugation
    preserves: HA uses ``(1 - r)/(1 + r)`` at the Denjoy-Wolff point, HNA I the
    boundary multiplier, HNA II / EA / LOX the interior multiplier.
    """
    cls = classify(m)
    tol = m.tol
    fp = fixed_points(m)
    if cls is SymbolClass.HA:
        if abs(fp.multiplier1) < abs(fp.multiplier2):
            z_dw, mult, z_rep = fp.p1, fp.multiplier1, fp.p2
        else:
            z_dw, mult, z_rep = fp.p2, fp.multiplier2, fp.p1
        mult = mult.real
        param = ((1 - mult) / (1 + mult) + 0j,)
        t1, t2 = cmath.phase(z_dw), cmath.phase(z_rep)
        gap = (t2 - t1) % (2 * math.pi)
        z_mid = cmath.exp(1j * (t1 + gap / 2))
        sigma = compose(inverse(three_point_map(z_dw, z_mid, z_rep)), three_point_map(1, 1j, -1))
    elif cls is SymbolClass.HNA_I:
        zeta, mult, q, _ = _split(fp, tol, "circle")
        param = (_real_param(mult),)
        sigma = _rotated_automorphism(_reflect(q), zeta / abs(zeta))
    elif cls is SymbolClass.HNA_II:
        p, mult, zeta, _ = _split(fp, tol, "inside")
        param = (_real_param(mult),)
        sigma = _rotated_automorphism(p, zeta / abs(zeta))
    elif cls is SymbolClass.EA:
        p, mult, _, _ = _split(fp, tol, "inside")
        param = (mult / abs(mult),)
        sigma = disc_automorphism(p)
    elif cls is SymbolClass.LOX:
        p, mult, q, _ = _split(fp, tol, "inside")
        sigma0 = disc_automorphism(_reflect(q))
        c0 = inverse(sigma0)(p)
        theta = cmath.phase(c0) if abs(c0) > 0 else 0.0
        sigma = compose(sigma0, rotation(cmath.exp(1j * theta)))
        param = (complex(mult), complex(abs(c0), 0.0))
    else:
        zeta = fp.p1 / abs(fp.p1)
        sigma = rotation(zeta)
        at_one = conjugate(m, inverse(sigma))
        cayley = np.array([[1, 1], [-1, 1]], dtype=complex)
        t = cayley @ at_one.matrix @ np.linalg.inv(cayley)
        a = 2 * t[0, 1] / (t[0, 0] + t[1, 1])
        if cls is SymbolClass.PA:
            a = complex(0.0, a.imag)
        param = (complex(a),)

    canon = canonical_map(cls, param if cls is SymbolClass.LOX else param[0])
    err = _roundtrip_error(m, canon, sigma)
    ok = err < tol.eps_fix
    return CanonicalDecomposition(cls, param, sigma if ok else None, ok, canon, err)


def _roundtrip_error(m: MobiusMap, canon: MobiusMap, sigma: MobiusMap) -> float:
    z = boundary_samples(64)
    rebuilt = conjugate(canon, sigma)
    return float(np.abs(m(z) - rebuilt(z)).max())
