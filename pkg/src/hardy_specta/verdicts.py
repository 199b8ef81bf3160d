"""Local-spectral-theory verdicts for composition operators with LFT symbols.

Each class has a short list of cited facts.  Everything else in a report is
the closure of those facts under the two implications

    decomposable  =>  property (C)  =>  SVEP

and their contrapositives.  Flags nothing reaches stay ``notStated``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .catalog import (
    ClosedDisk,
    SingletonSet,
    SpectralRegion,
    full_spectrum,
    spectrum,
)
from .errors import NonCommuting, NotCataloged, NotSelfMap, ZeroFunction
from .mobius import MobiusMap, SymbolClass, compose, is_self_map, to_canonical
from .series import TaylorFunction, check_exponent

MEMBERSHIP_RTOL = 1e-12


class Flag(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    NOT_STATED = "notStated"

    def __str__(self) -> str:
        return self.value


PROPERTIES = ("svep", "dunfordC", "decomposable")
FLAG_NAMES = ("svep", "svepAdjoint", "dunfordC", "dunfordCAdjoint", "decomposable", "decomposableAdjoint")

_ANCHOR_HA = "hyperbolic automorphism theorem (Nordgren spectrum, eigenfunctions ((1+z)/(1-z))^lambda)"
_ANCHOR_HNA_I = "hyperbolic non-automorphism theorem, boundary/exterior fixed points (Kamowitz spectrum, eigenfunctions (1-z)^s)"
_ANCHOR_HNA_II = "hyperbolic non-automorphism theorem, boundary/interior fixed points (similarity to I + (r C_psi)*)"
_ANCHOR_GS = "generalized scalar composition operators (elliptic and parabolic automorphisms)"
_ANCHOR_PNA = "Shapiro: C_phi is decomposable for parabolic non-automorphisms"
_ANCHOR_LOX = "Kamowitz: the spectrum of C_phi is totally disconnected for loxodromic symbols"
_ANCHOR_IMPL = "decomposable => property (C) => SVEP"

# (flag, value, claim, anchor)
_CITED = {
    SymbolClass.HA: [
        ("svep", False, "C_phi does not have the SVEP on H^p, 1 <= p < inf", _ANCHOR_HA),
        ("dunfordCAdjoint", True, "C_phi* has property (C) on H^p, 1 < p < inf", _ANCHOR_HA),
    ],
    SymbolClass.HNA_I: [
        ("svep", False, "C_phi does not have the SVEP on H^p, 1 <= p < inf", _ANCHOR_HNA_I),
        ("dunfordCAdjoint", True, "C_phi* has property (C) on H^p, 1 < p < inf", _ANCHOR_HNA_I),
    ],
    SymbolClass.HNA_II: [
        ("dunfordC", True, "C_phi has property (C) on H^p, 1 < p < inf", _ANCHOR_HNA_II),
        ("svepAdjoint", False, "C_phi* does not have the SVEP", _ANCHOR_HNA_II),
    ],
    SymbolClass.EA: [
        ("decomposable", True, "C_phi is generalized scalar, hence decomposable", _ANCHOR_GS),
        ("decomposableAdjoint", True, "adjoints of generalized scalar operators are generalized scalar", _ANCHOR_GS),
    ],
    SymbolClass.PA: [
        ("decomposable", True, "C_phi is generalized scalar, hence decomposable", _ANCHOR_GS),
        ("decomposableAdjoint", True, "adjoints of generalized scalar operators are generalized scalar", _ANCHOR_GS),
    ],
    SymbolClass.PNA: [
        ("decomposable", True, "C_phi is decomposable", _ANCHOR_PNA),
        ("decomposableAdjoint", True, "an operator is decomposable iff its adjoint is", _ANCHOR_PNA),
    ],
    SymbolClass.LOX: [
        ("decomposable", True, "totally disconnected spectrum makes C_phi decomposable", _ANCHOR_LOX),
        ("decomposableAdjoint", True, "an operator is decomposable iff its adjoint is", _ANCHOR_LOX),
    ],
}


@dataclass(frozen=True)
class VerdictReport:
    symbol_class: SymbolClass
    flags: dict
    provenance: dict
    citations: tuple = ()

    def __getattr__(self, name):
        flags = object.__getattribute__(self, "flags")
        if name in flags:
            return flags[name]
        raise AttributeError(name)

    def implications_hold(self) -> bool:
        for suffix in ("", "Adjoint"):
            svep, c, dec = (self.flags[k + suffix] for k in PROPERTIES)
            if c is Flag.TRUE and svep is not Flag.TRUE:
                return False
            if dec is Flag.TRUE and c is not Flag.TRUE:
                return False
        return True

    def property_c_column(self) -> str:
        op = self.flags["dunfordC"] is Flag.TRUE
        adj = self.flags["dunfordCAdjoint"] is Flag.TRUE
        return {(True, True): "both", (False, True): "adjoint only", (True, False): "operator only"}.get(
            (op, adj), "neither"
        )

    def to_json(self) -> dict:
        out = {"class": self.symbol_class.value}
        for name in FLAG_NAMES:
            out[name] = self.flags[name].value
        out["provenance"] = {name: self.provenance[name] for name in FLAG_NAMES}
        out["citations"] = [{"claim": c, "anchor": a} for c, a in self.citations]
        return out


def _close(values: dict, provenance: dict) -> None:
    """Propagate the two implications (and contrapositives) to a fixed point."""
    changed = True
    while changed:
        changed = False
        for suffix in ("", "Adjoint"):
            svep, c, dec = (k + suffix for k in PROPERTIES)
            rules = [
                (dec, True, c, True),
                (c, True, svep, True),
                (svep, False, c, False),
                (c, False, dec, False),
            ]
            for src, sval, dst, dval in rules:
                if values.get(src) is sval and dst not in values:
                    values[dst] = dval
                    provenance[dst] = "derived"
                    changed = True


def verdict(cls: SymbolClass) -> VerdictReport:
    cls = SymbolClass(cls)
    values, provenance, cites = {}, {}, []
    for name, val, claim, anchor in _CITED[cls]:
        values[name] = val
        provenance[name] = "cited"
        cites.append((claim, anchor))
    _close(values, provenance)
    flags = {}
    for name in FLAG_NAMES:
        if name in values:
            flags[name] = Flag.TRUE if values[name] else Flag.FALSE
        else:
            flags[name] = Flag.NOT_STATED
            provenance[name] = "none"
    if any(provenance[n] == "derived" for n in FLAG_NAMES):
        cites.append(("flags marked derived follow from the cited ones", _ANCHOR_IMPL))
    return VerdictReport(cls, flags, provenance, tuple(cites))


def table_row(cls: SymbolClass) -> str:
    return verdict(cls).property_c_column()


# --- local spectra ---------------------------------------------------------------


@dataclass(frozen=True)
class LocalSpectrumAnswer:
    region: SpectralRegion
    predicted_radius: float
    case_label: str

    def to_json(self) -> dict:
        return {"region": self.region.to_json(), "predictedRadius": self.predicted_radius, "case": self.case_label}


def is_constant(f: TaylorFunction, rtol: float = MEMBERSHIP_RTOL) -> bool:
    return float(np.linalg.norm(f.coeffs[1:])) <= rtol * f.l2_norm()


def vanishes_at_zero(f: TaylorFunction, rtol: float = MEMBERSHIP_RTOL) -> bool:
    return abs(f.coeffs[0]) <= rtol * f.l2_norm()


def _cataloged(cls: SymbolClass, adjoint: bool) -> None:
    ok = {(SymbolClass.HA, True), (SymbolClass.HNA_I, True), (SymbolClass.HNA_II, False)}
    if (cls, bool(adjoint)) not in ok:
        side = "C_phi*" if adjoint else "C_phi"
        raise NotCataloged(f"no local spectrum is cataloged for {side} with a {cls.value} symbol")


def local_spectrum(cls: SymbolClass, param, p: float, f: TaylorFunction, adjoint: bool) -> LocalSpectrumAnswer:
    """Local spectrum of ``f`` for the cataloged (class, direction) pairs.

    The adjoint acts on the dual space, but its spectrum is that of
    ``C_phi`` on ``H^p`` (both regions are symmetric under conjugation).
    """
    cls = SymbolClass(cls)
    p = check_exponent(p)
    _cataloged(cls, adjoint)
    if f.l2_norm() == 0:
        raise ZeroFunction("local spectra are defined for nonzero vectors")
    sigma = spectrum(cls, param, p)
    if adjoint:
        return LocalSpectrumAnswer(sigma, sigma.max_modulus(), "adjoint: whole spectrum for every nonzero f")
    if is_constant(f):
        region = SingletonSet((1.0 + 0j,))
        return LocalSpectrumAnswer(region, 1.0, "f constant: eigenvector for 1")
    if vanishes_at_zero(f):
        region = ClosedDisk(sigma.radius)
        return LocalSpectrumAnswer(region, region.radius, "f(0) = 0: closed disk of radius r^(1/p)")
    return LocalSpectrumAnswer(sigma, sigma.max_modulus(), "otherwise: whole spectrum")


def local_radius_predicted(cls: SymbolClass, param, p: float, f: TaylorFunction, adjoint: bool) -> float:
    return local_spectrum(cls, param, p, f, adjoint).predicted_radius


def invariant_subspace_spectrum_options(cls: SymbolClass, param, p: float, adjoint: bool) -> list:
    """Possible spectra of the restriction to a closed invariant subspace.

    These are options; which ones occur is not asserted.
    """
    cls = SymbolClass(cls)
    p = check_exponent(p)
    _cataloged(cls, adjoint)
    sigma = spectrum(cls, param, p)
    if cls is SymbolClass.HA:
        return [sigma, full_spectrum(sigma)]
    if cls is SymbolClass.HNA_I:
        return [sigma]
    return [SingletonSet((1.0 + 0j,)), ClosedDisk(sigma.radius), sigma]


# --- products of commuting symbols ----------------------------------------------


@dataclass(frozen=True)
class ProductVerdict:
    factor_classes: tuple
    product: object  # CanonicalDecomposition of psi o phi
    report: VerdictReport
    expected_class: SymbolClass | None
    stable: bool

    def to_json(self) -> dict:
        return {
            "factors": [c.value for c in self.factor_classes],
            "product": self.product.to_json(),
            "expectedClass": None if self.expected_class is None else self.expected_class.value,
            "propertyCStable": self.stable,
            "verdict": self.report.to_json(),
        }


def _expected_product_class(c1: SymbolClass, c2: SymbolClass) -> SymbolClass | None:
    pair = {c1, c2}
    if pair == {SymbolClass.PA, SymbolClass.PNA}:
        return SymbolClass.PNA
    if pair == {SymbolClass.EA, SymbolClass.LOX}:
        return SymbolClass.LOX
    if c1 is c2:
        return c1
    return None


def commute(m1: MobiusMap, m2: MobiusMap) -> bool:
    return compose(m1, m2).projectively_equal(compose(m2, m1))


def product_verdict(phi: MobiusMap, psi: MobiusMap) -> ProductVerdict:
    """Verdict for ``C_{psi o phi} = C_phi C_psi`` when the symbols commute."""
    for m in (phi, psi):
        if not is_self_map(m):
            raise NotSelfMap(f"{m} does not map the disc into itself")
    if not commute(phi, psi):
        raise NonCommuting("the symbols do not commute under composition")
    c1 = to_canonical(phi).symbol_class
    c2 = to_canonical(psi).symbol_class
    dec = to_canonical(compose(psi, phi))
    report = verdict(dec.symbol_class)
    expected = _expected_product_class(c1, c2)
    factors_c = verdict(c1).flags["dunfordC"] is Flag.TRUE and verdict(c2).flags["dunfordC"] is Flag.TRUE
    stable = (not factors_c) or report.flags["dunfordC"] is Flag.TRUE
    if expected is not None and dec.symbol_class is not expected:
        stable = False
    return ProductVerdict((c1, c2), dec, report, expected, stable)
