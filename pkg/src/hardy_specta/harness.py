"""Numerical corroboration checks.

Every check returns :class:`CheckResult` records whose ``passed`` flag is
exactly ``measured <= threshold``.  All randomness is seeded, so a suite run is
reproducible bit-for-bit for fixed arguments.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .catalog import eigenfunction
from .errors import IllConditioned
from .mobius import (
    SymbolClass,
    canonical_map,
    conjugate,
    disc_automorphism,
    to_canonical,
)
from .operator import build_matrix, local_spectral_radius_estimate
from .series import TaylorFunction, cayley_power, lft_series
from .verdicts import local_radius_predicted

GRAM_COND_MAX = 1e12
GRAM_FLOOR = 1e-14


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    threshold: float
    context: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.measured <= self.threshold)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "measured": self.measured,
            "threshold": self.threshold,
            "passed": self.passed,
            "context": self.context,
        }


def _cx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


# --- eigen-identities --------------------------------------------------------------


def eigen_residual(cls: SymbolClass, param, generator, p: float = 2.0, n: int = 256,
                   threshold: float = 1e-6, work_factor: int = 4) -> CheckResult:
    """Relative residual of ``(C_phi - mu) f`` on the first ``n/2`` coefficients.

    ``f`` is the cataloged eigenfunction.  The head of ``f o phi`` depends on
    every coefficient of ``f`` when ``phi(0) != 0``, so ``f`` is generated to
    ``work_factor * n`` terms before composing; only the head is compared.
    """
    cls = SymbolClass(cls)
    head = max(n // 2, 1)
    work = max(work_factor, 1) * n
    pair = eigenfunction(cls, param, generator, p, work)
    phi = canonical_map(cls, param)
    image = _kernels.compose_head(pair.eigenfunction.coeffs, lft_series(phi, head), head)
    target = pair.eigenfunction.coeffs[:head]
    resid = np.linalg.norm(image - pair.eigenvalue * target) / np.linalg.norm(target)
    ctx = {"class": cls.value, "param": _cx(param[0] if isinstance(param, tuple) else param),
           "generator": _cx(generator), "p": p, "N": n, "workLength": work,
           "eigenvalue": _cx(pair.eigenvalue)}
    return CheckResult(f"eigen:{cls.value}:{complex(generator)}", float(resid), threshold, ctx)


# --- similarity ----------------------------------------------------------------------


def similarity_matrices(r: float, n: int):
    """The two sides of the adjoint identity on ``span{z, ..., z^(n-1)}``.

    Left: the conjugate transpose of ``C_Phi`` restricted to indices >= 1.
    Right: ``M_z (r C_psi) M_(1/z)``, whose ``(j, i)`` entry is
    ``r * [z^(j-1)] psi^(i-1)``.
    """
    a = build_matrix(canonical_map(SymbolClass.HNA_II, r), n).entries
    b = build_matrix(canonical_map(SymbolClass.HNA_I, r), n).entries
    left = a[1:, 1:].conj().T
    right = r * b[: n - 1, : n - 1]
    return left, right


def similarity_check(r: float, p: float = 2.0, n: int = 64, threshold: float = 1e-10) -> CheckResult:
    # the matrices do not depend on p; it is recorded for the report only
    left, right = similarity_matrices(r, n)
    h = max(n // 2, 1)
    dev = float(np.abs(left[:h, :h] - right[:h, :h]).max())
    return CheckResult(f"similarity:r={r}:p={p}:N={n}", dev, threshold, {"r": r, "p": p, "N": n, "block": h})


# --- density of eigenfunction spans ------------------------------------------------


def centre_out(frequencies) -> list:
    """Reorder so frequencies nearest 0 come first (ties: negative first)."""
    return sorted((float(t) for t in frequencies), key=lambda t: (abs(t), t))


def equispaced_frequencies(count: int = 50, half_width: float = 5.0) -> list:
    return centre_out(np.linspace(-half_width, half_width, count))


def projection_residuals(basis: np.ndarray, g: np.ndarray):
    """Residual of ``g`` against the span of each column prefix of ``basis``.

    Entry ``k`` is the distance from ``g`` to the span of the first ``k``
    columns (entry 0 is ``||g||``).  Uses the complete QR factorization, so
    the sequence is a tail sum of squared coordinates and never increases.
    Also returns the condition number of each prefix Gram matrix.
    """
    q, _ = np.linalg.qr(basis, mode="complete")
    coords = q.conj().T @ g
    tails = np.cumsum(np.abs(coords[::-1]) ** 2)[::-1]
    k = basis.shape[1]
    tails = np.concatenate([tails, np.zeros(max(0, k + 1 - len(tails)))])
    resid = np.sqrt(tails[: k + 1])
    conds = []
    for j in range(1, k + 1):
        sub = basis[:, :j]
        gram = sub.conj().T @ sub + GRAM_FLOOR * np.eye(j)
        conds.append(float(np.linalg.cond(gram)))
    return resid, conds


def density_probe(r: float, p: float, frequencies, targets, n: int = 256,
                  threshold: float = 0.2, strict: bool = False) -> list[CheckResult]:
    """Least-squares fit of each target by prefixes of ``{w_(i t_k)}`` in ``H^2``.

    Frequencies are used in the order given.  The probe stops at the first
    prefix whose Gram matrix condition number exceeds ``1e12`` (raising
    :class:`IllConditioned` instead when ``strict``).  Only ``p = 2`` is
    measured; ``p`` is recorded in the context.
    """
    freqs = [float(t) for t in frequencies]
    if not freqs:
        raise ValueError("need at least one frequency")
    basis = np.column_stack([cayley_power(1j * t, n).coeffs for t in freqs])
    out = []
    for g in targets:
        gv = g.padded(n)
        gnorm = float(np.linalg.norm(gv))
        resid, conds = projection_residuals(basis, gv)
        usable = len(freqs)
        for j, c in enumerate(conds):
            if c > GRAM_COND_MAX:
                usable = j
                break
        if strict and usable < len(freqs):
            raise IllConditioned(f"Gram condition {conds[usable]:.3g} at prefix {usable + 1}")
        seq = resid[: usable + 1]
        rel = seq / gnorm
        increase = float(max(0.0, np.max(np.diff(seq)))) if len(seq) > 1 else 0.0
        label = _poly_label(g)
        ctx = {"r": r, "p": p, "pMeasured": 2.0, "N": n, "frequencies": freqs[:usable],
               "residuals": [float(x) for x in seq], "usablePrefixes": usable,
               "truncatedAt": None if usable == len(freqs) else usable + 1,
               "conditionAtCut": conds[usable] if usable < len(freqs) else None,
               "targetNorm": gnorm}
        out.append(CheckResult(f"density:monotone:{label}", increase, 0.0, ctx))
        out.append(CheckResult(f"density:residual:{label}", float(rel[-1]), threshold, ctx))
    return out


def _poly_label(g: TaylorFunction) -> str:
    terms = []
    for k, c in enumerate(g.coeffs):
        if c == 0:
            continue
        mono = "1" if k == 0 else ("z" if k == 1 else f"z^{k}")
        c = c.real if c.imag == 0 else c
        if c == 1 and k:
            terms.append(mono)
        elif c == -1 and k:
            terms.append("-" + mono)
        else:
            coef = f"{c:g}" if isinstance(c, float) else f"({c:g})"
            terms.append(coef + ("" if k == 0 else "*" + mono))
    return "+".join(terms).replace("+-", "-") or "0"


# --- local radius --------------------------------------------------------------------


def radius_regression(cls: SymbolClass, param, p: float, f: TaylorFunction, adjoint: bool,
                      threshold: float | None = None, n: int = 256, window=None,
                      predicted: float | None = None) -> CheckResult:
    """Relative gap between the slope-fit estimate and the predicted radius.

    ``predicted`` overrides the cataloged value (used for eigenvectors).
    """
    cls = SymbolClass(cls)
    if threshold is None:
        threshold = 0.10 if adjoint else 0.05
    if predicted is None:
        predicted = local_radius_predicted(cls, param, p, f, adjoint)
    est = local_spectral_radius_estimate(canonical_map(cls, param), f.with_exponent(p), adjoint, window, p, n)
    gap = abs(est.estimate - predicted) / predicted
    ctx = {"class": cls.value, "param": _cx(param), "p": p, "adjoint": adjoint, "N": n,
           "estimate": est.estimate, "predicted": predicted, "window": list(est.window), "fitResidual": est.residual}
    side = "adjoint" if adjoint else "operator"
    return CheckResult(f"radius:{cls.value}:{side}:{_poly_label(f)}", float(gap), threshold, ctx)


# --- conjugation invariance ------------------------------------------------------------


def random_symbol(rng: np.random.Generator):
    """A random (class, param) pair drawn from the admissible ranges."""
    cls = list(SymbolClass)[rng.integers(0, 7)]
    if cls in (SymbolClass.HA, SymbolClass.HNA_I, SymbolClass.HNA_II):
        return cls, rng.uniform(0.05, 0.95)
    if cls is SymbolClass.EA:
        return cls, cmath.exp(1j * rng.uniform(0.1, 2 * math.pi - 0.1))
    if cls is SymbolClass.PA:
        t = rng.uniform(0.2, 3.0) * rng.choice([-1.0, 1.0])
        return cls, 1j * t
    if cls is SymbolClass.PNA:
        return cls, complex(rng.uniform(0.2, 3.0), rng.uniform(-3.0, 3.0))
    rho = rng.uniform(0.1, 0.9)
    a = rho * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
    cmax = min((1 - abs(a)) / abs(1 - a), 0.95)
    return cls, (a, rng.uniform(0.0, 0.9) * cmax)


def random_automorphism(rng: np.random.Generator):
    alpha = complex(rng.uniform(-0.63, 0.63), rng.uniform(-0.63, 0.63))
    omega = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
    return disc_automorphism(alpha, omega)


def _invariant_drift(d1, d2) -> float:
    if d1.symbol_class is not d2.symbol_class:
        return math.inf
    return max(abs(x - y) for x, y in zip(d1.invariant, d2.invariant))


def class_invariance_fuzz(seed: int = 1, count: int = 200, threshold: float = 1e-8) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        cls, param = random_symbol(rng)
        sigma = random_automorphism(rng)
        phi = canonical_map(cls, param)
        psi = conjugate(phi, sigma)
        d1, d2 = to_canonical(phi), to_canonical(psi)
        drift = _invariant_drift(d1, d2)
        ctx = {"index": i, "class": cls.value, "conjugatedClass": d2.symbol_class.value,
               "symbol": phi.to_json(), "conjugator": sigma.to_json()}
        out.append(CheckResult(f"fuzz:{seed}:{i}", float(drift), threshold, ctx))
    return out


# --- suites ------------------------------------------------------------------------------

SUITES = ("eigen", "similarity", "density", "radius", "fuzz")


def run_suite(name: str, seed: int = 1, n: int = 256) -> list[CheckResult]:
    if name == "all":
        return [c for s in SUITES for c in run_suite(s, seed, n)]
    if name == "eigen":
        out = [eigen_residual(SymbolClass.HNA_I, 0.5, s, 2.0, 64, threshold=1e-12) for s in (0, 1, 2, 3)]
        out.append(eigen_residual(SymbolClass.HNA_I, 0.5, 0.5, 2.0, n))
        out += [eigen_residual(SymbolClass.HA, 0.5, lam, 2.0, n) for lam in (0, 0.1, 0.2 + 0.1j, 0.3)]
        return out
    if name == "similarity":
        return [similarity_check(r, p, 64) for r in (0.25, 0.5, 0.75) for p in (2.0, 3.0)]
    if name == "density":
        targets = [TaylorFunction.monomial(k) for k in range(3)]
        out = density_probe(0.5, 2.0, equispaced_frequencies(50), targets, n)
        with_zero = density_probe(0.5, 2.0, equispaced_frequencies(51), targets[:1], n, threshold=0.0)
        return out + [c for c in with_zero if c.name.startswith("density:residual")]
    if name == "radius":
        hna2 = SymbolClass.HNA_II
        return [
            radius_regression(hna2, 0.25, 2.0, TaylorFunction([0, 1]), False),
            radius_regression(hna2, 0.25, 2.0, TaylorFunction([1]), False, threshold=1e-9),
            radius_regression(hna2, 0.25, 2.0, TaylorFunction([1, 1]), False),
            radius_regression(SymbolClass.HNA_I, 0.5, 2.0, TaylorFunction([1, -1]), False,
                              threshold=1e-9, predicted=0.5),
            radius_regression(SymbolClass.HA, 0.5, 2.0, TaylorFunction([1]), True, n=n),
        ]
    if name == "fuzz":
        return class_invariance_fuzz(seed, 200)
    raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
