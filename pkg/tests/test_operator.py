import cmath
import math
from math import comb

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hardy_specta.errors import NotSelfMap, NumericalUnderflow, ZeroFunction
from hardy_specta.mobius import MobiusMap, SymbolClass, canonical_map, compose, conjugate, disc_automorphism, rotation
from hardy_specta.operator import (
    _canonical_iterate_form,
    adjoint_matrix,
    build_matrix,
    iterate_symbol,
    local_spectral_radius_estimate,
)
from hardy_specta.series import TaylorFunction, pairing, truncated_compose
from tests.strategies import canonical_symbols, polynomials

T = TaylorFunction


class TestBuildMatrix:
    def test_rotation_is_diagonal(self):
        w = cmath.exp(0.7j)
        a = build_matrix(rotation(w), 16).entries
        assert np.allclose(a, np.diag(w ** np.arange(16)))

    def test_affine_binomial_pattern(self):
        a = build_matrix(MobiusMap(0.5, 0.5, 0, 1), 12).entries
        oracle = np.array([[comb(n, k) / 2**n for n in range(12)] for k in range(12)])
        assert np.allclose(a, oracle, atol=1e-15)

    def test_geometric_column(self):
        a = build_matrix(MobiusMap(0.5, 0, -0.5, 1), 20).entries
        assert a[0, 1] == 0
        assert np.allclose(a[1:, 1], 0.5 ** np.arange(1, 20))

    def test_not_self_map(self):
        with pytest.raises(NotSelfMap):
            build_matrix(MobiusMap(2, 0, 0, 1), 8)

    @given(canonical_symbols())
    def test_column_zero(self, sym):
        a = build_matrix(sym[2], 16).entries
        assert a[0, 0] == 1 and not np.any(a[1:, 0])

    @settings(max_examples=50)
    @given(canonical_symbols(), polynomials(max_degree=16))
    def test_matches_series(self, sym, c):
        n = 64
        m = sym[2]
        f = T(c)
        via_matrix = build_matrix(m, n).apply(f).coeffs[: n // 4]
        via_series = truncated_compose(f, m, n // 4).coeffs
        assert np.abs(via_matrix - via_series).max() < 1e-9 * max(1, np.abs(via_series).max())

    @given(canonical_symbols(classes=(SymbolClass.HNA_I, SymbolClass.HNA_II, SymbolClass.EA, SymbolClass.LOX)))
    def test_semigroup(self, sym):
        # phi(0) = 0 or phi affine: the truncated product drops nothing
        n = 48
        m = sym[2]
        a = build_matrix(m, n).entries
        a2 = build_matrix(iterate_symbol(m, 2), n).entries
        h = n // 2
        assert np.abs((a @ a)[:h, :h] - a2[:h, :h]).max() < 1e-8

    @pytest.mark.parametrize("cls, param, n", [("HA", 0.2, 64), ("PNA", 0.5, 64), ("PA", 0.5j, 128)])
    def test_semigroup_small_pole_ratio(self, cls, param, n):
        m = canonical_map(cls, param)
        a = build_matrix(m, n).entries
        a2 = build_matrix(iterate_symbol(m, 2), n).entries
        h = n // 2
        assert np.abs((a @ a)[:h, :h] - a2[:h, :h]).max() < 1e-8

    def test_semigroup_tail_counterexample(self):
        # |c/d| = 1/2: the dropped tail of (A @ A)[k, n] behaves like
        # C(2h, h) 4**-h, which does not decay, so the block never converges
        m = canonical_map("HA", 0.5)
        devs = []
        for n in (32, 64, 128):
            a = build_matrix(m, n).entries
            a2 = build_matrix(iterate_symbol(m, 2), n).entries
            devs.append(np.abs((a @ a)[: n // 2, : n // 2] - a2[: n // 2, : n // 2]).max())
        assert min(devs) > 1e-3

    def test_json(self):
        out = build_matrix(rotation(1j), 2).to_json()
        assert out["entries"] == [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 1.0]]]


class TestAdjoint:
    def test_diagonal(self):
        w = cmath.exp(0.4j)
        a = adjoint_matrix(build_matrix(rotation(w), 8)).entries
        assert np.allclose(a, np.diag(np.conj(w) ** np.arange(8)))

    def test_involution(self):
        a = build_matrix(canonical_map("HA", 0.5), 32)
        assert np.array_equal(adjoint_matrix(adjoint_matrix(a)).entries, a.entries)

    def test_explicit_entry(self):
        a = build_matrix(canonical_map("HA", 0.5), 64)
        star = adjoint_matrix(a)
        lhs = pairing(a.apply(T([0, 1])), T([1]))
        rhs = pairing(T([0, 1]), star.apply(T([1])))
        assert lhs == pytest.approx(rhs, abs=1e-14)
        assert lhs == pytest.approx(0.5)  # constant term of z o phi is phi(0) = r

    @given(canonical_symbols(), polynomials(max_degree=16), polynomials(max_degree=16))
    def test_pairing_identity(self, sym, c1, c2):
        a = build_matrix(sym[2], 32)
        f, g = T(c1), T(c2)
        lhs = pairing(a.apply(f), g)
        rhs = pairing(f, adjoint_matrix(a).apply(g))
        assert abs(lhs - rhs) < 1e-10 * max(1, abs(lhs))


class TestIterate:
    @given(st.floats(0.05, 0.95), st.integers(1, 25))
    def test_hna2_law(self, r, n):
        assume(r ** n > 1e-6)  # the closed-form oracle itself is near-degenerate below
        it = iterate_symbol(canonical_map("HNA_II", r), n)
        assert it.projectively_equal(canonical_map("HNA_II", r ** n), 1e-9)

    @given(st.floats(0.05, 0.95), st.integers(1, 12))
    def test_ha_law(self, r, n):
        k = ((1 + r) / (1 - r)) ** n
        rn = (k - 1) / (k + 1)
        assume(1 - rn > 1e-6)
        it = iterate_symbol(canonical_map("HA", r), n)
        z = 0.5 * np.exp(1j * np.linspace(0, 6, 9))
        assert np.allclose(it(z), canonical_map("HA", rn)(z), atol=1e-9)

    @given(canonical_symbols())
    def test_first_iterate(self, sym):
        assert iterate_symbol(sym[2], 1) == sym[2]

    @pytest.mark.parametrize("cls", [SymbolClass.HA, SymbolClass.HNA_II])
    @pytest.mark.parametrize("n", [1, 3, 8])
    def test_pole_form_matches_map(self, cls, n):
        r = 0.4
        form = _canonical_iterate_form(cls, r, n)
        t = np.linspace(-3, 3, 13) + 0.01
        w = np.exp(1j * (form.theta0 + t))
        direct = canonical_map(cls, r).power(n)(w)
        assert np.allclose(form.at_offset(t), direct, atol=1e-12)


class TestLocalRadius:
    def test_hna2_vanishing(self):
        est = local_spectral_radius_estimate(canonical_map("HNA_II", 0.25), T([0, 1]))
        assert est.estimate == pytest.approx(0.5, rel=1e-6)
        assert est.window == (10, 30)
        assert est.residual >= 0

    def test_eigenvectors_exact(self):
        est = local_spectral_radius_estimate(canonical_map("HNA_II", 0.25), T([1]))
        assert est.estimate == pytest.approx(1.0, abs=1e-12)
        est = local_spectral_radius_estimate(canonical_map("HNA_I", 0.5), T([1, -1]))
        assert est.estimate == pytest.approx(0.5, rel=1e-9)
        est = local_spectral_radius_estimate(rotation(1j), T([0, 0, 1]))
        assert est.estimate == pytest.approx(1.0, abs=1e-12)

    def test_hna2_conjugated(self):
        # same operator up to similarity by an automorphism: rate is unchanged
        m = conjugate(canonical_map("HNA_II", 0.25), disc_automorphism(0.3 + 0.2j))
        sigma = disc_automorphism(0.3 + 0.2j)
        f = T([0.3 + 0.2j, 1])
        est = local_spectral_radius_estimate(m, f)
        assert est.estimate == pytest.approx(1.0, rel=1e-6)
        g = T([-(0.3 + 0.2j), 1])  # z - p vanishes at the interior fixed point p = sigma(0)
        assert sigma(0) == pytest.approx(0.3 + 0.2j)
        est = local_spectral_radius_estimate(m, g)
        assert est.estimate == pytest.approx(0.5, rel=1e-6)

    def test_ha_adjoint(self):
        est = local_spectral_radius_estimate(canonical_map("HA", 0.5), T([1]), adjoint=True, n=256)
        assert est.window == (2, 5)
        assert abs(est.estimate - math.sqrt(3)) / math.sqrt(3) < 0.10

    def test_zero_function(self):
        with pytest.raises(ZeroFunction):
            local_spectral_radius_estimate(canonical_map("HA", 0.5), T([0, 0]))

    def test_underflow(self):
        with pytest.raises(NumericalUnderflow):
            local_spectral_radius_estimate(canonical_map("HNA_I", 0.01), T([1, -1]), window=(100, 200))

    def test_bad_window(self):
        with pytest.raises(ValueError):
            local_spectral_radius_estimate(canonical_map("HA", 0.5), T([1]), window=(5, 5))

    def test_not_self_map(self):
        with pytest.raises(NotSelfMap):
            local_spectral_radius_estimate(MobiusMap(2, 0, 0, 1), T([1]))

    def test_json(self):
        out = local_spectral_radius_estimate(canonical_map("HNA_II", 0.25), T([1])).to_json()
        assert set(out) == {"estimate", "slopeWindow", "residual"}
