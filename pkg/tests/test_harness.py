import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardy_specta.errors import IllConditioned
from hardy_specta.harness import (
    CheckResult,
    centre_out,
    class_invariance_fuzz,
    density_probe,
    eigen_residual,
    equispaced_frequencies,
    projection_residuals,
    radius_regression,
    run_suite,
    similarity_check,
    similarity_matrices,
)
from hardy_specta.mobius import MobiusMap, SymbolClass, canonical_map, conjugate, rotation, to_canonical
from hardy_specta.operator import build_matrix
from hardy_specta.series import TaylorFunction, truncated_compose

T = TaylorFunction


class TestEigen:
    @pytest.mark.parametrize("s", [0, 1, 2, 3])
    def test_hna1_integer(self, s):
        c = eigen_residual(SymbolClass.HNA_I, 0.5, s, n=64, threshold=1e-12)
        assert c.passed, c.measured

    @pytest.mark.parametrize("lam", [0, 0.1, 0.2 + 0.1j])
    def test_ha(self, lam):
        c = eigen_residual(SymbolClass.HA, 0.5, lam, n=256)
        assert c.passed and c.context["N"] == 256

    def test_work_length_matters(self):
        # with no extra coefficients the head of f o phi is visibly wrong
        short = eigen_residual(SymbolClass.HA, 0.5, 0.3, n=64, work_factor=1)
        long = eigen_residual(SymbolClass.HA, 0.5, 0.3, n=64)
        assert long.measured < short.measured

    def test_hna2_constants(self):
        assert eigen_residual(SymbolClass.HNA_II, 0.25, 0, n=32).measured == 0


class TestSimilarity:
    def test_example(self):
        left, right = similarity_matrices(0.5, 3)
        assert np.abs(left[:2, :2] - right[:2, :2]).max() == 0

    @pytest.mark.parametrize("r", [0.25, 0.5, 0.75])
    @pytest.mark.parametrize("p", [2.0, 3.0])
    def test_cases(self, r, p):
        assert similarity_check(r, p).passed

    @pytest.mark.parametrize("r", [0.25, 0.5, 0.75])
    def test_rounding_level_across_sizes(self, r):
        devs = [similarity_check(r, 2.0, n).measured for n in (4, 8, 16, 32, 64, 128)]
        assert max(devs) < 1e-15

    @given(st.floats(0.05, 0.95))
    def test_entry_oracle(self, r):
        # (j, i) entry of the right side is r * [z^(j-1)] psi^(i-1), from the series module
        left, right = similarity_matrices(r, 12)
        psi = canonical_map("HNA_I", r)
        for i in range(1, 6):
            col = truncated_compose(T.monomial(i - 1), psi, 11).coeffs
            assert np.allclose(right[:, i - 1], r * col, atol=1e-14)
        assert np.abs(left[:6, :6] - right[:6, :6]).max() < 1e-14


class TestDensity:
    def test_centre_out(self):
        assert centre_out([2, -1, 0.5, -0.5, 0]) == [0, -0.5, 0.5, -1, 2]
        assert centre_out(equispaced_frequencies(51))[0] == 0

    def test_constant_hits_zero(self):
        res = density_probe(0.5, 2.0, equispaced_frequencies(51), [T([1])], threshold=0.0)
        resid = [c for c in res if c.name.startswith("density:residual")][0]
        assert resid.measured < 1e-14

    def test_monotone_targets(self):
        res = density_probe(0.5, 2.0, equispaced_frequencies(50), [T.monomial(k) for k in range(3)])
        for c in res:
            if c.name.startswith("density:monotone"):
                assert c.measured == 0, c.name

    @given(st.lists(st.floats(-6, 6), min_size=1, max_size=12),
           st.lists(st.complex_numbers(max_magnitude=2), min_size=1, max_size=4))
    def test_monotone_property(self, freqs, coeffs):
        g = T(coeffs)
        if g.l2_norm() == 0:
            return
        res = density_probe(0.5, 2.0, freqs, [g], n=64)
        assert res[0].measured == 0

    def test_residual_brute_force(self):
        # lstsq against each prefix agrees with the QR tail sums
        rng = np.random.default_rng(4)
        basis = rng.normal(size=(20, 5)) + 1j * rng.normal(size=(20, 5))
        g = rng.normal(size=20) + 0j
        resid, conds = projection_residuals(basis, g)
        for k in range(1, 6):
            x = np.linalg.lstsq(basis[:, :k], g, rcond=None)[0]
            assert resid[k] == pytest.approx(np.linalg.norm(g - basis[:, :k] @ x), rel=1e-10)
        assert resid[0] == pytest.approx(np.linalg.norm(g))
        assert len(conds) == 5

    def test_strict_ill_conditioned(self):
        with pytest.raises(IllConditioned):
            density_probe(0.5, 2.0, [0.0, 1e-9, 2e-9], [T([1])], n=64, strict=True)

    def test_labels(self):
        res = density_probe(0.5, 2.0, [0.0], [T([1, -1]), T([0, 0, 1])], n=32)
        names = [c.name for c in res]
        assert "density:monotone:1-z" in names and "density:residual:z^2" in names


class TestRadius:
    def test_hna2(self):
        assert radius_regression(SymbolClass.HNA_II, 0.25, 2.0, T([0, 1]), False).passed
        assert radius_regression(SymbolClass.HNA_II, 0.25, 2.0, T([1]), False, threshold=1e-9).passed
        assert radius_regression(SymbolClass.HNA_II, 0.25, 2.0, T([1, 1]), False).passed

    def test_ha_adjoint(self):
        c = radius_regression(SymbolClass.HA, 0.5, 2.0, T([1]), True, n=256)
        assert c.threshold == 0.10 and c.passed


class TestFuzz:
    def test_all_pass(self):
        res = class_invariance_fuzz(seed=1, count=200)
        assert len(res) == 200 and all(c.passed for c in res)

    def test_deterministic(self):
        a = [c.to_json() for c in class_invariance_fuzz(seed=5, count=20)]
        b = [c.to_json() for c in class_invariance_fuzz(seed=5, count=20)]
        assert a == b

    @pytest.mark.parametrize("cls, param", [("HA", 0.5), ("HNA_II", 0.3), ("PNA", 1 + 1j), ("LOX", (0.3, 0.2))])
    def test_identity_and_rotation(self, cls, param):
        phi = canonical_map(cls, param)
        base = to_canonical(phi).invariant
        for sigma in (MobiusMap.identity(), rotation(1j), rotation(np.exp(0.3j))):
            got = to_canonical(conjugate(phi, sigma)).invariant
            assert max(abs(x - y) for x, y in zip(base, got)) < 1e-12


def test_check_result_json():
    c = CheckResult("x", 0.5, 1.0, {"a": 1})
    assert c.passed and c.to_json()["name"] == "x"
    assert not CheckResult("y", 2.0, 1.0).passed


@pytest.mark.parametrize("name", ["eigen", "similarity", "density", "radius", "fuzz"])
def test_suites_green(name):
    assert all(c.passed for c in run_suite(name))


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("bogus")


def test_matrix_sanity():
    assert build_matrix(canonical_map("HNA_II", 0.5), 4).entries[0, 0] == 1
