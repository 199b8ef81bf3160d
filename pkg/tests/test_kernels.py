import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardy_specta import _kernels
from hardy_specta._kernels import _pykernels
from tests.strategies import polynomials

BACKENDS = _kernels.available_backends()
compiled = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")


def test_backend_selected():
    assert _kernels.BACKEND in BACKENDS


def test_env_forces_fallback():
    env = dict(os.environ, HARDY_SPECTA_BACKEND="python")
    res = subprocess.run([sys.executable, "-c", "import hardy_specta; print(hardy_specta.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert res.stdout.strip() == "python"


class TestFallbackOracles:
    def test_series_powers(self):
        phi = np.array([0.5, 0.5, 0, 0], dtype=complex)
        out = _pykernels.series_powers(phi, 4)
        assert np.allclose(out[:, 2], [0.25, 0.5, 0.25, 0])

    def test_compose_head_polyval(self):
        # compose with a constant series is evaluation
        f = np.array([1, 2, 3], dtype=complex)
        phi = np.array([0.5, 0, 0], dtype=complex)
        assert _pykernels.compose_head(f, phi, 3)[0] == pytest.approx(1 + 1 + 0.75)

    def test_binomial_integer(self):
        assert np.allclose(_pykernels.binomial_coeffs(3, 6), [1, -3, 3, -1, 0, 0])

    def test_cayley_first_terms(self):
        # ((1+z)/(1-z))^lam = 1 + 2 lam z + 2 lam^2 z^2 + ...
        c = _pykernels.cayley_power_coeffs(0.3, 3)
        assert np.allclose(c, [1, 0.6, 2 * 0.09])

    def test_empty(self):
        assert len(_pykernels.binomial_coeffs(0.5, 0)) == 0
        assert len(_pykernels.cayley_power_coeffs(0.5, 0)) == 0


@compiled
class TestCrossBackend:
    c = BACKENDS.get("cython")

    @given(polynomials(max_degree=20, scale=0.6), st.integers(1, 40))
    def test_series_powers(self, p, n):
        phi = np.zeros(max(n, len(p)), dtype=complex)
        phi[: len(p)] = p
        assert np.allclose(self.c.series_powers(phi, n), _pykernels.series_powers(phi, n), atol=1e-12)

    @given(polynomials(max_degree=30), polynomials(max_degree=20, scale=0.6), st.integers(1, 40))
    def test_compose_head(self, f, p, k):
        phi = np.zeros(max(k, len(p)), dtype=complex)
        phi[: len(p)] = p
        f = np.asarray(f, dtype=complex)
        a, b = self.c.compose_head(f, phi, k), _pykernels.compose_head(f, phi, k)
        assert np.allclose(a, b, rtol=1e-12, atol=1e-12 * max(1, np.abs(b).max()))

    @given(st.complex_numbers(max_magnitude=2), st.integers(0, 300))
    def test_generators(self, s, n):
        # same recurrences, different rounding order: compare at the scale of the largest term
        for name in ("binomial_coeffs", "cayley_power_coeffs"):
            a, b = getattr(self.c, name)(s, n), getattr(_pykernels, name)(s, n)
            scale = max(1.0, np.abs(b).max()) if n else 1.0
            assert np.abs(a - b).max(initial=0) <= 1e-12 * scale

    def test_read_only_input(self):
        f = np.arange(4, dtype=complex)
        f.setflags(write=False)
        phi = np.array([0.1, 0.5, 0, 0], dtype=complex)
        phi.setflags(write=False)
        assert np.allclose(self.c.compose_head(f, phi, 4), _pykernels.compose_head(f, phi, 4))
