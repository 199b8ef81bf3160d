"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 64 128 256] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from hardy_specta._kernels import _pykernels, available_backends
from hardy_specta.mobius import canonical_map
from hardy_specta.series import lft_series


def cases(n):
    phi = lft_series(canonical_map("HA", 0.5), n)
    f = _pykernels.cayley_power_coeffs(0.2 + 0.1j, 4 * n)
    return {
        "series_powers": lambda k: k.series_powers(phi, n),
        "compose_head": lambda k: k.compose_head(f, phi, n // 2),
        "cayley_power_coeffs": lambda k: k.cayley_power_coeffs(0.2 + 0.1j, 16 * n),
        "binomial_coeffs": lambda k: k.binomial_coeffs(0.5, 16 * n),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = available_backends()
    names = list(backends)
    print(f"{'kernel':<22}{'N':>6}" + "".join(f"{b + ' ms':>14}" for b in names) + f"{'speedup':>10}")
    for n in args.sizes:
        for kernel, fn in cases(n).items():
            times = {}
            for b in names:
                mod = backends[b]
                number = max(1, int(0.05 / max(timeit.timeit(lambda: fn(mod), number=1), 1e-6)))
                best = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
                times[b] = best * 1e3
            ref = fn(backends["python"])
            for b in names:
                assert np.allclose(fn(backends[b]), ref, rtol=1e-10, atol=1e-12 * np.abs(ref).max())
            speed = times["python"] / times["cython"] if "cython" in times else float("nan")
            print(f"{kernel:<22}{n:>6}" + "".join(f"{times[b]:>14.4f}" for b in names) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
