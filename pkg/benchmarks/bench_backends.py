#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-Python fallback.

Times the hot kernels (special functions, response functions, stationary
covariance quadrature) and one end-to-end sweep under both backends.

Usage:  python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import statistics
import time

import numpy as np


def best_of(fn, repeat, number=1):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(number):
            fn()
        times.append((time.perf_counter() - t0) / number)
    return min(times), statistics.median(times)


def kernel_cases(impl):
    z_grid = [complex(a, b) for a in np.linspace(0.3, 40.0, 20)
              for b in np.linspace(-25.0, 25.0, 10)]
    x_grid = np.geomspace(1e-2, 400.0, 200)

    def digamma():
        for z in z_grid:
            impl.digamma(z)

    def scaled_ei():
        for x in x_grid:
            impl.ei_scaled_pair(float(x))

    def chi_exp_s2():
        for x in x_grid:
            impl.chi_real(impl.VARIANT_EXP_CUTOFF, 0.1, 100.0, 2.0, float(x))

    def cov_ld():
        impl.covariance_integral(impl.VARIANT_LORENTZ_DRUDE, 1.0, 100.0, 1.0,
                                 1.0, 0.1, 0, False, 1e-12, 1e-9)

    def cov_ld_narrow():
        impl.covariance_integral(impl.VARIANT_LORENTZ_DRUDE, 1e-6, 100.0, 1.0,
                                 1.0, 0.5, 0, False, 1e-12, 1e-9)

    def cov_exp_s2():
        impl.covariance_integral(impl.VARIANT_EXP_CUTOFF, 0.1, 100.0, 2.0,
                                 1.0, 0.1, 2, False, 1e-12, 1e-9)

    return [
        ("digamma x200", digamma),
        ("scaled Ei pair x200", scaled_ei),
        ("chi_real exp-cutoff s=2 x200", chi_exp_s2),
        ("covariance integral LD", cov_ld),
        ("covariance integral LD (narrow peak)", cov_ld_narrow),
        ("covariance integral exp s=2", cov_exp_s2),
    ]


def sweep_case():
    # end-to-end: one Ohmic-vs-super-Ohmic temperature sweep point
    from coldprobe import ProbeSpec, SpectralModel, qfi_gaussian
    probe = ProbeSpec(1.0)
    model = SpectralModel.exp_cutoff(0.1, 100.0, 2.0)

    def run():
        qfi_gaussian(model, probe, 0.05)

    return run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    from coldprobe import _pure
    try:
        from coldprobe import _kernels
    except ImportError:
        _kernels = None

    backends = [("pure", _pure)]
    if _kernels is not None:
        backends.insert(0, ("compiled", _kernels))
    else:
        print("compiled extension not available; timing pure backend only")

    names = [name for name, _ in kernel_cases(_pure)]
    results = {name: {} for name in names}
    for bname, impl in backends:
        for name, fn in kernel_cases(impl):
            best, _ = best_of(fn, args.repeat)
            results[name][bname] = best

    width = max(len(n) for n in names)
    header = f"{'kernel':<{width}}  " + "".join(f"{b:>15}" for b, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name in names:
        row = f"{name:<{width}}  "
        for bname, _ in backends:
            row += f"{results[name][bname] * 1e3:>12.3f} ms"
        if len(backends) == 2:
            row += f"{results[name]['pure'] / results[name]['compiled']:>9.1f}x"
        print(row)

    # end-to-end sweep point under the active backend selection
    import coldprobe
    run = sweep_case()
    best, _ = best_of(run, args.repeat)
    print(f"\nend-to-end QFI point (exp-cutoff s=2), active backend "
          f"'{coldprobe.backend_name}': {best * 1e3:.2f} ms")


if __name__ == "__main__":
    main()
