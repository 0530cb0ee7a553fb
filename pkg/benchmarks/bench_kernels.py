"""Compare the compiled and pure-Python quartic kernels.

Run with ``python3 benchmarks/bench_kernels.py [--n 20000] [--repeat 5]``.
Times the single-call solver, the root polish and the batch solver on the
same random parameter sets for every available backend, and checks that the
backends agree.
"""

import argparse
import statistics
import time

import numpy as np

from knds import kernels


def _random_params(n, seed):
    rng = np.random.default_rng(seed)
    lam = 10 ** rng.uniform(-3, 0, n)
    m = rng.uniform(0.2, 1.0, n) / np.sqrt(lam)
    a = rng.uniform(0, 1.2, n) * m
    q_sq = rng.uniform(0, 1.2, n) * m * m
    delta = 1 - lam * a * a / 3
    eta = a * a + q_sq
    return lam, m, delta, eta


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def bench(backend, params, repeat):
    mod = kernels.get_backend(backend)
    lam, m, delta, eta = params
    rows = list(zip(lam.tolist(), m.tolist(), delta.tolist(), eta.tolist()))
    seeds = [r.real for r in mod.solve_horizon_quartic(*rows[0])]

    def single():
        for row in rows:
            mod.solve_horizon_quartic(*row)

    def polish():
        for row in rows:
            for z in seeds:
                mod.polish_root(*row, z)

    def batch():
        mod.solve_horizon_quartic_batch(lam, m, delta, eta)

    return {name: _best(fn, repeat) for name, fn in
            (("quartic solve", single), ("newton polish", polish), ("batch solve", batch))}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    params = _random_params(args.n, args.seed)
    backends = kernels.available_backends()
    results = {b: bench(b, params, args.repeat) for b in backends}

    width = max(len(b) for b in backends)
    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'kernel':<15}" + "".join(f"{b:>{width + 12}}" for b in backends) + "     speedup")
    for kernel in ("quartic solve", "newton polish", "batch solve"):
        line = f"{kernel:<15}"
        for b in backends:
            line += f"{results[b][kernel][0] * 1e3:>{width + 9}.1f} ms"
        if "cython" in results and "python" in results:
            line += f"{results['python'][kernel][0] / results['cython'][kernel][0]:>11.1f}x"
        print(line)

    if len(backends) > 1:
        ref = kernels.get_backend(backends[0]).solve_horizon_quartic_batch(*params)
        for b in backends[1:]:
            other = kernels.get_backend(b).solve_horizon_quartic_batch(*params)
            scale = np.maximum(1.0, np.abs(ref))
            print(f"max |{backends[0]} - {b}| / scale = {np.max(np.abs(ref - other) / scale):.2e}")


if __name__ == "__main__":
    main()
