"""Compare the compiled multiplication kernel with the pure-Python one.

Two levels are timed: the raw packed kernel on random sparse inputs, and
the full icosahedral group acting on its degree-15 invariant, run in fresh
interpreters with the backend selected through POLYMODELS_PURE_PYTHON.

    python3 benchmarks/bench_kernels.py [--terms 400] [--repeat 5]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from polymodels import kernels

END_TO_END = """
import time
from polymodels import BACKEND
from polymodels.catalog.invariants import i15
from polymodels.groups import act, construct_named
group, p = construct_named("IJ"), i15()
start = time.perf_counter()
for g in group.elements:
    act(p, g, ("x", "y", "z"))
print(BACKEND, time.perf_counter() - start)
"""


def random_packed(rng: random.Random, terms: int, irrational: bool):
    keys = rng.sample(range(1 << 18), terms)
    a = [rng.randint(-10**6, 10**6) for _ in keys]
    b = [rng.randint(-10**6, 10**6) for _ in keys] if irrational else None
    return keys, a, b


def bench_raw(terms: int, repeat: int) -> None:
    rng = random.Random(0)
    for irrational in (False, True):
        p = random_packed(rng, terms, irrational)
        q = random_packed(rng, terms, irrational)
        py = min(timeit.repeat(lambda: kernels.python_mul_packed(*p, *q), number=1, repeat=repeat))
        line = f"raw  {'Q(sqrt5)' if irrational else 'Q':9s} {terms}x{terms} terms  python {py * 1e3:8.2f} ms"
        if kernels.compiled_available():
            from polymodels import _ckernels
            c = min(timeit.repeat(lambda: _ckernels.mul_packed(*p, *q), number=1, repeat=repeat))
            line += f"  compiled {c * 1e3:8.2f} ms  speedup {py / c:5.1f}x"
        print(line)


def bench_end_to_end() -> None:
    times = {}
    for flag in ("1", "0"):
        env = dict(os.environ, POLYMODELS_PURE_PYTHON=flag)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        times[out[0]] = float(out[1])
        print(f"end-to-end backend {out[0]:8s} {times[out[0]]:7.2f} s")
    if len(times) == 2:
        print(f"end-to-end speedup {times['python'] / times[next(k for k in times if k != 'python')]:.2f}x")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--terms", type=int, default=400)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    print(f"compiled kernels available: {kernels.compiled_available()}")
    bench_raw(args.terms, args.repeat)
    bench_end_to_end()


if __name__ == "__main__":
    main()
