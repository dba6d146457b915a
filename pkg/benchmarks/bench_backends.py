"""Compare the compiled scalar kernel against the pure-Python one.

Two measurements:

* a scalar microbenchmark that imports both kernel modules side by side
  and times the primitive operations on identical operand streams, and
* matrix workloads (multiply, determinant, characteristic polynomial)
  run in subprocesses so that ELTLAB_BACKEND selects one kernel for the
  whole library.

Usage::

    python3 benchmarks/bench_backends.py            # full report
    python3 benchmarks/bench_backends.py --repeat 5 # more samples
"""

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

SEED = 1789


def _operands(seed, count):
    """Kernel-independent scalar descriptions: (tangible, layer) or None."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        if rng.random() < 0.1:
            out.append(None)
        else:
            t = Fraction(rng.randint(-60, 60), rng.randint(1, 6))
            l = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            out.append((t, l))
    return out


def _materialise(mod, descriptions):
    return [
        mod.NEG_INF if d is None else mod.ELTScalar(d[0], d[1])
        for d in descriptions
    ]


def _best_of(repeat, fn):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        if best is None or elapsed < best:
            best = elapsed
    return best


def scalar_report(repeat):
    import eltlab._pykernel as py

    kernels = [("py", py)]
    try:
        import eltlab._kernel as c
    except ImportError:
        print("compiled kernel not built; scalar section covers py only")
    else:
        kernels.append(("c", c))

    descriptions = _operands(SEED, 20000)
    rows = []
    for name, mod in kernels:
        xs = _materialise(mod, descriptions)
        ys = xs[1:] + xs[:1]
        pairs = list(zip(xs, ys))

        def run_add():
            for x, y in pairs:
                x + y

        def run_mul():
            for x, y in pairs:
                x * y

        def run_neg_pow():
            for x, _ in pairs:
                (-x) ** 3

        rows.append((name, {
            "add": _best_of(repeat, run_add),
            "mul": _best_of(repeat, run_mul),
            "neg+pow": _best_of(repeat, run_neg_pow),
        }))

    print(f"scalar primitives, {len(descriptions)} operations per pass, "
          f"best of {repeat}:")
    ops = ["add", "mul", "neg+pow"]
    header = "  {:<8}".format("kernel") + "".join(f"{op:>12}" for op in ops)
    print(header)
    for name, times in rows:
        cells = "".join(f"{times[op] * 1e3:>10.2f}ms" for op in ops)
        print(f"  {name:<8}{cells}")
    if len(rows) == 2:
        py_times = rows[0][1]
        c_times = rows[1][1]
        cells = "".join(f"{py_times[op] / c_times[op]:>11.2f}x" for op in ops)
        print(f"  {'speedup':<8}{cells}")
    print()


MATRIX_TASKS = ["matmul", "det", "charpoly"]


def matrix_worker():
    """Run the matrix workloads under whichever backend core selected."""
    import eltlab
    from eltlab.matrix import charpoly, det
    from eltlab.rand import random_matrix

    rng = random.Random(SEED)
    mats = {
        "matmul": (random_matrix(rng, 25), random_matrix(rng, 25)),
        "det": random_matrix(rng, 7),
        "charpoly": random_matrix(rng, 6),
    }
    print(f"backend {eltlab.BACKEND}")
    for task in MATRIX_TASKS:
        start = time.perf_counter()
        if task == "matmul":
            a, b = mats[task]
            a * b
        elif task == "det":
            det(mats[task])
        else:
            charpoly(mats[task])
        print(f"{task} {time.perf_counter() - start:.6f}")


def _run_worker(backend):
    env = dict(os.environ, ELTLAB_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker"],
        capture_output=True, text=True, env=env,
    )
    if proc.returncode != 0:
        return None, proc.stderr.strip()
    times = {}
    for line in proc.stdout.splitlines()[1:]:
        task, seconds = line.split()
        times[task] = float(seconds)
    return times, None


def matrix_report(repeat):
    results = {}
    for backend in ("py", "c"):
        samples = []
        error = None
        for _ in range(repeat):
            times, error = _run_worker(backend)
            if times is None:
                break
            samples.append(times)
        if error is not None:
            print(f"backend {backend!r} unavailable: {error}")
            continue
        results[backend] = {
            task: min(s[task] for s in samples) for task in MATRIX_TASKS
        }

    print("matrix workloads (25x25 multiply, 7x7 determinant, "
          f"6x6 charpoly), best of {repeat}:")
    header = "  {:<8}".format("backend") + "".join(
        f"{task:>12}" for task in MATRIX_TASKS
    )
    print(header)
    for backend, times in results.items():
        cells = "".join(f"{times[t] * 1e3:>10.2f}ms" for t in MATRIX_TASKS)
        print(f"  {backend:<8}{cells}")
    if len(results) == 2:
        cells = "".join(
            f"{results['py'][t] / results['c'][t]:>11.2f}x" for t in MATRIX_TASKS
        )
        print(f"  {'speedup':<8}{cells}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="samples per measurement, the best is kept")
    parser.add_argument("--worker", action="store_true",
                        help=argparse.SUPPRESS)
    args = parser.parse_args(argv)
    if args.worker:
        matrix_worker()
        return
    scalar_report(args.repeat)
    matrix_report(args.repeat)


if __name__ == "__main__":
    main()
