"""Timing comparison of the compiled kernels against the pure-Python twins.

Run from the repository root:

    python3 benchmarks/bench_kernels.py --repeat 5

Each kernel is timed on a fixed representative workload; the table reports
the best wall time per backend and the resulting speedup.
"""

import argparse
import random
import time

from waldq import backend


def workload_rel_pos(q):
    rng = random.Random(11)
    args = []
    for _ in range(400):
        a1, b1 = rng.randint(-2, 3), rng.randint(-2, 3)
        a2, b2 = rng.randint(-2, 3), rng.randint(-2, 3)
        c1 = (b1, tuple(rng.randrange(1, q) for _ in range(max(1, a1 - b1))))
        c2 = (b2, tuple(rng.randrange(1, q) for _ in range(max(1, a2 - b2))))
        args.append((q, a1, b1, c1, a2, b2, c2))
    return "rel_pos", args


def workload_canon(q):
    rng = random.Random(12)
    args = []
    for _ in range(400):
        cols = []
        for _ in range(4):
            off = rng.randint(-2, 2)
            n = rng.randint(1, 5)
            co = [rng.randrange(1, q)] + [rng.randrange(q) for _ in range(n - 1)]
            while len(co) > 1 and co[-1] == 0:
                co.pop()
            cols.append((off, tuple(co)))
        args.append((q, *cols))
    return "canon", args


def workload_sublattices(q):
    args = [(q, 0, 0, (0, ()), n) for n in (4, 5, 6)]
    return "sublattices", args


def workload_sym_diag(q):
    rng = random.Random(13)
    args = []
    for _ in range(150):
        entries = []
        for _ in range(3):
            v = rng.randint(0, 2)
            entries.append((v, tuple(rng.randrange(1, q) for _ in range(4))))
        args.append((q, 10, *entries))
    return "sym_diag", args


def workload_sym_normal_cert(q):
    _, diag_args = workload_sym_diag(q)
    args = [(q, 10, 5, b11, b12, b22, 2) for (_q, _p, b11, b12, b22) in diag_args]
    return "sym_normal_cert", args


WORKLOADS = (
    workload_rel_pos,
    workload_canon,
    workload_sublattices,
    workload_sym_diag,
    workload_sym_normal_cert,
)


def time_backend(name, kernel, args, repeat):
    backend.use(name)
    fn = getattr(backend, kernel)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for a in args:
            fn(*a)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--q", type=int, default=3, help="residue field size")
    parser.add_argument("--repeat", type=int, default=5, help="timing repeats")
    args = parser.parse_args(argv)

    names = backend.available()
    if "fast" not in names:
        print("compiled kernels are not built; timing the pure backend only")

    rows = []
    for make in WORKLOADS:
        kernel, payload = make(args.q)
        per = {}
        for name in names:
            per[name] = time_backend(name, kernel, payload, args.repeat)
        rows.append((kernel, len(payload), per))
    backend.use(names[-1])

    width = max(len(r[0]) for r in rows)
    header = f"{'kernel':<{width}}  {'calls':>6}  " + "  ".join(
        f"{n + ' (ms)':>11}" for n in names
    )
    if len(names) > 1:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for kernel, ncalls, per in rows:
        line = f"{kernel:<{width}}  {ncalls:>6}  " + "  ".join(
            f"{per[n] * 1e3:>11.3f}" for n in names
        )
        if len(names) > 1:
            line += f"  {per['pure'] / per['fast']:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
