"""Compare the compiled and pure-Python enumeration kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--sizes 3 4]
"""

import argparse
import timeit

from vncheck import kernels


def bench(name, n, repeat):
    k = kernels.get_backend(name)
    count = sum(len(k.associative_tables(n, u)) for u in range(n))
    best = min(timeit.repeat(lambda: [k.associative_tables(n, u) for u in range(n)], number=1, repeat=repeat))
    return count, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 4])
    args = ap.parse_args()
    names = sorted(kernels.BACKENDS)
    if "compiled" not in names:
        print("compiled extension not built; timing the python backend only")
    print(f"{'n':>2}  {'backend':<9} {'monoids':>8} {'best (s)':>10}")
    results = {}
    for n in args.sizes:
        for name in names:
            count, t = bench(name, n, args.repeat)
            results[(n, name)] = (count, t)
            print(f"{n:>2}  {name:<9} {count:>8} {t:>10.4f}")
        if len(names) == 2:
            (c1, t1), (c2, t2) = results[(n, "compiled")], results[(n, "python")]
            assert c1 == c2, "backends disagree"
            print(f"{n:>2}  speedup   {t2 / t1:>19.1f}x")


if __name__ == "__main__":
    main()
