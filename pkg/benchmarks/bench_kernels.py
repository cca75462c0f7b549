"""Compare the compiled polynomial kernel against the pure-Python
fallback on the hot operations and on a representative solve.

Run twice to compare:

    python3 benchmarks/bench_kernels.py
    MIXEDSYM_PURE=1 python3 benchmarks/bench_kernels.py
"""

import time

from mixedsym import _kernel as K
from mixedsym.eds import TableauSpec, solve_determining
from mixedsym.jet import JetSpace
from mixedsym.poly import Poly, parse_poly


def bench(label, fn, repeat=3):
    best = min(_timed(fn) for _ in range(repeat))
    print("%-36s %8.3f s" % (label, best))


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def dense_product():
    space = JetSpace(3, 4)
    tbl = space.table
    a = parse_poly("(x + y1 + z2 + 1)", tbl) ** 6
    b = parse_poly("(x + y3 + z1 + 2)", tbl) ** 6

    def run():
        for _ in range(20):
            a * b
    return run


def repeated_total_derivative():
    space = JetSpace(3, 5)
    tbl = space.table
    p = parse_poly("(x*y1 + z3*z4 + y2^2)", tbl) ** 4

    def run():
        for _ in range(40):
            q = p
            for _ in range(3):
                q = space.total_derivative(q, truncate=True)
    return run


def representative_solve():
    def run():
        solve_determining(TableauSpec(2, 6, 0))
    return run


def main():
    print("kernel implementation: %s" % K.IMPLEMENTATION)
    bench("dense polynomial product", dense_product())
    bench("repeated total derivative", repeated_total_derivative())
    bench("determining solve (2,6,0)", representative_solve(), repeat=1)


if __name__ == "__main__":
    main()
