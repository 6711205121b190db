#!/usr/bin/env python3
"""Wall-clock profile of the expensive constructions across truncation orders.

Documents where the time goes: Euler products are the quadratic piece (with a
numpy fast path for modular rings), inversions are order * support thanks to
the sparse divisors, and large dense exact products run through packed-integer
convolution.

Usage:
    python scripts/timing_profile.py
    python scripts/timing_profile.py --orders 2000 8000 20000
"""

import argparse
import time

from overq.series import mod_ring
from overq.squares import rk_series
from overq.theta import euler_product, overpartition_gf, p4n3_product_form, phi


def timed(label: str, fn) -> None:
    t0 = time.perf_counter()
    fn()
    print(f"  {label:42s} {time.perf_counter() - t0:8.2f}s")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=[2_000, 10_000])
    args = ap.parse_args()

    for n in args.orders:
        print(f"order {n}:")
        timed("euler product, exact", lambda: euler_product(n))
        timed("euler product, mod 40", lambda: euler_product(n, mod_ring(40)))
        timed("1/phi(-q), exact (sparse inversion)", lambda: phi(n).alternate_signs().inverse())
        timed("overpartition gf, exact (dual route)", lambda: overpartition_gf(n))
        timed("overpartition gf, mod 40 (dual route)", lambda: overpartition_gf(n, mod_ring(40)))
        timed("phi^3, exact", lambda: rk_series(3, n))
        timed("phi^5, exact", lambda: rk_series(5, n))
        timed("phi^8, mod 9", lambda: rk_series(8, n, mod_ring(9)))
        timed("product form of pbar(4n+3), exact", lambda: p4n3_product_form(n // 4))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
