#!/usr/bin/env python3
"""Compare t_p(3, 2p + j*P) with F_{2j+1} for P = 4p+5 and P = 4p-5.

Also lists the stems of S^3 where t_p vanishes, which shows why the 4p+5
progression falls into gaps for p >= 5.
"""
import argparse

from ehp_bounds import EvalContext, fibonacci, t_value

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7, 11, 13])
parser.add_argument("--j-max", type=int, default=6)
args = parser.parse_args()

print("p,period,j,q,t,F_2j+1,holds")
for p in args.primes:
    ctx = EvalContext(p)
    for period in (4 * p + 5, 4 * p - 5):
        for j in range(args.j_max + 1):
            q = 2 * p + j * period
            t, f = t_value(ctx, 3, q), fibonacci(2 * j + 1)
            print(f"{p},{period},{j},{q},{t},{f},{t >= f}")

print()
print("p,zero stems of S^3 in [2p-3, 12p]")
for p in args.primes:
    ctx = EvalContext(p)
    zeros = [k for k in range(2 * p - 3, 12 * p + 1) if t_value(ctx, 3, 3 + k) == 0]
    print(f"{p},\"{' '.join(map(str, zeros))}\"")
