#!/usr/bin/env python3
"""Estimates of nu and K for H_q = t_2(2, q+2) across q_max, window and method."""
import argparse

from ehp_bounds.asymptotics import METHODS, estimate_growth

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--q-max", type=int, nargs="+", default=[60, 100, 150, 200, 300])
parser.add_argument("--window", type=int, nargs="+", default=[10, 20, 30])
args = parser.parse_args()

print("q_max,window,method,nu_hat,k_hat,residual")
for q_max in args.q_max:
    for window in args.window:
        if q_max < window + 10:
            continue
        for method in METHODS:
            e = estimate_growth(q_max, window, method)
            print(f"{q_max},{window},{method},{e.nu_hat:.12f},{e.k_hat:.12f},{e.residual:.3g}")
