#!/usr/bin/env python3
"""H-sequence prefixes under each placement of the p = 2 '+1' case, against Fibonacci."""
from ehp_bounds import EvalContext, P2Policy, fibonacci, h_sequence

N = 15
print("policy," + ",".join(f"H_{j}" for j in range(1, N + 1)) + ",dominates_F")
for policy in P2Policy:
    h = h_sequence(N, EvalContext(2, policy))
    ok = all(h[j - 1] >= fibonacci(j) for j in range(1, N + 1))
    print(f"{policy.value}," + ",".join(map(str, h)) + f",{ok}")
print("fibonacci," + ",".join(str(fibonacci(j)) for j in range(1, N + 1)) + ",")
