"""Growth constants of H_q = t_2(2, q + 2), which behaves like K * nu^q."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from .bounds import limitation_constants
from .core import DomainError, EvalContext, h_sequence
from .verify import VerificationReport, Violation

LN2 = math.log(2.0)
METHODS = ("geometric-window", "ratio", "log-linear-fit")


def int_log(x: int) -> float:
    """Natural log of a positive integer of any size.

    Uses the bit length and the leading 64 bits, so the relative error stays
    far below 1e-12 however large x is.
    """
    if x <= 0:
        raise DomainError(f"log of non-positive integer {x}")
    shift = x.bit_length() - 64
    if shift <= 0:
        return math.log(x)
    return math.log(x >> shift) + shift * LN2


@dataclass(frozen=True)
class GrowthEstimate:
    nu_hat: float
    k_hat: float
    q_used: int
    window: int
    method: str
    residual: float

    def to_dict(self) -> dict:
        return {"nu_hat": self.nu_hat, "k_hat": self.k_hat, "q_used": self.q_used,
                "window": self.window, "method": self.method, "residual": self.residual}


def estimate_growth(q_max: int = 200, window: int = 20, method: str = "geometric-window",
                    ctx: EvalContext | None = None) -> GrowthEstimate:
    """Estimate nu and K from the exact values H_1..H_{q_max}.

    geometric-window: nu = (H_qmax / H_{qmax-window})^(1/window)
    ratio:            nu = H_qmax / H_{qmax-1}
    log-linear-fit:   least squares of log H_q on q over the last `window` terms

    K is then exp(log H_qmax - q_max * log nu), except for the fit, which
    uses its own intercept.
    """
    if window < 10:
        raise DomainError(f"window must be >= 10, got {window}")
    if q_max < window + 10:
        raise DomainError(f"q_max must be >= window + 10, got q_max={q_max}, window={window}")
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    h = h_sequence(q_max, ctx)
    logs = {q: int_log(h[q - 1]) for q in range(q_max - window, q_max + 1)}

    if method == "geometric-window":
        log_nu = (logs[q_max] - logs[q_max - window]) / window
        log_k = logs[q_max] - q_max * log_nu
    elif method == "ratio":
        log_nu = logs[q_max] - logs[q_max - 1]
        log_k = logs[q_max] - q_max * log_nu
    else:
        qs = list(range(q_max - window + 1, q_max + 1))
        fit = statistics.linear_regression(qs, [logs[q] for q in qs])
        log_nu, log_k = fit.slope, fit.intercept

    residual = max(abs(logs[q] - (log_k + q * log_nu))
                   for q in range(q_max - window + 1, q_max + 1))
    return GrowthEstimate(math.exp(log_nu), math.exp(log_k), q_max, window, method, residual)


def golden_floor_check(q_max: int = 100, window: int = 10) -> VerificationReport:
    """The estimated growth base of H must exceed phi^(2/13), the p = 2 lower limit."""
    if q_max < 30:
        raise DomainError(f"q_max must be >= 30, got {q_max}")
    est = estimate_growth(q_max, window)
    floor_value = limitation_constants(2)[0].value()
    report = VerificationReport("golden-floor", {"p": [2], "q_max": q_max, "window": window},
                                checks_run=1)
    if not est.nu_hat >= floor_value:
        report.violations.append(Violation(2, 2, q_max + 2, "golden-floor", ">=",
                                           est.nu_hat, floor_value))
    return report
