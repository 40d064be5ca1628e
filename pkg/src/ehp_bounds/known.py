"""Tables of actual torsion exponents s_p(n, q), and margins of every bound against them.

File format: UTF-8 CSV with header ``p,n,q,s,source``; lines starting with
``#`` are comments. ``s`` is log_p of the order of the p-torsion of pi_q(S^n).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .bounds import bodigheimer_henn_bound, henn_bound, strong_bound
from .core import EHPError, EvalContext, P2Policy, is_prime, sphere_value

HEADER = ("p", "n", "q", "s", "source")


class KnownDataError(ValueError):
    def __init__(self, line: int, column: int, reason: str):
        self.line, self.column, self.reason = line, column, reason
        super().__init__(f"line {line}, field {column}: {reason}")


@dataclass(frozen=True)
class KnownTorsionRecord:
    p: int
    n: int
    q: int
    s: int
    source: str = ""

    def validate(self) -> None:
        """Raise ValueError (with the offending field index) on an impossible record."""
        if not is_prime(self.p):
            raise _FieldError(1, f"{self.p} is not prime")
        if self.n < 1:
            raise _FieldError(2, "n must be >= 1")
        if self.q < 1:
            raise _FieldError(3, "q must be >= 1")
        if self.s < 0:
            raise _FieldError(4, "s must be >= 0")
        if self.q <= self.n and self.s != 0:
            raise _FieldError(4, f"pi_{self.q}(S^{self.n}) has no torsion, s must be 0")


class _FieldError(ValueError):
    def __init__(self, column, reason):
        self.column = column
        super().__init__(reason)


def parse_known(text: str) -> list[KnownTorsionRecord]:
    records = []
    header_seen = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        row = next(csv.reader([line]))
        if not header_seen:
            if tuple(c.strip() for c in row) != HEADER:
                raise KnownDataError(lineno, 1, f"expected header {','.join(HEADER)}")
            header_seen = True
            continue
        if len(row) < 4:
            raise KnownDataError(lineno, len(row) + 1, "missing field")
        values = []
        for col, raw in enumerate(row[:4], start=1):
            try:
                values.append(int(raw.strip()))
            except ValueError:
                raise KnownDataError(lineno, col, f"not an integer: {raw!r}") from None
        # unquoted commas in the citation are kept
        source = ",".join(row[4:]).strip()
        rec = KnownTorsionRecord(*values, source=source)
        try:
            rec.validate()
        except _FieldError as e:
            raise KnownDataError(lineno, e.column, str(e)) from None
        records.append(rec)
    if not header_seen:
        raise KnownDataError(1, 1, "empty file, no header")
    return records


def load_known(path) -> list[KnownTorsionRecord]:
    return parse_known(Path(path).read_text(encoding="utf-8"))


def dump_known(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in records:
        w.writerow([r.p, r.n, r.q, r.s, r.source])
    return buf.getvalue()


def seed_path(name: str = "seed_known.csv"):
    return resources.files("ehp_bounds") / "data" / name


def load_seed(name: str = "seed_known.csv") -> list[KnownTorsionRecord]:
    return parse_known(seed_path(name).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class ComparisonRow:
    record: KnownTorsionRecord
    bound_name: str
    bound_value: int | float | None
    margin: int | float | None
    error: str = ""

    @property
    def ok(self) -> bool:
        return self.margin is not None and self.margin >= 0

    def to_dict(self) -> dict:
        r = self.record
        return {"p": r.p, "n": r.n, "q": r.q, "s": r.s, "bound": self.bound_name,
                "bound_value": self.bound_value, "margin": self.margin, "ok": self.ok,
                "error": self.error, "source": r.source}


@dataclass
class ComparisonReport:
    rows: list[ComparisonRow]

    @property
    def violations(self) -> list[ComparisonRow]:
        return [r for r in self.rows if not r.error and not r.ok]

    @property
    def errors(self) -> list[ComparisonRow]:
        return [r for r in self.rows if r.error]

    def summary(self) -> dict:
        return {"records": len({r.record for r in self.rows}), "rows": len(self.rows),
                "violations": len(self.violations), "errors": len(self.errors)}


BOUND_NAMES = ("t", "boyde_strong", "henn", "bodigheimer_henn")


def _strong_for(p, n, q):
    if p != 2 and n % 2 == 0:
        # even sphere: sum over the two odd summands of the splitting
        if q <= n:
            return 0
        return strong_bound(p, n - 1, q - 1) + strong_bound(p, 2 * n - 1, q)
    return strong_bound(p, n, q)


def compare(records, policy: P2Policy = P2Policy.Q2N1) -> ComparisonReport:
    """Margins (bound - s) of t, the strong bound, 2^(q-n+1) and 3^(q-n/2) for each record.

    For even n at an odd prime, t and the strong bound go through the splitting.
    A negative margin means the record or the implementation is wrong; it is
    reported, not raised.
    """
    contexts: dict[int, EvalContext] = {}
    rows = []
    for rec in records:
        ctx = contexts.setdefault(rec.p, EvalContext(rec.p, policy))
        try:
            values = {
                "t": sphere_value(ctx, rec.n, rec.q),
                "boyde_strong": _strong_for(rec.p, rec.n, rec.q),
                "henn": henn_bound(rec.n, rec.q),
                "bodigheimer_henn": bodigheimer_henn_bound(rec.n, rec.q).value(),
            }
        except EHPError as e:
            rows.append(ComparisonRow(rec, "t", None, None, str(e)))
            continue
        for name in BOUND_NAMES:
            v = values[name]
            rows.append(ComparisonRow(rec, name, v, v - rec.s))
    return ComparisonReport(rows)
