"""Exhaustive sweeps over compositions with bounded length and part size.

The per-composition kernel works in integers: the coefficients of g_c are
put over their least common denominator, then (1-q) is divided out k times
by prefix sums, each division checking that the running polynomial
vanishes at q = 1. The resulting integer vector is a positive multiple of
f_c, so positivity, unimodality and log-concavity can be read off it.
"""
from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from multiprocessing import get_context

from .compositions import Composition, identity_checks
from .errors import NonExactDivision
from .exactmath import is_log_concave, is_positive, is_unimodal

CHECKS = ("positive", "unimodal", "logconcave", "identities")
CSV_COLUMNS = ("k", "parts", "n", "positive", "unimodal", "logconcave", "f_coeffs")


@dataclass(frozen=True)
class SweepConfig:
    max_parts: int
    max_part: int
    checks: frozenset = frozenset({"positive", "unimodal", "logconcave"})
    jobs: int = 1
    output: str | None = None

    def __post_init__(self):
        if self.max_parts < 1 or self.max_part < 1:
            raise ValueError("max_parts and max_part must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")

    @property
    def total(self) -> int:
        return sum(self.max_part ** k for k in range(1, self.max_parts + 1))


def reduced_numerators(parts: tuple[int, ...]) -> tuple[list[int], int]:
    """Return ``(nums, den)`` with ``f_c = sum_i nums[i]/den * q^i``.

    ``den > 0`` is the lcm of the closed-form denominators; the fraction
    is not reduced.
    """
    betas = [0, *accumulate(parts)]
    n = betas[-1]
    dens = []
    for i, bi in enumerate(betas):
        d = 1
        for j, bj in enumerate(betas):
            if j != i:
                d *= bj - bi
        dens.append(d)
    den = math.lcm(*dens)
    coeffs = [0] * (n + 1)
    for bi, d in zip(betas, dens):
        coeffs[bi] = den // d
    for _ in range(len(parts)):
        coeffs = list(accumulate(coeffs))
        if coeffs.pop() != 0:
            raise NonExactDivision(f"(1-q) does not divide the polynomial for {parts}")
    return coeffs, den


def format_coeffs(nums: list[int], den: int) -> str:
    out = []
    for x in nums:
        g = math.gcd(x, den)
        a, b = x // g, den // g
        out.append(str(a) if b == 1 else f"{a}/{b}")
    return " ".join(out)


def composition_at(index: int, max_part: int) -> tuple[int, ...]:
    """Unrank the lexicographic (k, parts) enumeration."""
    k = 1
    while index >= max_part ** k:
        index -= max_part ** k
        k += 1
    digits = []
    for _ in range(k):
        index, r = divmod(index, max_part)
        digits.append(r + 1)
    return tuple(reversed(digits))


def _product_from(first: tuple[int, ...], max_part: int):
    """Odometer over ``{1..max_part}^k`` starting at ``first``."""
    cur = list(first)
    while True:
        yield tuple(cur)
        i = len(cur) - 1
        while i >= 0 and cur[i] == max_part:
            cur[i] = 1
            i -= 1
        if i < 0:
            return
        cur[i] += 1


def iter_compositions(max_parts: int, max_part: int, start: int = 0, stop: int | None = None):
    """Compositions with at most ``max_parts`` parts each at most ``max_part``.

    Ordered by number of parts, then lexicographically; ``start``/``stop``
    select a slice of that order.
    """
    total = sum(max_part ** k for k in range(1, max_parts + 1))
    stop = total if stop is None else min(stop, total)
    idx = start
    while idx < stop:
        first = composition_at(idx, max_part)
        remaining_in_block = max_part ** len(first) - _rank_in_block(first, max_part)
        count = min(remaining_in_block, stop - idx)
        for _, parts in zip(range(count), _product_from(first, max_part)):
            yield parts
        idx += count


def _rank_in_block(parts: tuple[int, ...], max_part: int) -> int:
    r = 0
    for p in parts:
        r = r * max_part + (p - 1)
    return r


@dataclass
class Row:
    parts: tuple[int, ...]
    positive: bool
    unimodal: bool
    logconcave: bool
    identities: bool | None
    f_coeffs: str

    @property
    def ok(self) -> bool:
        return self.positive and self.unimodal and self.logconcave and self.identities is not False


def check_composition(parts: tuple[int, ...], checks=frozenset(CHECKS[:3]), with_coeffs=True) -> Row:
    nums, den = reduced_numerators(parts)
    ident = None
    if "identities" in checks:
        ident = identity_checks(Composition(parts)).all_ok
    return Row(
        parts=parts,
        positive=is_positive(nums) if "positive" in checks else True,
        unimodal=is_unimodal(nums) if "unimodal" in checks else True,
        logconcave=is_log_concave(nums) if "logconcave" in checks else True,
        identities=ident,
        f_coeffs=format_coeffs(nums, den) if with_coeffs else "",
    )


def _run_chunk(args) -> list[Row]:
    start, stop, max_parts, max_part, checks, with_coeffs = args
    return [
        check_composition(p, checks, with_coeffs)
        for p in iter_compositions(max_parts, max_part, start, stop)
    ]


@dataclass
class SweepResult:
    config: SweepConfig
    total: int = 0
    failures: dict = field(default_factory=lambda: {c: [] for c in CHECKS})
    seconds: float = 0.0
    csv_text: str | None = None

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def summary(self) -> dict:
        return {
            "max_parts": self.config.max_parts,
            "max_part": self.config.max_part,
            "checks": sorted(self.config.checks),
            "total": self.total,
            "failures": {k: [",".join(map(str, p)) for p in v] for k, v in self.failures.items()},
            "failure_counts": {k: len(v) for k, v in self.failures.items()},
            "seconds": round(self.seconds, 3),
            "ok": self.ok,
        }


def _chunks(total: int, jobs: int) -> list[tuple[int, int]]:
    pieces = max(1, jobs * 8)
    step = -(-total // pieces)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def run_sweep(config: SweepConfig, write_csv: bool = True) -> SweepResult:
    """Run every requested check on every composition in the range.

    Work is split into fixed index ranges; results are merged in index
    order so the output does not depend on ``jobs``.
    """
    t0 = time.perf_counter()
    total = config.total
    checks = frozenset(config.checks)
    tasks = [
        (lo, hi, config.max_parts, config.max_part, checks, write_csv)
        for lo, hi in _chunks(total, config.jobs)
    ]
    if config.jobs == 1:
        chunks = map(_run_chunk, tasks)
    else:
        pool = get_context("fork").Pool(config.jobs)
        chunks = pool.imap(_run_chunk, tasks)

    result = SweepResult(config)
    buf = io.StringIO() if write_csv else None
    writer = None
    if buf is not None:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
    try:
        for rows in chunks:
            for row in rows:
                result.total += 1
                if not row.positive:
                    result.failures["positive"].append(row.parts)
                if not row.unimodal:
                    result.failures["unimodal"].append(row.parts)
                if not row.logconcave:
                    result.failures["logconcave"].append(row.parts)
                if row.identities is False:
                    result.failures["identities"].append(row.parts)
                if writer is not None:
                    writer.writerow((
                        len(row.parts),
                        ",".join(map(str, row.parts)),
                        sum(row.parts),
                        int(row.positive),
                        int(row.unimodal),
                        int(row.logconcave),
                        row.f_coeffs,
                    ))
    finally:
        if config.jobs != 1:
            pool.close()
            pool.join()
    result.seconds = time.perf_counter() - t0
    if buf is not None:
        result.csv_text = buf.getvalue()
        if config.output:
            with open(config.output, "w", newline="") as fh:
                fh.write(result.csv_text)
    return result


def f_as_fractions(parts: tuple[int, ...]) -> list[Fraction]:
    nums, den = reduced_numerators(parts)
    return [Fraction(x, den) for x in nums]
