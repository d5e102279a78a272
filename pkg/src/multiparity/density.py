"""Finite-x odd-density estimates for multipartition parity series.

Every count here is exact (a popcount over a parity series prefix); ratios are
reported as fractions and as fixed-point decimals.  Nothing is extrapolated
to a limit.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .etaq import multipartition_series
from .gf2series import Gf2Series, dilate, extract_progression

#: Largest scan bound at which the inversion path is run as a cross-check.
INVERSION_CROSSCHECK_LIMIT = 100_000

CSV_COLUMNS = ("t", "x", "odd_count", "ratio_decimal", "path")


def default_checkpoints(x: int) -> List[int]:
    """Powers of ten from 100 below ``x``, then ``x`` itself."""
    pts = []
    p = 100
    while p < x:
        pts.append(p)
        p *= 10
    pts.append(x)
    return pts


def _decimal(r: Fraction, places: int = 10) -> str:
    with localcontext() as ctx:
        ctx.prec = 50
        q = Decimal(r.numerator) / Decimal(r.denominator)
        return str(q.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


@dataclass(frozen=True)
class DensityEstimate:
    """Odd count of a parity sequence through index bound ``x``.

    For a plain series ``terms = x + 1``; for a progression ``m n + r`` it is
    the number of ``n`` with ``m n + r <= x``.
    """

    t: int
    x: int
    odd_count: int
    terms: int
    checkpoints: Tuple[Tuple[int, int], ...]
    path: str = "product"
    modulus: int = 1
    residue: int = 0

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.odd_count, self.terms)

    @property
    def ratio_decimal(self) -> str:
        return _decimal(self.ratio)

    def csv_rows(self) -> List[dict]:
        rows = []
        for xi, ci in self.checkpoints:
            n = _terms(xi, self.modulus, self.residue)
            rows.append(
                {
                    "t": self.t,
                    "x": xi,
                    "odd_count": ci,
                    "ratio_decimal": _decimal(Fraction(ci, n)),
                    "path": self.path,
                }
            )
        return rows


def _terms(x: int, m: int, r: int) -> int:
    return 0 if x < r else (x - r) // m + 1


def _default_path(t: int) -> str:
    return "recurrence" if t == 1 else "product"


def parity_series(t: int, x: int, path: Optional[str] = None) -> Gf2Series:
    """p_t(n) mod 2 for n <= x along the named computation path."""
    path = path or _default_path(t)
    if path in ("recurrence", "product"):
        if path == "recurrence" and t != 1:
            raise ValueError("the recurrence path only exists for t = 1")
        return multipartition_series(t, x, method="product")
    if path == "inversion":
        return multipartition_series(t, x, method="inversion")
    raise ValueError(f"unknown path {path!r}")


def odd_density(
    t: int,
    x: int,
    checkpoints: Optional[Sequence[int]] = None,
    path: Optional[str] = None,
    series: Optional[Gf2Series] = None,
) -> DensityEstimate:
    if t < 1 or x < 0:
        raise ValueError("need t >= 1 and x >= 0")
    pts = sorted(set(checkpoints)) if checkpoints else default_checkpoints(x)
    if pts[-1] > x or pts[0] < 0:
        raise ValueError("checkpoints must lie in 0..x")
    path = path or _default_path(t)
    if series is None:
        series = parity_series(t, x, path)
    counts = tuple((xi, series.popcount(xi)) for xi in pts)
    return DensityEstimate(t, x, series.popcount(x), x + 1, counts, path)


def odd_density_paths(
    t: int, x: int, checkpoints: Optional[Sequence[int]] = None
) -> List[DensityEstimate]:
    """Estimates from every applicable path (inversion only up to the cross-check limit)."""
    paths = [_default_path(t)]
    if x <= INVERSION_CROSSCHECK_LIMIT:
        paths.append("inversion")
    return [odd_density(t, x, checkpoints, path=p) for p in paths]


def progression_odd_density(
    t: int,
    m: int,
    r: int,
    x: int,
    checkpoints: Optional[Sequence[int]] = None,
    path: Optional[str] = None,
) -> DensityEstimate:
    """Odd count of p_t(m n + r) over all n with m n + r <= x."""
    if not 0 <= r < m:
        raise ValueError("need 0 <= r < m")
    if x < r:
        raise ValueError("x must be at least r")
    pts = sorted(set(checkpoints)) if checkpoints else default_checkpoints(x)
    pts = [xi for xi in pts if xi >= r]
    path = path or _default_path(t)
    prog = extract_progression(parity_series(t, x, path), m, r)
    counts = tuple((xi, prog.popcount((xi - r) // m)) for xi in pts)
    return DensityEstimate(t, x, prog.popcount(), _terms(x, m, r), counts, path, m, r)


@dataclass(frozen=True)
class HalvingReport:
    m: int
    c: int
    x: int
    passed: bool
    counterexample: Optional[int] = None


def halving_check(m: int, c: int, x: int, series: Optional[Gf2Series] = None) -> HalvingReport:
    """Check p_{2^c m}(n) odd  <=>  2^c | n and p_m(n / 2^c) odd, for n <= x.

    The left side comes from Newton inversion of the Euler power (or from
    ``series`` if given); the right side from the recurrence/product path.
    """
    if m < 1 or m % 2 == 0:
        raise ValueError("m must be odd and positive")
    if c < 1:
        raise ValueError("c must be positive")
    big = series if series is not None else multipartition_series((1 << c) * m, x, method="inversion")
    small = multipartition_series(m, x >> c, method="product")
    expected = dilate(Gf2Series(small.bits, x), 1 << c)
    diff = big.truncate(x).bits ^ expected.bits
    if diff:
        return HalvingReport(m, c, x, False, (diff & -diff).bit_length() - 1)
    return HalvingReport(m, c, x, True)


def lower_bound_ratio(
    x: int, checkpoints: Optional[Sequence[int]] = None, series: Optional[Gf2Series] = None
) -> List[Tuple[int, float]]:
    """odd_count(x_i) * log log x_i / sqrt(x_i) for p(n), natural logarithms."""
    pts = sorted(set(checkpoints)) if checkpoints else default_checkpoints(x)
    if pts[0] < 16:
        raise ValueError("checkpoints must be >= 16")
    if pts[-1] > x:
        raise ValueError("checkpoints must not exceed x")
    if series is None:
        series = parity_series(1, x, "recurrence")
    return [(xi, series.popcount(xi) * math.log(math.log(xi)) / math.sqrt(xi)) for xi in pts]


def write_density_csv(estimates: Iterable[DensityEstimate], fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for est in estimates:
        writer.writerows(est.csv_rows())
