import csv
import io
import math
from fractions import Fraction

import pytest

from multiparity.density import (
    default_checkpoints,
    halving_check,
    lower_bound_ratio,
    odd_density,
    odd_density_paths,
    progression_odd_density,
    write_density_csv,
)
from multiparity.etaq import multipartition_series
from multiparity.gf2series import Gf2Series

from oracles import multipartition_counts, parities, partition_counts


def test_default_checkpoints():
    assert default_checkpoints(19) == [19]
    assert default_checkpoints(100) == [100]
    assert default_checkpoints(12345) == [100, 1000, 10000, 12345]


def test_odd_density_small_examples():
    est = odd_density(1, 19)
    assert est.odd_count == 13 == sum(parities(partition_counts(19)))
    assert est.ratio == Fraction(13, 20)
    assert est.ratio_decimal == "0.6500000000"
    assert odd_density(2, 1).odd_count == 1


def test_checkpoint_counts_match_oracle():
    counts = parities(multipartition_counts(3, 300))
    est = odd_density(3, 300, checkpoints=[16, 50, 300])
    assert est.checkpoints == tuple((x, sum(counts[: x + 1])) for x in (16, 50, 300))


def test_checkpoints_monotone():
    est = odd_density(5, 20_000)
    xs = [x for x, _ in est.checkpoints]
    cs = [c for _, c in est.checkpoints]
    assert xs == sorted(xs) and cs == sorted(cs)
    assert est.odd_count <= est.x + 1


@pytest.mark.parametrize("t", [1, 3, 7])
def test_paths_agree(t):
    ests = odd_density_paths(t, 50_000)
    assert len(ests) == 2
    assert ests[0].checkpoints == ests[1].checkpoints


def test_recurrence_and_inversion_agree_to_200k():
    pts = [100, 1000, 10_000, 100_000, 200_000]
    a = odd_density(1, 200_000, pts, path="recurrence")
    b = odd_density(1, 200_000, pts, path="inversion")
    assert a.checkpoints == b.checkpoints


def test_progression_examples():
    est = progression_odd_density(1, 5, 4, 19)
    assert (est.odd_count, est.terms) == (2, 4)
    full = odd_density(1, 500)
    same = progression_odd_density(1, 1, 0, 500)
    assert same.odd_count == full.odd_count and same.terms == full.terms


@pytest.mark.parametrize("t,m", [(1, 5), (3, 7), (5, 3), (2, 4)])
def test_progression_decomposition(t, m):
    x = 5000
    total = odd_density(t, x).odd_count
    assert sum(progression_odd_density(t, m, r, x).odd_count for r in range(m)) == total


@pytest.mark.parametrize("m", [1, 3, 5, 7, 9])
@pytest.mark.parametrize("c", [1, 2, 3])
def test_halving_law(m, c):
    report = halving_check(m, c, 10_000)
    assert report.passed
    assert report.counterexample is None


def test_halving_fault_injection():
    x = 2000
    good = multipartition_series(2, x, method="inversion")
    bad = Gf2Series(good.bits ^ (1 << 777), x)
    report = halving_check(1, 1, x, series=bad)
    assert not report.passed
    assert report.counterexample == 777


def test_lower_bound_ratio():
    out = lower_bound_ratio(10_000, [16, 1000, 10_000])
    assert all(r > 0 and math.isfinite(r) for _, r in out)
    assert out[-1][1] > 1
    counts = sum(parities(partition_counts(16)))
    assert out[0][1] == pytest.approx(counts * math.log(math.log(16)) / 4)


def test_lower_bound_requires_16():
    with pytest.raises(ValueError):
        lower_bound_ratio(100, [15, 100])


@pytest.mark.slow
def test_lower_bound_ratio_increases_to_million():
    out = lower_bound_ratio(10**6, [10**4, 10**5, 10**6])
    ratios = [r for _, r in out]
    assert ratios == sorted(ratios)


def test_csv_format():
    buf = io.StringIO()
    write_density_csv(odd_density_paths(1, 1000), buf)
    rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
    assert list(rows[0]) == ["t", "x", "odd_count", "ratio_decimal", "path"]
    assert [r["path"] for r in rows] == ["recurrence", "recurrence", "inversion", "inversion"]
    assert rows[1]["odd_count"] == "529"
    assert all(len(r["ratio_decimal"].split(".")[1]) == 10 for r in rows)
