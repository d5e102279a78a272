"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line. Run with ``pytest -s`` to
see them, or directly with ``python tests/test_acceptance.py``.
"""

import json
import random
import time
from pathlib import Path

from multiparity.cli import main as cli_main
from multiparity.density import halving_check, lower_bound_ratio, odd_density
from multiparity.etaq import multipartition_series, partition_parity_recurrence
from multiparity.gf2series import Gf2Series, dilate, square
from multiparity.identities import (
    ChenStatus,
    IdentityParams,
    SolveStatus,
    compute_b,
    compute_k,
    identity_from_record,
    identity_record,
    solve_epsilons,
    verify_identity,
)
from multiparity.reduce import CertificateStatus, build_certificate, reverify_certificate

FIXTURES = Path(__file__).parent / "fixtures" / "identities.json"


def report(n, name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} [{n}] {name}"
    if detail:
        line += f": {detail}"
    print(line)
    assert ok, line


def test_1_recurrence_matches_inversion():
    start = time.perf_counter()
    a = partition_parity_recurrence(200_000)
    b = multipartition_series(1, 200_000, method="inversion")
    elapsed = time.perf_counter() - start
    ok = a == b and elapsed < 30
    report(1, "recurrence == inversion, n <= 200000", ok, f"{elapsed:.2f}s")


def test_2_frobenius_law():
    rng = random.Random(20240601)
    failures = 0
    for _ in range(1000):
        f = Gf2Series(rng.getrandbits(4097), 4096)
        if square(f) != dilate(f, 2):
            failures += 1
    report(2, "square == dilate(., 2) on 1000 series of degree 4096", failures == 0, f"{failures} failures")


CHEN_CASES = [(5, 1), (7, 1), (11, 1), (25, 1), (5, 3), (7, 5), (3, 3), (3, 9)]


def test_3_chen_cases_verify():
    start = time.perf_counter()
    bad = []
    for a, t in CHEN_CASES:
        params = IdentityParams.of(a, t)
        sol = solve_epsilons(a, t)
        rep = verify_identity(params, sol, 10_000)
        if sol.status is SolveStatus.INCONSISTENT or not rep.verified:
            bad.append((a, t, str(rep)))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    report(3, "proved cases solve and verify to 10000", ok, f"{elapsed:.2f}s, failures={bad}")


def test_4_b_and_k_fixtures():
    table = {(1, 1): (0, 0), (1, 7): (0, 0), (5, 1): (4, 1), (7, 1): (5, 1),
             (25, 1): (24, 2), (3, 3): (2, 1), (5, 3): (2, 1)}
    wrong = {at: (compute_b(*at), compute_k(*at)) for at, bk in table.items()
             if (compute_b(*at), compute_k(*at)) != bk}
    report(4, "b/k fixtures", not wrong, f"mismatches={wrong}")


def test_5_halving_law():
    bad = []
    for m in (1, 3, 5, 7, 9):
        for c in (1, 2, 3):
            rep = halving_check(m, c, 10_000)
            if not rep.passed:
                bad.append((m, c, rep.counterexample))
    report(5, "halving law for m in {1,3,5,7,9}, c in {1,2,3} at x=10000", not bad, f"counterexamples={bad}")


def test_6_lower_bound_shadow():
    ratios = lower_bound_ratio(100_000, [10_000, 100_000])
    ok = all(r >= 1 for _, r in ratios)
    detail = ", ".join(f"x={x}: {r:.2f}" for x, r in ratios)
    report(6, "odd_count * loglog x / sqrt x >= 1", ok, detail)


def test_7_density_band():
    x = 100_000
    rec = odd_density(1, x, [x], path="recurrence")
    inv = odd_density(1, x, [x], path="inversion")
    agree = rec.odd_count == inv.odd_count
    ok = agree and 0.45 <= rec.ratio <= 0.55
    report(7, "empirical density of p(n) odd at 1e5 in [0.45, 0.55]", ok,
           f"{rec.odd_count}/{rec.terms} = {rec.ratio_decimal}, paths agree={agree}")


def test_8_certificates(tmp_path):
    notes = []
    ok = True
    for A in (35, 15):
        start = time.perf_counter()
        cert = build_certificate(A, 10_000)
        elapsed = time.perf_counter() - start
        path = tmp_path / f"cert{A}.json"
        path.write_text(cert.to_json())
        text = path.read_text()
        again = reverify_certificate(json.loads(text)).to_json()
        proved = all(s.chen is not ChenStatus.CONJECTURAL and s.verified for s in cert.steps.values())
        good = (cert.status is CertificateStatus.COMPLETE and proved
                and again == text and elapsed < 120)
        ok &= good
        notes.append(f"A={A} {cert.status.value} steps={len(cert.steps)} {elapsed:.2f}s")
    report(8, "certificates for 35 and 15", ok, "; ".join(notes))


def test_9_fault_injection(tmp_path, capsys):
    records = json.loads(FIXTURES.read_text())
    bad = []
    flips = 0
    for rec in records:
        params, sol = identity_from_record(rec)
        for d, j in sol.entries:
            flips += 1
            rep = verify_identity(params, sol.flipped(d, j), 2000)
            path = tmp_path / "flipped.json"
            path.write_text(json.dumps(identity_record(params, sol.flipped(d, j))))
            code = cli_main(["identity", "--check", str(path)])
            capsys.readouterr()
            if rep.verified or rep.first_mismatch > 100 or code != 2:
                bad.append((rec["a"], rec["t"], d, j, rep.first_mismatch, code))
    with capsys.disabled():
        report(9, "single flipped epsilon is caught", not bad, f"{flips} flips, failures={bad}")


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q", "-s"]))
