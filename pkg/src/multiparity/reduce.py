"""Reduction certificates for odd-density transfer between multipartition functions.

Starting from ``A``, each non-base node is reduced with the identity for
``a = p`` (a prime dividing ``A``) and ``t = A / p``.  The children of a node
are ``A / p`` together with every exponent ``A/d - 24 j`` whose eps bit is
set (other than the leading ``(1, 0)`` term).  Every child is smaller than
``A`` and stays in the residue class of ``A`` mod 6, so the graph bottoms out
at the base nodes {1, 5} (A = +-1 mod 6) or {3, 9} (A = 3 mod 6).

The certificate records each identity once, keyed by ``(a, t)``, and is
enough for a third party to re-run every verification.
"""

from __future__ import annotations

import enum
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from sympy import primefactors

from .errors import BaseCase, IdentityUnverified
from .identities import (
    ChenStatus,
    EpsilonSolution,
    IdentityParams,
    SolveStatus,
    VerificationReport,
    chen_case,
    identity_from_record,
    identity_record,
    lhs_series,
    rhs_series,
    solve_and_verify,
    verify_identity,
)

BASE_NODES = {"I": (1, 5), "II": (3, 9)}
TERMINALS = (1, 3)


class CertificateStatus(str, enum.Enum):
    COMPLETE = "Complete"
    PARTIAL = "Partial"


@dataclass(frozen=True)
class ReductionNode:
    A: int
    part: str
    is_base: bool

    @classmethod
    def of(cls, A: int) -> "ReductionNode":
        if A < 1 or A % 2 == 0:
            raise ValueError(f"node value must be odd and positive, got {A}")
        part = "II" if A % 3 == 0 else "I"
        return cls(A, part, A in BASE_NODES[part])

    def to_dict(self) -> dict:
        return {"A": self.A, "part": self.part, "is_base": self.is_base}


@dataclass(frozen=True)
class ReductionStep:
    A: int
    p: int
    t: int
    params: IdentityParams
    solution: EpsilonSolution
    report: VerificationReport
    children: Tuple[int, ...]

    @property
    def verified(self) -> bool:
        return self.report.verified and self.solution.status is not SolveStatus.INCONSISTENT

    @property
    def chen(self) -> ChenStatus:
        return chen_case(self.p, self.t)

    def to_dict(self) -> dict:
        return {
            "A": self.A,
            "p": self.p,
            "t": self.t,
            "identity_ref": f"{self.p}:{self.t}",
            "children": list(self.children),
        }


def classify_A(A: int) -> Tuple[int, int, ReductionNode]:
    """Split ``A = 2**c * m`` with m odd and classify m."""
    if A < 1:
        raise ValueError("A must be positive")
    c = (A & -A).bit_length() - 1
    m = A >> c
    return m, c, ReductionNode.of(m)


def choose_prime(A: int, prime_choice: str = "largest") -> int:
    primes = primefactors(A)
    if prime_choice == "largest":
        return primes[-1]
    if prime_choice == "smallest":
        node = ReductionNode.of(A)
        if node.part == "II":
            # A = 3 mod 6 needs the largest prime so that A/p stays 3 mod 6.
            return primes[-1]
        return primes[0]
    raise ValueError(f"unknown prime choice {prime_choice!r}")


def step_children(A: int, p: int, sol: EpsilonSolution) -> Tuple[int, ...]:
    kids = {A // p}
    for d, j in sol.ones():
        if (d, j) != (1, 0):
            kids.add(A // d - 24 * j)
    return tuple(sorted(kids, reverse=True))


def _check_children(node: ReductionNode, children) -> None:
    for B in children:
        if not 0 < B < node.A:
            raise AssertionError(f"child {B} of {node.A} is not in (0, A)")
        if ReductionNode.of(B).part != node.part:
            raise AssertionError(f"child {B} of {node.A} left residue class {node.part}")


def reduction_step(
    A: int,
    verify_degree: Optional[int] = None,
    fit_degree: Optional[int] = None,
    prime_choice: str = "largest",
    allow_base: bool = False,
) -> ReductionStep:
    """Solve and verify the identity for (a, t) = (p, A / p) and list the children.

    Base nodes raise :class:`BaseCase`; with ``allow_base`` the bases 5 and 9
    are reduced too (to 1 and 3).  Raises :class:`IdentityUnverified`
    (carrying the step as ``.step``) when the identity does not verify.
    """
    node = ReductionNode.of(A)
    if node.is_base and (not allow_base or A in TERMINALS):
        raise BaseCase(f"A={A} is a base case")
    p = choose_prime(A, prime_choice)
    t = A // p
    params, sol, report = solve_and_verify(p, t, fit_degree, verify_degree)
    children = step_children(A, p, sol)
    _check_children(node, children)
    step = ReductionStep(A, p, t, params, sol, report, children)
    if not step.verified:
        err = IdentityUnverified(f"identity (a={p}, t={t}) for A={A}: {report}")
        err.step = step
        raise err
    return step


def _step_or_partial(args):
    try:
        return reduction_step(*args)
    except IdentityUnverified as err:
        return err.step


@dataclass
class ReductionCertificate:
    root: int
    odd_part: int
    two_power: int
    verify_degree: Optional[int]
    status: CertificateStatus
    nodes: Dict[int, ReductionNode] = field(default_factory=dict)
    steps: Dict[int, ReductionStep] = field(default_factory=dict)

    def identities(self) -> Dict[Tuple[int, int], ReductionStep]:
        out = {}
        for A in sorted(self.steps):
            s = self.steps[A]
            out.setdefault((s.p, s.t), s)
        return dict(sorted(out.items()))

    def edges(self) -> List[Tuple[int, int]]:
        return [(A, B) for A in sorted(self.steps) for B in self.steps[A].children]

    def leaves(self) -> List[int]:
        return sorted(A for A in self.nodes if A not in self.steps)

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "odd_part": self.odd_part,
            "two_power": self.two_power,
            "verify_degree": self.verify_degree,
            "status": self.status.value,
            "nodes": [self.nodes[A].to_dict() for A in sorted(self.nodes, reverse=True)],
            "steps": [self.steps[A].to_dict() for A in sorted(self.steps, reverse=True)],
            "identities": [
                identity_record(s.params, s.solution) for s in self.identities().values()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _needs_step(node: ReductionNode, mechanize_base: bool) -> bool:
    if mechanize_base:
        return node.A not in TERMINALS
    return not node.is_base


def _assemble(root, verify_degree, solve_many, mechanize_base) -> ReductionCertificate:
    m, c, node = classify_A(root)
    cert = ReductionCertificate(root, m, c, verify_degree, CertificateStatus.COMPLETE)
    cert.nodes[m] = node
    frontier = [m] if _needs_step(node, mechanize_base) else []
    while frontier:
        for step in solve_many(frontier):
            cert.steps[step.A] = step
            for B in step.children:
                cert.nodes.setdefault(B, ReductionNode.of(B))
        frontier = sorted(
            A
            for A, n in cert.nodes.items()
            if _needs_step(n, mechanize_base) and A not in cert.steps
        )
    complete = all(s.verified for s in cert.steps.values()) and all(
        cert.nodes[A].is_base for A in cert.leaves()
    )
    if not complete:
        cert.status = CertificateStatus.PARTIAL
    return cert


def build_certificate(
    A: int,
    verify_degree: Optional[int] = None,
    fit_degree: Optional[int] = None,
    prime_choice: str = "largest",
    workers: int = 1,
    mechanize_base: bool = False,
) -> ReductionCertificate:
    """Reduce ``A`` (its odd part) down to base nodes.

    Nodes reached from several parents are solved once.  Each wave of
    unsolved nodes may be farmed out to ``workers`` processes; assembly is
    keyed by node value so the result does not depend on completion order.
    Unverified identities make the certificate Partial instead of aborting.
    With ``mechanize_base`` the base nodes 5 and 9 also get a verified step
    (to 1 and 3) instead of resting on the known base-case results.
    """
    if workers > 1:
        pool = ProcessPoolExecutor(max_workers=workers)
    else:
        pool = None

    def solve_many(values):
        jobs = [(A_, verify_degree, fit_degree, prime_choice, mechanize_base) for A_ in values]
        if pool is None:
            return [_step_or_partial(j) for j in jobs]
        return list(pool.map(_step_or_partial, jobs))

    try:
        return _assemble(A, verify_degree, solve_many, mechanize_base)
    finally:
        if pool is not None:
            pool.shutdown()


def reverify_certificate(data: dict) -> ReductionCertificate:
    """Rebuild a certificate from its serialized form by re-running each check.

    The stored eps bits are not re-solved; each identity is re-verified at its
    recorded degree and every step's children are recomputed from the bits.
    Serializing the result reproduces the input exactly iff every stored
    claim still holds.
    """
    records = {}
    for rec in data["identities"]:
        params, sol = identity_from_record(rec)
        records[(params.a, params.t)] = (params, sol)

    m, c, node = classify_A(data["root"])
    cert = ReductionCertificate(data["root"], m, c, data["verify_degree"], CertificateStatus.COMPLETE)
    cert.nodes[m] = node
    for s in data["steps"]:
        params, sol = records[(s["p"], s["t"])]
        degree = sol.verify_degree if sol.verify_degree is not None else data["verify_degree"]
        if degree is None or degree <= sol.fit_degree:
            report = VerificationReport(False, degree or 0, None)
        else:
            report = verify_identity(params, sol, degree)
        if not report.verified:
            sol = replace(sol, verify_degree=None)
        children = step_children(s["A"], s["p"], sol)
        step = ReductionStep(s["A"], s["p"], s["t"], params, sol, report, children)
        cert.steps[step.A] = step
        for B in children:
            cert.nodes.setdefault(B, ReductionNode.of(B))
    complete = all(s.verified for s in cert.steps.values()) and all(
        cert.nodes[A].is_base for A in cert.leaves()
    )
    if not complete:
        cert.status = CertificateStatus.PARTIAL
    return cert


def step_density_shadow(step: ReductionStep, x: int) -> Tuple[int, int]:
    """Odd counts through degree x of the two sides of a step's identity.

    The sides are equal as series, so the counts agree exactly.
    """
    lhs = lhs_series(step.params, x)
    rhs = rhs_series(step.params, step.solution.entries, x)
    return lhs.popcount(), rhs.popcount()
