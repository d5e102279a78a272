"""Mod-2 identities relating p_t along a progression to eta quotients.

For odd ``a`` and ``t`` the identity reads

    q^k * sum_n p_t(a*n + b) q^n
        = sum_{d | a} sum_{j=0}^{k // d} eps[d, j] * q^(d*j) / prod_i (1 - q^(d*i))^(a*t/d - 24*j)

mod 2, with ``eps[1, 0] = 1`` and ``eps[d, j] = 0`` whenever the exponent
``a*t/d - 24*j`` is negative.  This module computes ``b`` and ``k``, builds
both sides as :class:`~multiparity.gf2series.Gf2Series`, finds the ``eps``
bits by Gaussian elimination on a low-degree window and checks the identity
on a much larger one.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy import divisors, factorint

from . import gf2linalg
from .errors import InsufficientDegree, InvalidParams
from .etaq import EtaPowerSpec, eta_power, multipartition_series
from .gf2series import Gf2Series, extract_progression

DEFAULT_VERIFY_DEGREE = int(os.environ.get("MULTIPARITY_VERIFY_DEGREE", 10_000))
FIT_MARGIN = 64
MIN_FIT_MARGIN = 16


class ChenStatus(str, enum.Enum):
    PROVED_PRIME_POWER = "ProvedPrimePower"
    PROVED_A_THREE = "ProvedAThree"
    CONJECTURAL = "Conjectural"


class SolveStatus(str, enum.Enum):
    UNIQUE = "Unique"
    AMBIGUOUS = "Ambiguous"
    INCONSISTENT = "Inconsistent"


def validate_params(a: int, t: int) -> None:
    """Raise :class:`InvalidParams` unless (a, t) satisfy the hypotheses."""
    for name, v in (("a", a), ("t", t)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidParams(f"{name} must be an integer, got {v!r}")
        if v < 1 or v % 2 == 0:
            raise InvalidParams(f"{name} must be an odd positive integer, got {v}")
    if a % 6 == 3 and t % 6 != 3:
        raise InvalidParams(f"a={a} is 3 mod 6, so t must be 3 mod 6 (got t={t})")


def compute_b(a: int, t: int) -> int:
    validate_params(a, t)
    if a == 1:
        return 0
    if t % 6 == 3:
        return (t // 3) * pow(8, -1, a) % a
    return t * pow(24, -1, a) % a


def compute_k(a: int, t: int) -> int:
    """Exact ceil(t (a^2 - 1) / (24 a))."""
    validate_params(a, t)
    return -(-t * (a * a - 1) // (24 * a))


@dataclass(frozen=True)
class IdentityParams:
    a: int
    t: int
    b: int
    k: int

    def __post_init__(self):
        validate_params(self.a, self.t)
        if self.b != compute_b(self.a, self.t) or self.k != compute_k(self.a, self.t):
            raise InvalidParams(f"b/k inconsistent with a={self.a}, t={self.t}")

    @classmethod
    def of(cls, a: int, t: int) -> "IdentityParams":
        return cls(a, t, compute_b(a, t), compute_k(a, t))

    def exponent(self, d: int, j: int) -> int:
        return self.a * self.t // d - 24 * j

    def index_set(self) -> List[Tuple[int, int]]:
        """All (d, j) with d | a and 0 <= j <= k // d, ascending."""
        return [(d, j) for d in divisors(self.a) for j in range(self.k // d + 1)]


@dataclass(frozen=True)
class BasisTerm:
    d: int
    j: int
    exponent: int
    series: Gf2Series


@dataclass(frozen=True)
class EpsilonSolution:
    """Bits eps[d, j] for every (d, j) of the index set."""

    a: int
    t: int
    entries: Dict[Tuple[int, int], int]
    fit_degree: int
    kernel_dim: Optional[int]
    status: SolveStatus
    verify_degree: Optional[int] = None

    def ones(self) -> List[Tuple[int, int]]:
        return [dj for dj, v in sorted(self.entries.items()) if v]

    def flipped(self, d: int, j: int) -> "EpsilonSolution":
        """Copy with eps[d, j] toggled (fault injection)."""
        entries = dict(self.entries)
        entries[(d, j)] ^= 1
        return replace(self, entries=entries, verify_degree=None)


@dataclass(frozen=True)
class VerificationReport:
    verified: bool
    verify_degree: int
    first_mismatch: Optional[int] = None

    def __str__(self):
        if self.verified:
            return f"verified to {self.verify_degree}"
        return f"mismatch at degree {self.first_mismatch}"


def chen_case(a: int, t: int) -> ChenStatus:
    """Whether (a, t) falls under the known proved cases."""
    validate_params(a, t)
    if a > 1:
        fac = factorint(a)
        if len(fac) == 1 and next(iter(fac)) >= 5:
            return ChenStatus.PROVED_PRIME_POWER
    if a == 3 and t % 6 == 3 and t >= 3:
        return ChenStatus.PROVED_A_THREE
    return ChenStatus.CONJECTURAL


@lru_cache(maxsize=16)
def _parity_series(t: int, N: int, method: str) -> Gf2Series:
    return multipartition_series(t, N, method=method)


def lhs_series(params: IdentityParams, N: int, method: str = "product") -> Gf2Series:
    """q^k * sum_n p_t(a n + b) q^n mod 2, truncated at N."""
    a, b, k = params.a, params.b, params.k
    if N < k:
        return Gf2Series.zero(N)
    top = a * (N - k) + b
    prog = extract_progression(_parity_series(params.t, top, method), a, b)
    return Gf2Series(prog.bits << k, N)


def rhs_basis(params: IdentityParams, N: int) -> List[BasisTerm]:
    """One term per admissible (d, j); negative exponents are omitted."""
    out = []
    for d, j in params.index_set():
        e = params.exponent(d, j)
        if e < 0:
            continue
        s = eta_power(EtaPowerSpec(d, -e), N)
        out.append(BasisTerm(d, j, e, Gf2Series(s.bits << (d * j), N)))
    return out


def rhs_series(params: IdentityParams, entries: Dict[Tuple[int, int], int], N: int) -> Gf2Series:
    # every set entry is evaluated literally; with a negative exponent the
    # term is a polynomial factor, so a stray bit there still shows up at d*j
    acc = 0
    for (d, j), v in entries.items():
        if not v or d * j > N:
            continue
        s = eta_power(EtaPowerSpec(d, -params.exponent(d, j)), N)
        acc ^= (s.bits << (d * j)) & ((1 << (N + 1)) - 1)
    return Gf2Series(acc, N)


def default_fit_degree(params: IdentityParams) -> int:
    return n_unknowns(params) + FIT_MARGIN


def n_unknowns(params: IdentityParams) -> int:
    return sum(1 for d, j in params.index_set() if (d, j) != (1, 0) and params.exponent(d, j) >= 0)


def _solve_window(params, fit_degree):
    basis = rhs_basis(params, fit_degree)
    forced = next(term for term in basis if (term.d, term.j) == (1, 0))
    free = [term for term in basis if (term.d, term.j) != (1, 0)]
    target = lhs_series(params, fit_degree).bits ^ forced.series.bits
    x, kernel = gf2linalg.solve([term.series.bits for term in free], target)
    return free, x, kernel


def solve_epsilons(a: int, t: int, fit_degree: Optional[int] = None) -> EpsilonSolution:
    """Find eps bits making both sides agree through ``fit_degree``.

    If the window leaves a nontrivial kernel the system is re-fit once on a
    window four times larger; any kernel that survives is reported as
    Ambiguous with the lexicographically smallest representative.
    """
    params = IdentityParams.of(a, t)
    unknowns = n_unknowns(params)
    if fit_degree is None:
        fit_degree = default_fit_degree(params)
    if fit_degree < unknowns + MIN_FIT_MARGIN:
        raise InsufficientDegree(
            f"fit_degree {fit_degree} < {unknowns} unknowns + margin {MIN_FIT_MARGIN}"
        )
    free, x, kernel = _solve_window(params, fit_degree)
    if x is not None and kernel:
        fit_degree *= 4
        free, x, kernel = _solve_window(params, fit_degree)

    entries = {dj: 0 for dj in params.index_set()}
    entries[(1, 0)] = 1
    if x is None:
        return EpsilonSolution(a, t, entries, fit_degree, len(kernel), SolveStatus.INCONSISTENT)
    x = gf2linalg.lex_min(x, kernel)
    for i, term in enumerate(free):
        entries[(term.d, term.j)] = (x >> i) & 1
    status = SolveStatus.AMBIGUOUS if kernel else SolveStatus.UNIQUE
    return EpsilonSolution(a, t, entries, fit_degree, len(kernel), status)


def default_verify_degree(fit_degree: int) -> int:
    return max(50 * fit_degree, DEFAULT_VERIFY_DEGREE)


def verify_identity(
    params: IdentityParams, sol: EpsilonSolution, verify_degree: Optional[int] = None
) -> VerificationReport:
    """Compare both sides through ``verify_degree``; report the first mismatch."""
    if verify_degree is None:
        verify_degree = default_verify_degree(sol.fit_degree)
    if verify_degree <= sol.fit_degree:
        raise ValueError(
            f"verify_degree {verify_degree} must exceed fit_degree {sol.fit_degree}"
        )
    if (sol.a, sol.t) != (params.a, params.t):
        raise InvalidParams("solution does not belong to these parameters")
    diff = lhs_series(params, verify_degree).bits ^ rhs_series(params, sol.entries, verify_degree).bits
    if diff:
        return VerificationReport(False, verify_degree, (diff & -diff).bit_length() - 1)
    return VerificationReport(True, verify_degree)


def solve_and_verify(
    a: int, t: int, fit_degree: Optional[int] = None, verify_degree: Optional[int] = None
) -> Tuple[IdentityParams, EpsilonSolution, VerificationReport]:
    params = IdentityParams.of(a, t)
    sol = solve_epsilons(a, t, fit_degree)
    if verify_degree is None:
        verify_degree = default_verify_degree(sol.fit_degree)
    report = verify_identity(params, sol, verify_degree)
    if report.verified and sol.status is not SolveStatus.INCONSISTENT:
        sol = replace(sol, verify_degree=report.verify_degree)
    return params, sol, report


def identity_record(params: IdentityParams, sol: EpsilonSolution) -> dict:
    """JSON-ready record with fixed field order.

    ``verify_degree`` is null unless the solution was verified.
    """
    return {
        "a": params.a,
        "t": params.t,
        "b": params.b,
        "k": params.k,
        "status": sol.status.value,
        "chen_case": chen_case(params.a, params.t).value,
        "fit_degree": sol.fit_degree,
        "verify_degree": sol.verify_degree,
        "epsilons": [{"d": d, "j": j, "value": v} for (d, j), v in sorted(sol.entries.items())],
    }


def identity_from_record(rec: dict) -> Tuple[IdentityParams, EpsilonSolution]:
    params = IdentityParams(rec["a"], rec["t"], rec["b"], rec["k"])
    entries = {(e["d"], e["j"]): int(e["value"]) for e in rec["epsilons"]}
    if set(entries) != set(params.index_set()):
        raise InvalidParams("epsilon index set does not match (a, t)")
    sol = EpsilonSolution(
        params.a,
        params.t,
        entries,
        rec["fit_degree"],
        0 if rec["status"] == SolveStatus.UNIQUE.value else None,
        SolveStatus(rec["status"]),
        rec["verify_degree"],
    )
    return params, sol
