"""Parity of multipartition functions via power series over GF(2)."""

from .errors import (
    BaseCase,
    ConstantTermZero,
    DegreeOutOfRange,
    IdentityUnverified,
    InsufficientDegree,
    InvalidParams,
    ParityError,
)
from .gf2series import (
    Gf2Series,
    coeff,
    dilate,
    extract_progression,
    invert,
    mul,
    shift,
    square,
    xor_add,
)
from .etaq import (
    EtaPowerSpec,
    eta_power,
    euler_series,
    multipartition_series,
    partition_parity_recurrence,
)
from .identities import (
    ChenStatus,
    EpsilonSolution,
    IdentityParams,
    SolveStatus,
    chen_case,
    compute_b,
    compute_k,
    identity_record,
    lhs_series,
    rhs_basis,
    solve_and_verify,
    solve_epsilons,
    verify_identity,
)
from .density import (
    DensityEstimate,
    halving_check,
    lower_bound_ratio,
    odd_density,
    odd_density_paths,
    progression_odd_density,
    write_density_csv,
)
from .reduce import (
    ReductionCertificate,
    build_certificate,
    classify_A,
    reduction_step,
    reverify_certificate,
)

__version__ = "0.1.0"
