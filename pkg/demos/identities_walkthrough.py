"""Fit and check an eta-quotient identity mod 2."""

# %%
from multiparity import IdentityParams, identity_record, solve_and_verify
from multiparity.identities import rhs_basis

params = IdentityParams.of(25, 1)
print(params)
for term in rhs_basis(params, 10):
    print(f"  d={term.d} j={term.j} exponent={term.exponent}")

# %%
# Solve on a short window, then check far beyond it.
params, sol, report = solve_and_verify(25, 1, verify_degree=20_000)
print(sol.status.value, "kernel dim", sol.kernel_dim, "->", report)
print("epsilons set:", sol.ones())

# %%
# One wrong bit and the check fails almost immediately.
from multiparity import verify_identity

bad = verify_identity(params, sol.flipped(5, 0), 2000)
print(bad)

# %%
import json

print(json.dumps(identity_record(params, sol), indent=2))
