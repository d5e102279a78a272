"""Reduction certificates from A down to the base cases."""

# %%
from multiparity import build_certificate
from multiparity.reduce import reverify_certificate

cert = build_certificate(35, verify_degree=10_000)
print(cert.status.value)
for A, step in cert.steps.items():
    print(f"A={A}: p={step.p} t={step.t} -> {step.children} ({step.chen.value}, {step.report})")
print("leaves:", cert.leaves())

# %%
import json

text = cert.to_json()
again = reverify_certificate(json.loads(text)).to_json()
print("re-verifies byte for byte:", again == text)

# %%
# Part II works the same way, bottoming out at 3 or 9.
c15 = build_certificate(15)
print(c15.edges(), c15.leaves())

# %%
# Powers of two only change the bookkeeping.
print(build_certificate(20).to_dict()["two_power"])
