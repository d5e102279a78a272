"""Partition parities as bit-packed GF(2) series."""

# %%
from multiparity import Gf2Series, dilate, invert, square
from multiparity.etaq import euler_series, multipartition_series

# The Euler product mod 2 lives on the generalized pentagonal numbers.
E = euler_series(40)
print("E(q) mod 2 exponents:", E.exponents())

# %%
# Its inverse is the partition generating function, so the odd p(n) fall out.
P = invert(E)
print("n with p(n) odd, n <= 40:", P.exponents())

# %%
# Squaring in characteristic 2 just spreads the bits out.
f = Gf2Series.from_exponents([0, 1, 5, 9], 30)
print(square(f) == dilate(f, 2), square(f).exponents())

# %%
# Multipartitions for t = 3, built from dilated copies of p(n) mod 2.
p3 = multipartition_series(3, 60)
print("t=3 odd indices:", p3.exponents())
print("same via inversion:", p3 == multipartition_series(3, 60, method="inversion"))
