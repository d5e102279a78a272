"""Independent reference computations over the integers.

Nothing here touches the package; expected values in the tests are either
computed from these functions or checked against them.
"""


def multipartition_counts(t, n_max):
    """Exact p_t(0..n_max) as integers (coin-change DP, t passes)."""
    coeffs = [1] + [0] * n_max
    for _ in range(t):
        for part in range(1, n_max + 1):
            for n in range(part, n_max + 1):
                coeffs[n] += coeffs[n - part]
    return coeffs


def partition_counts(n_max):
    return multipartition_counts(1, n_max)


def euler_product(n_max):
    """Integer coefficients of prod_{i=1}^{n_max} (1 - q^i), truncated at n_max."""
    coeffs = [1] + [0] * n_max
    for i in range(1, n_max + 1):
        for n in range(n_max, i - 1, -1):
            coeffs[n] -= coeffs[n - i]
    return coeffs


def eta_power_counts(d, e, n_max):
    """Integer coefficients of prod_i (1 - q^(d i))^e for any integer e."""
    coeffs = [1] + [0] * n_max
    for i in range(1, n_max // d + 1):
        step = d * i
        for _ in range(abs(e)):
            if e > 0:
                for n in range(n_max, step - 1, -1):
                    coeffs[n] -= coeffs[n - step]
            else:
                for n in range(step, n_max + 1):
                    coeffs[n] += coeffs[n - step]
    return coeffs


def gf2_convolve(f, g):
    """Schoolbook GF(2) product of two 0/1 lists, truncated at the shorter length."""
    n = min(len(f), len(g))
    out = [0] * n
    for i in range(n):
        if f[i]:
            for j in range(n - i):
                out[i + j] ^= g[j]
    return out


def parities(values):
    return [v & 1 for v in values]
