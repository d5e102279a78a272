"""Truncated formal power series over GF(2).

A series is stored as a single Python integer used as a bit vector: bit ``n``
is the coefficient of ``q**n``.  CPython keeps integers as little-endian
arrays of machine digits, so this is a dense word-packed layout with degrees
ascending, and XOR/shift/popcount on it run in C.  Every series carries an
explicit truncation degree ``N``; bits above ``N`` are always zero.

Bulk bit shuffles (interleaving, dilation, progression extraction) go through
numpy; large products use Kronecker substitution on top of GMP.
"""

from __future__ import annotations

import os
from typing import Iterable, Optional

import numpy as np

from .errors import ConstantTermZero, DegreeOutOfRange

try:
    import gmpy2
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    gmpy2 = None

#: Operand size (in coefficients) above which ``mul`` switches to the
#: Kronecker fast path.  Override with ``MULTIPARITY_MUL_THRESHOLD``.
MUL_THRESHOLD = int(os.environ.get("MULTIPARITY_MUL_THRESHOLD", 1 << 14))

# Sparse operands stay on the shift-XOR path regardless of size.
_SPARSE_TERMS = 48


def _mask(n_bits: int) -> int:
    return (1 << n_bits) - 1


def _nbytes(n_bits: int) -> int:
    return (n_bits + 7) // 8


def _unpack(bits: int, n_bits: int) -> np.ndarray:
    """Bit vector -> uint8 array of 0/1, length ``n_bits``."""
    raw = (bits & _mask(n_bits)).to_bytes(_nbytes(n_bits), "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n_bits]


def _pack(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def _build_spread_table() -> np.ndarray:
    table = np.zeros(256, dtype="<u2")
    for v in range(256):
        s = 0
        for i in range(8):
            if v >> i & 1:
                s |= 1 << (2 * i)
        table[v] = s
    return table


_SPREAD = _build_spread_table()


class Gf2Series:
    """Immutable truncated power series over GF(2).

    Parameters
    ----------
    bits : int
        Coefficient bit vector; bit ``n`` is the coefficient of ``q**n``.
        Bits above ``trunc_degree`` are discarded.
    trunc_degree : int
        Largest degree carried by the series (``N``).
    """

    __slots__ = ("_bits", "_n")

    def __init__(self, bits: int, trunc_degree: int):
        if trunc_degree < 0:
            raise ValueError("trunc_degree must be non-negative")
        if bits < 0:
            raise ValueError("bits must be a non-negative integer")
        self._n = int(trunc_degree)
        self._bits = int(bits) & _mask(self._n + 1)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, trunc_degree: int) -> "Gf2Series":
        return cls(0, trunc_degree)

    @classmethod
    def one(cls, trunc_degree: int) -> "Gf2Series":
        return cls(1, trunc_degree)

    @classmethod
    def from_exponents(cls, exponents: Iterable[int], trunc_degree: int) -> "Gf2Series":
        """Build from the degrees whose coefficient is 1.

        Exponents above ``trunc_degree`` are dropped; a repeated exponent
        cancels (addition is XOR).
        """
        exps = np.fromiter((e for e in exponents if e <= trunc_degree), dtype=np.int64)
        if exps.size and exps.min() < 0:
            raise ValueError("exponents must be non-negative")
        arr = np.zeros(trunc_degree + 1, dtype=np.uint8)
        np.bitwise_xor.at(arr, exps, 1)
        return cls(_pack(arr), trunc_degree)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], trunc_degree: Optional[int] = None) -> "Gf2Series":
        arr = np.asarray(list(coeffs), dtype=np.int64) & 1
        if trunc_degree is None:
            trunc_degree = max(arr.size - 1, 0)
        return cls(_pack(arr.astype(np.uint8)), trunc_degree)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "Gf2Series":
        """Build from a 0/1 array whose length fixes ``trunc_degree + 1``."""
        arr = np.asarray(arr)
        return cls(_pack((arr & 1).astype(np.uint8)), arr.size - 1)

    # -- accessors --------------------------------------------------------

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def trunc_degree(self) -> int:
        return self._n

    def coeff(self, n: int) -> int:
        return coeff(self, n)

    def to_array(self) -> np.ndarray:
        """Coefficients ``0..N`` as a uint8 array of 0/1."""
        return _unpack(self._bits, self._n + 1)

    def coeffs(self) -> list:
        return self.to_array().tolist()

    def exponents(self) -> list:
        return np.flatnonzero(self.to_array()).tolist()

    def popcount(self, upto: Optional[int] = None) -> int:
        """Number of odd coefficients at degrees ``0..upto`` (default ``N``)."""
        if upto is None or upto >= self._n:
            return self._bits.bit_count()
        if upto < 0:
            return 0
        return (self._bits & _mask(upto + 1)).bit_count()

    def truncate(self, trunc_degree: int) -> "Gf2Series":
        """Lower the truncation degree.  Raising it is refused."""
        if trunc_degree > self._n:
            raise DegreeOutOfRange(
                f"cannot extend series truncated at {self._n} to {trunc_degree}"
            )
        return Gf2Series(self._bits, trunc_degree)

    def is_zero(self) -> bool:
        return self._bits == 0

    def valuation(self) -> Optional[int]:
        """Lowest degree with a nonzero coefficient, or None for zero."""
        if not self._bits:
            return None
        return (self._bits & -self._bits).bit_length() - 1

    # -- serialization ----------------------------------------------------

    def to_sparse(self) -> dict:
        return {"trunc_degree": self._n, "exponents": self.exponents()}

    @classmethod
    def from_sparse(cls, data: dict) -> "Gf2Series":
        return cls.from_exponents(data["exponents"], data["trunc_degree"])

    def to_hex(self) -> str:
        """Lowercase hex of the packed 64-bit words, little-endian by degree."""
        n_words = self._n // 64 + 1
        return self._bits.to_bytes(8 * n_words, "little").hex()

    @classmethod
    def from_hex(cls, text: str, trunc_degree: int) -> "Gf2Series":
        raw = bytes.fromhex(text.strip())
        if len(raw) != 8 * (trunc_degree // 64 + 1):
            raise ValueError("hex dump length does not match trunc_degree")
        bits = int.from_bytes(raw, "little")
        if bits >> (trunc_degree + 1):
            raise ValueError("hex dump has bits set above trunc_degree")
        return cls(bits, trunc_degree)

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Gf2Series):
            return NotImplemented
        return self._n == other._n and self._bits == other._bits

    def __hash__(self):
        return hash((self._bits, self._n))

    def __add__(self, other):
        if not isinstance(other, Gf2Series):
            return NotImplemented
        return xor_add(self, other)

    __sub__ = __add__
    __xor__ = __add__

    def __mul__(self, other):
        if not isinstance(other, Gf2Series):
            return NotImplemented
        return mul(self, other)

    def __getitem__(self, n: int) -> int:
        return coeff(self, n)

    def __setattr__(self, name, value):
        if name in self.__slots__ and not hasattr(self, name):
            object.__setattr__(self, name, value)
        else:
            raise AttributeError("Gf2Series is immutable")

    def __repr__(self):
        exps = self.exponents()
        head = ", ".join(map(str, exps[:12]))
        more = ", ..." if len(exps) > 12 else ""
        return f"Gf2Series(exponents=[{head}{more}], trunc_degree={self._n})"


def xor_add(f: Gf2Series, g: Gf2Series) -> Gf2Series:
    """Coefficientwise sum mod 2, truncated at the smaller degree."""
    return Gf2Series(f.bits ^ g.bits, min(f.trunc_degree, g.trunc_degree))


def mul_naive(f: Gf2Series, g: Gf2Series) -> Gf2Series:
    """Product by shift-XOR accumulation over the set bits of the sparser operand."""
    n = min(f.trunc_degree, g.trunc_degree)
    a = f.bits & _mask(n + 1)
    b = g.bits & _mask(n + 1)
    if a.bit_count() < b.bit_count():
        a, b = b, a
    acc = 0
    for i in np.flatnonzero(_unpack(b, n + 1)).tolist():
        acc ^= a << i
    return Gf2Series(acc, n)


def mul_kronecker(f: Gf2Series, g: Gf2Series) -> Gf2Series:
    """Product via one integer multiplication of bit-spread operands.

    Each coefficient is placed in its own slot of ``w`` bits.  A slot of the
    integer product holds the number of pairs ``i + j = n`` with both bits
    set; that count is at most ``N + 1 < 2**w`` so slots never overflow and
    the low bit of each slot is the GF(2) coefficient.
    """
    n = min(f.trunc_degree, g.trunc_degree)
    size = n + 1
    if size < (1 << 16):
        dtype, w = "<u2", 16
    else:
        dtype, w = "<u4", 32
    spread = []
    for s in (f, g):
        arr = _unpack(s.bits, size).astype(dtype)
        spread.append(int.from_bytes(arr.tobytes(), "little"))
    if gmpy2 is not None:
        prod = gmpy2.f_mod_2exp(gmpy2.mpz(spread[0]) * gmpy2.mpz(spread[1]), w * size)
        prod = int(prod)
    else:
        prod = (spread[0] * spread[1]) & _mask(w * size)
    slots = np.frombuffer(prod.to_bytes(size * w // 8, "little"), dtype=dtype)
    return Gf2Series(_pack((slots & 1).astype(np.uint8)), n)


def mul(f: Gf2Series, g: Gf2Series, threshold: Optional[int] = None) -> Gf2Series:
    """Product mod 2, truncated at the smaller degree.

    Uses shift-XOR below ``threshold`` coefficients (default
    ``MUL_THRESHOLD``) or when one operand is very sparse, and the Kronecker
    path otherwise.  Both paths are bit-identical.
    """
    if threshold is None:
        threshold = MUL_THRESHOLD
    n = min(f.trunc_degree, g.trunc_degree)
    a = f.bits & _mask(n + 1)
    b = g.bits & _mask(n + 1)
    if not a or not b:
        return Gf2Series(0, n)
    if n + 1 <= threshold or min(a.bit_count(), b.bit_count()) <= _SPARSE_TERMS:
        return mul_naive(Gf2Series(a, n), Gf2Series(b, n))
    return mul_kronecker(Gf2Series(a, n), Gf2Series(b, n))


def square(f: Gf2Series) -> Gf2Series:
    """Frobenius square ``f(q)**2 = f(q**2)``, by bit interleaving."""
    n = f.trunc_degree
    keep = n // 2 + 1
    raw = np.frombuffer((f.bits & _mask(keep)).to_bytes(_nbytes(keep), "little"), dtype=np.uint8)
    spread = _SPREAD[raw].tobytes()
    return Gf2Series(int.from_bytes(spread, "little"), n)


def dilate(f: Gf2Series, d: int) -> Gf2Series:
    """Substitute ``q -> q**d``, keeping the truncation degree."""
    if d < 1:
        raise ValueError("dilation factor must be >= 1")
    if d == 1:
        return f
    n = f.trunc_degree
    src = _unpack(f.bits, n // d + 1)
    out = np.zeros(n + 1, dtype=np.uint8)
    out[::d] = src
    return Gf2Series(_pack(out), n)


def shift(f: Gf2Series, k: int) -> Gf2Series:
    """Multiply by ``q**k``."""
    if k < 0:
        raise ValueError("shift must be non-negative")
    return Gf2Series(f.bits << k, f.trunc_degree)


def extract_progression(f: Gf2Series, m: int, r: int) -> Gf2Series:
    """Series whose ``n``-th coefficient is ``f[m*n + r]``.

    ``r`` is usually a residue mod ``m`` but any offset ``0 <= r <= N`` works;
    the result is truncated at ``(N - r) // m``.
    """
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if r < 0:
        raise ValueError("offset must be non-negative")
    n = f.trunc_degree
    if r > n:
        raise DegreeOutOfRange(f"offset {r} exceeds trunc_degree {n}")
    if m == 1 and r == 0:
        return f
    return Gf2Series.from_array(f.to_array()[r::m])


def coeff(f: Gf2Series, n: int) -> int:
    if not 0 <= n <= f.trunc_degree:
        raise DegreeOutOfRange(f"degree {n} outside 0..{f.trunc_degree}")
    return (f.bits >> n) & 1


def invert(f: Gf2Series) -> Gf2Series:
    """Multiplicative inverse by Newton iteration.

    Over GF(2) the Newton step ``g <- g*(2 - f*g)`` reduces to
    ``g <- f * g**2``, and squaring is a cheap bit interleave, so each
    precision doubling costs one product.
    """
    if not f.bits & 1:
        raise ConstantTermZero("series has zero constant term")
    n = f.trunc_degree
    g = Gf2Series(1, 0)
    prec = 1
    while prec < n + 1:
        prec = min(2 * prec, n + 1)
        top = prec - 1
        g2 = square(Gf2Series(g.bits, top))
        g = mul(f.truncate(top), g2)
    return g


def invert_naive(f: Gf2Series) -> Gf2Series:
    """Inverse by coefficient back-substitution.  Quadratic; debug oracle only."""
    if not f.bits & 1:
        raise ConstantTermZero("series has zero constant term")
    n = f.trunc_degree
    tail = f.bits >> 1
    g = 1
    rev = 1  # bit i holds g_{m-1-i}
    for m in range(1, n + 1):
        bit = (tail & rev & _mask(m)).bit_count() & 1
        g |= bit << m
        rev = (rev << 1) | bit
    return Gf2Series(g, n)
