"""Arithmetic in binary finite fields GF(2^w).

Field elements are represented as plain Python ints in [0, 2^w): the
integer b_{w-1} 2^{w-1} + ... + b_1 2 + b_0 stands for the polynomial
b_{w-1} x^{w-1} + ... + b_1 x + b_0 over GF(2).  Addition is bitwise
xor; multiplication is the carry-less polynomial product reduced by a
fixed irreducible modulus.  There is no division: the solvers built on
top of this module never divide.

Fields and elements are immutable values, safe for unrestricted
concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass

# IRREDUCIBLE[w] is the numerically smallest irreducible polynomial of
# degree exactly w over GF(2), encoded with the leading x^w bit included
# (so IRREDUCIBLE[4] = 0x13 = x^4 + x + 1).  Fixing the smallest one
# makes every field below bit-exact reproducible.  Verified by trial
# division for small w and by Rabin's irreducibility test for all w.
IRREDUCIBLE = {
    1: 0x2, 2: 0x7, 3: 0xB, 4: 0x13,
    5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009,
    13: 0x201B, 14: 0x4021, 15: 0x8003, 16: 0x1002B,
    17: 0x20009, 18: 0x40009, 19: 0x80027, 20: 0x100009,
    21: 0x200005, 22: 0x400003, 23: 0x800021, 24: 0x100001B,
    25: 0x2000009, 26: 0x400001B, 27: 0x8000027, 28: 0x10000003,
    29: 0x20000005, 30: 0x40000003, 31: 0x80000009, 32: 0x10000008D,
    33: 0x20000004B, 34: 0x40000001B, 35: 0x800000005, 36: 0x1000000035,
    37: 0x200000003F, 38: 0x4000000063, 39: 0x8000000011, 40: 0x10000000039,
    41: 0x20000000009, 42: 0x40000000027, 43: 0x80000000059, 44: 0x100000000021,
    45: 0x20000000001B, 46: 0x400000000003, 47: 0x800000000021, 48: 0x100000000002D,
    49: 0x2000000000071, 50: 0x400000000001D, 51: 0x800000000004B, 52: 0x10000000000009,
    53: 0x20000000000047, 54: 0x4000000000007D, 55: 0x80000000000047, 56: 0x100000000000095,
    57: 0x200000000000011, 58: 0x400000000000063, 59: 0x80000000000007B, 60: 0x1000000000000003,
    61: 0x2000000000000027, 62: 0x4000000000000069, 63: 0x8000000000000003, 64: 0x1000000000000001B,
}


@dataclass(frozen=True)
class Field:
    """GF(2^w) with the fixed modulus from the IRREDUCIBLE table."""

    w: int
    modulus: int

    @property
    def order(self) -> int:
        return 1 << self.w

    def add(self, a: int, b: int) -> int:
        """Sum of two field elements (characteristic 2: bitwise xor)."""
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        """Product of two field elements, shift-xor schoolbook."""
        w, mod, top = self.w, self.modulus, 1 << self.w
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= mod
        return r

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r


def field(w: int) -> Field:
    """GF(2^w) for a given bit width, 1 <= w <= 64."""
    if w not in IRREDUCIBLE:
        raise ValueError(f"unsupported field width {w}, need 1 <= w <= 64")
    return Field(w, IRREDUCIBLE[w])


def field_for_size(n: int) -> Field:
    """Field of order 2^(ceil(log2 n) + 1), which is always >= 2n.

    This is the field used for polynomial identity testing on graphs
    with n vertices: path-length polynomials have degree < n, so a
    random evaluation over this field vanishes with probability < 1/2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return field((n - 1).bit_length() + 1)


def log_exp_tables(f: Field):
    """Discrete log / antilog tables for vectorized multiplication.

    Returns (log, exp) as numpy arrays where exp[log[a] + log[b]] equals
    a*b for all a, b including zero: log[0] is a sentinel 2(q-1) and the
    exp table is padded with zeros past index 2(q-1)-2, so a single add
    and lookup implements the product without branching.  Only practical
    for w <= 20 (table memory grows with the field order).
    """
    import numpy as np

    if f.w > 20:
        raise ValueError("log/exp tables limited to w <= 20")
    q = f.order
    # smallest generator of the multiplicative group
    for g in range(2, q):
        seen = set()
        x = 1
        for _ in range(q - 1):
            seen.add(x)
            x = f.mul(x, g)
        if len(seen) == q - 1:
            break
    else:  # pragma: no cover - every GF(2^w) group is cyclic
        raise AssertionError("no generator found")
    log = np.zeros(q, dtype=np.int64)
    exp = np.zeros(4 * (q - 1) + 1, dtype=np.uint32)
    sentinel = 2 * (q - 1)
    log[0] = sentinel
    x = 1
    for i in range(q - 1):
        log[x] = i
        exp[i] = x
        exp[i + (q - 1)] = x
        x = f.mul(x, g)
    # indices >= 2(q-1) stay zero: they arise exactly when a factor is 0
    return log, exp
