"""Arithmetic in GF(2^n), 2 <= n <= 28, in polynomial basis.

Elements are plain ints: bit i is the coefficient of x^i. Addition is XOR.
Scalar routines take and return ints; the ``v*`` routines operate on numpy
integer arrays and back every exhaustive sweep in the package.

For n <= TABLE_MAX_N multiplication goes through log/antilog tables built
once per field; above that a carryless multiply followed by reduction is used.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DivisionByZero,
    InvalidField,
    NotCoprime,
    NotInvertibleExponent,
)

MIN_N = 2
MAX_N = 28
TABLE_MAX_N = 20


# ---------------------------------------------------------------------------
# GF(2)[x] on int bit masks
# ---------------------------------------------------------------------------

def clmul(a: int, b: int) -> int:
    """Carryless product of two bit-mask polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _x_pow_2i_mod(i: int, m: int) -> int:
    # x^(2^i) mod m by i successive squarings
    r = poly_mod(0b10, m)
    for _ in range(i):
        r = poly_mod(clmul(r, r), m)
    return r


def prime_factors(m: int) -> list[int]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def is_irreducible(poly: int) -> bool:
    """Rabin's test: x^(2^n) = x mod p and gcd(x^(2^(n/r)) - x, p) = 1 for primes r | n."""
    n = poly.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if not poly & 1:
        return False
    if _x_pow_2i_mod(n, poly) != 0b10:
        return False
    for r in prime_factors(n):
        h = _x_pow_2i_mod(n // r, poly) ^ 0b10
        if poly_gcd(poly, h) != 1:
            return False
    return True


def smallest_irreducible(n: int) -> int:
    for poly in range((1 << n) | 1, 1 << (n + 1), 2):
        if is_irreducible(poly):
            return poly
    raise InvalidField(f"no irreducible polynomial of degree {n}")  # unreachable


# ---------------------------------------------------------------------------
# Field description
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """An instance of GF(2^n): degree, reduction polynomial, primitive element."""

    n: int
    reduction_poly: int
    generator: int

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def group_order(self) -> int:
        return (1 << self.n) - 1

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "reduction_poly": to_hex(self.reduction_poly),
            "generator": to_hex(self.generator),
        }


def to_hex(x: int) -> str:
    return f"{int(x):#x}"


def from_hex(s: str) -> int:
    return int(s, 16)


def _check_elem(f: FieldSpec, a: int) -> None:
    if not 0 <= a < f.size:
        raise ValueError(f"{a:#x} is not an element of GF(2^{f.n})")


@functools.lru_cache(maxsize=None)
def make_field(n: int, poly_override: int | None = None) -> FieldSpec:
    """Build GF(2^n).

    Without an override the reduction polynomial is the smallest irreducible
    bit mask of degree n. The generator is the smallest primitive element.
    """
    if not MIN_N <= n <= MAX_N:
        raise InvalidField(f"n={n} outside [{MIN_N}, {MAX_N}]")
    if poly_override is None:
        poly = smallest_irreducible(n)
    else:
        poly = int(poly_override)
        if poly.bit_length() - 1 != n:
            raise InvalidField(f"{poly:#x} does not have degree {n}")
        if not is_irreducible(poly):
            raise InvalidField(f"{poly:#x} is reducible over GF(2)")
    order = (1 << n) - 1
    cofactors = [order // p for p in prime_factors(order)]
    # build a provisional spec to use the scalar power routine
    for g in range(2, 1 << n):
        probe = FieldSpec(n, poly, g)
        if all(_pow_clmul(probe, g, e) != 1 for e in cofactors):
            return FieldSpec(n, poly, g)
    # GF(2^1) is excluded by MIN_N; for n >= 2 the multiplicative group has a generator
    # other than 1, and the loop never falls through.
    raise InvalidField(f"no primitive element found for {poly:#x}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Tables:
    exp: np.ndarray | None  # length 2N, exp[i] = g^i
    log: np.ndarray | None  # log[0] is meaningless
    trace_mask: int


def _mulmod(f: FieldSpec, a: int, b: int) -> int:
    return poly_mod(clmul(a, b), f.reduction_poly)


def _pow_clmul(f: FieldSpec, a: int, e: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _mulmod(f, r, a)
        a = _mulmod(f, a, a)
        e >>= 1
    return r


def _vmul_clmul(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    a, b = np.broadcast_arrays(a, b)
    r = np.zeros(a.shape, dtype=np.uint64)
    one = np.uint64(1)
    for i in range(f.n):
        bit = (b >> np.uint64(i)) & one
        r ^= (a << np.uint64(i)) * bit
    poly = np.uint64(f.reduction_poly)
    for deg in range(2 * f.n - 2, f.n - 1, -1):
        hi = (r >> np.uint64(deg)) & one
        r ^= hi * (poly << np.uint64(deg - f.n))
    return r.astype(np.int64)


@functools.lru_cache(maxsize=None)
def _tables(f: FieldSpec) -> _Tables:
    mask = 0
    for i in range(f.n):
        # Tr(x^i) by definition
        t, y = 0, 1 << i
        for _ in range(f.n):
            t ^= y
            y = _mulmod(f, y, y)
        assert t in (0, 1)
        mask |= t << i
    if f.n > TABLE_MAX_N:
        return _Tables(None, None, mask)
    N = f.group_order
    exp = np.empty(2 * N, dtype=np.int64)
    exp[0] = 1
    filled = 1
    while filled < N:
        m = min(filled, N - filled)
        exp[filled:filled + m] = _vmul_clmul(f, exp[:m], _pow_clmul(f, f.generator, filled))
        filled += m
    exp[N:] = exp[:N]
    log = np.zeros(f.size, dtype=np.int64)
    log[exp[:N]] = np.arange(N, dtype=np.int64)
    return _Tables(exp, log, mask)


# ---------------------------------------------------------------------------
# Scalar operations
# ---------------------------------------------------------------------------

def mul(f: FieldSpec, a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    t = _tables(f)
    if t.exp is None:
        return _mulmod(f, a, b)
    return int(t.exp[t.log[a] + t.log[b]])


def div(f: FieldSpec, a: int, b: int) -> int:
    return mul(f, a, inv(f, b))


def inv(f: FieldSpec, a: int) -> int:
    if a == 0:
        raise DivisionByZero("inverse of 0")
    t = _tables(f)
    if t.exp is None:
        return _pow_clmul(f, a, f.group_order - 1)
    return int(t.exp[(f.group_order - t.log[a]) % f.group_order])


def power(f: FieldSpec, a: int, e: int) -> int:
    """a^e. Nonzero bases reduce e mod 2^n-1; 0^0 = 1, 0^e = 0 for e > 0."""
    if a == 0:
        if e < 0:
            raise DivisionByZero("0 to a negative power")
        return 1 if e == 0 else 0
    N = f.group_order
    e %= N
    t = _tables(f)
    if t.exp is None:
        return _pow_clmul(f, a, e)
    return int(t.exp[(int(t.log[a]) * e) % N])


def frobenius(f: FieldSpec, a: int, i: int) -> int:
    """a^(2^i), i taken mod n."""
    i %= f.n
    for _ in range(i):
        a = mul(f, a, a)
    return a


def trace(f: FieldSpec, a: int) -> int:
    return (int(a) & _tables(f).trace_mask).bit_count() & 1


def trace_by_definition(f: FieldSpec, a: int) -> int:
    s = 0
    for _ in range(f.n):
        s ^= a
        a = mul(f, a, a)
    return s


def exp_inv(f: FieldSpec, e: int) -> int:
    """Inverse of e modulo 2^n - 1, as a residue in [0, 2^n - 1)."""
    N = f.group_order
    if math.gcd(e, N) != 1:
        raise NotInvertibleExponent(f"gcd({e}, {N}) = {math.gcd(e, N)}")
    return pow(e, -1, N) % N


def in_subfield(f: FieldSpec, a: int, m: int) -> bool:
    """True iff a lies in GF(2^m) (requires m | n)."""
    return frobenius(f, a, m) == a


def gf4_exists(f: FieldSpec) -> bool:
    return f.n % 2 == 0


def _gf2_solve(cols: list[int], nbits: int, target: int) -> int | None:
    """One solution u of M u = target over GF(2), column i of M being cols[i]."""
    ncols = len(cols)
    rows = []
    for j in range(nbits):
        row = 0
        for i, c in enumerate(cols):
            row |= ((c >> j) & 1) << i
        row |= ((target >> j) & 1) << ncols
        rows.append(row)
    pivots = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, nbits) if rows[i] >> col & 1), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(nbits):
            if i != r and rows[i] >> col & 1:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
    for i in range(r, nbits):
        if rows[i] >> ncols & 1:
            return None
    u = 0
    for i, col in enumerate(pivots):
        if rows[i] >> ncols & 1:
            u |= 1 << col
    return u


@functools.lru_cache(maxsize=None)
def _artin_schreier_columns(f: FieldSpec, k: int) -> tuple[int, ...]:
    return tuple(frobenius(f, 1 << i, k) ^ (1 << i) for i in range(f.n))


def solve_frobenius_affine(f: FieldSpec, k: int, w: int) -> set[int]:
    """All u with u^(2^k) + u = w. Empty, or two solutions differing by 1."""
    if math.gcd(k, f.n) != 1:
        raise NotCoprime(f"gcd(k={k}, n={f.n}) != 1")
    _check_elem(f, w)
    u = _gf2_solve(list(_artin_schreier_columns(f, k)), f.n, w)
    if u is None:
        return set()
    return {u, u ^ 1}


# ---------------------------------------------------------------------------
# Vectorized operations
# ---------------------------------------------------------------------------

def elements(f: FieldSpec) -> np.ndarray:
    return np.arange(f.size, dtype=np.int64)


def vmul(f: FieldSpec, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    t = _tables(f)
    if t.exp is None:
        return _vmul_clmul(f, a, b)
    a, b = np.broadcast_arrays(a, b)
    r = t.exp[t.log[a] + t.log[b]]
    return np.where((a == 0) | (b == 0), 0, r)


def vpow(f: FieldSpec, a, e: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    zero = a == 0
    if e < 0 and zero.any():
        raise DivisionByZero("0 to a negative power")
    zero_val = 1 if e == 0 else 0
    N = f.group_order
    e %= N
    t = _tables(f)
    if t.exp is None:
        r = np.ones(a.shape, dtype=np.int64)
        base = a
        while e:
            if e & 1:
                r = _vmul_clmul(f, r, base)
            base = _vmul_clmul(f, base, base)
            e >>= 1
    else:
        r = t.exp[(t.log[a] * e) % N]
    return np.where(zero, zero_val, r)


def vinv(f: FieldSpec, a) -> np.ndarray:
    return vpow(f, a, -1)


def vdiv(f: FieldSpec, a, b) -> np.ndarray:
    return vmul(f, a, vinv(f, b))


def vfrob(f: FieldSpec, a, i: int) -> np.ndarray:
    return vpow(f, a, 1 << (i % f.n)) if f.n <= TABLE_MAX_N else _vsquare_times(f, a, i % f.n)


def _vsquare_times(f: FieldSpec, a, i: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    for _ in range(i):
        a = _vmul_clmul(f, a, a)
    return a


def vtrace(f: FieldSpec, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    return (np.bitwise_count(a & _tables(f).trace_mask) & 1).astype(np.int64)


def vmul_carryless(f: FieldSpec, a, b) -> np.ndarray:
    """Table-free multiplication; the independent route for cross-checks."""
    return _vmul_clmul(f, a, b)
