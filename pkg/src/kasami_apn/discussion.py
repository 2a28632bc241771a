"""Reduction chains from X + Y = 1, F(X) + F(Y) = b to (v+1)^(q+1) + c v = 0,
and the GF(4) analysis of the even case.

All counts here are exhaustive over a concrete field. Solution sets are
computed once per (field, k[, omega']) for every b and cached, so per-b
queries are lookups.

Odd n: x = X^(1/(q+1)), y = x + z, v = z^(q^2-1), c = b + 1. Pairs {x, y}
and admissible v (Tr(1/v^(1/(q-1)) + 1) = 0) are in bijection.

Even n, one coset omega' of the cubes: omega'(x^(q+1) + y^(q+1)) = 1,
x^(q^3+1) + y^(q^3+1) = b, x, y != 0, v = varpi^2 z^(q^2-1) with
varpi = 1/omega'. The system is invariant under (x, y) -> (zeta x, zeta y) for
zeta in GF(4)*, and these orbits (not the pairs themselves) are in bijection
with the admissible v.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import equations, gf2n
from .errors import (
    InvalidArgument,
    InvalidU,
    NotCoprime,
    ParityError,
    ParityMismatch,
)
from .gf2n import FieldSpec, frobenius, inv, mul, power, to_hex, trace
from .kasami import gf4_epsilon, kasami
from .reports import CheckReport, timed


def _require_coprime(f: FieldSpec, k: int) -> None:
    if k < 1 or math.gcd(k, f.n) != 1:
        raise NotCoprime(f"gcd(k={k}, n={f.n}) != 1")


@dataclass(frozen=True)
class Gf4Embedding:
    epsilon: int
    omegas: tuple[int, int, int]
    omega_prime: int
    varpi: int

    def to_dict(self) -> dict:
        return {
            "epsilon": to_hex(self.epsilon),
            "omegas": [to_hex(w) for w in self.omegas],
            "omega_prime": to_hex(self.omega_prime),
            "varpi": to_hex(self.varpi),
        }


def gf4_embedding(f: FieldSpec, omega_prime: int = 1) -> Gf4Embedding:
    eps = gf4_epsilon(f)
    omegas = (1, eps, mul(f, eps, eps))
    if omega_prime not in omegas:
        raise InvalidArgument(f"omega'={omega_prime:#x} is not in GF(4)*")
    return Gf4Embedding(eps, omegas, omega_prime, inv(f, omega_prime))


def is_cube(f: FieldSpec, x: int) -> bool:
    return x != 0 and power(f, x, f.group_order // 3) == 1


def coset_rep(f: FieldSpec, X: int) -> int | None:
    """The omega in GF(4)* with X/omega a cube; None if not unique (6 | n) or X = 0."""
    if X == 0 or f.n % 6 == 0:
        return None
    eps = gf4_epsilon(f)
    return next(w for w in (1, eps, mul(f, eps, eps)) if is_cube(f, mul(f, X, inv(f, w))))


# ---------------------------------------------------------------------------
# cached solution sets, keyed by b
# ---------------------------------------------------------------------------

def _group(keys: np.ndarray, *cols: np.ndarray) -> dict[int, list[tuple[int, ...]]]:
    out: dict[int, list] = {}
    for row in zip(keys.tolist(), *(c.tolist() for c in cols)):
        out.setdefault(row[0], []).append(row[1:])
    return out


@functools.lru_cache(maxsize=32)
def original_pairs(f: FieldSpec, k: int) -> dict[int, list[tuple[int, int]]]:
    """Unordered pairs {X, X+1} grouped by b = F(X) + F(X+1)."""
    t = kasami(f, k).table()
    X = gf2n.elements(f)[::2]
    return _group(t[X] ^ t[X ^ 1], X, X ^ 1)


@functools.lru_cache(maxsize=32)
def odd_system_pairs(f: FieldSpec, k: int) -> dict[int, list[tuple[int, int]]]:
    """Pairs {x, y} with x^(q+1) + y^(q+1) = 1, grouped by x^(q^3+1) + y^(q^3+1)."""
    q = 1 << k
    x = gf2n.elements(f)
    y = gf2n.vpow(f, gf2n.vpow(f, x, q + 1) ^ 1, gf2n.exp_inv(f, q + 1))
    keep = x < y
    x, y = x[keep], y[keep]
    e = q ** 3 + 1
    return _group(gf2n.vpow(f, x, e) ^ gf2n.vpow(f, y, e), x, y)


@functools.lru_cache(maxsize=32)
def even_system_orbits(f: FieldSpec, k: int, omega_prime: int) -> dict[int, list[tuple[int, int]]]:
    """Orbit representatives {x, y} of the omega = omega' system, grouped by b.

    The representative of an orbit is the pair containing its smallest element.
    """
    emb = gf4_embedding(f, omega_prime)
    q = 1 << k
    X = gf2n.elements(f)[1:]
    P = gf2n.vpow(f, X, q + 1)
    order = np.argsort(P, kind="stable")
    Ps, Xs = P[order], X[order]
    target = P ^ emb.varpi
    lo = np.searchsorted(Ps, target, "left")
    hi = np.searchsorted(Ps, target, "right")
    xs, ys = [], []
    for j in range(3):  # x -> x^(q+1) is at most 3-to-1
        idx = lo + j
        ok = idx < hi
        xs.append(X[ok])
        ys.append(Xs[idx[ok]])
    x = np.concatenate(xs)
    y = np.concatenate(ys)
    keep = (x < y) & (y != 0)
    x, y = x[keep], y[keep]
    zeta = np.array(emb.omegas[1:], dtype=np.int64)
    smallest = np.minimum(x, y)
    for z in zeta:
        smallest = np.minimum(smallest, np.minimum(gf2n.vmul(f, x, z), gf2n.vmul(f, y, z)))
    rep = smallest == np.minimum(x, y)
    x, y = x[rep], y[rep]
    e = q ** 3 + 1
    return _group(gf2n.vpow(f, x, e) ^ gf2n.vpow(f, y, e), x, y)


def admissible_v(f: FieldSpec, k: int, c: int, varpi: int | None = None) -> list[int]:
    """Roots v of (v+1)^(q+1) + c v for which the reduced first equation is solvable.

    With ``varpi`` (even chain) the root must also give x, y != 0 and a z with
    z^(q+1) = varpi * v^(1/(q-1)).
    """
    q = 1 << k
    ctab = equations.affine_c_table(f, k)
    e = gf2n.exp_inv(f, q - 1)
    out = []
    for v in np.flatnonzero(ctab == c).tolist():
        w = inv(f, power(f, v, e))
        if trace(f, w ^ 1) != 0:
            continue
        if varpi is not None and (w == 1 or not is_cube(f, mul(f, varpi, inv(f, w)))):
            continue
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# reduction equivalence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionRecord:
    b: int
    c: int
    parity: str
    pairs: tuple[tuple[int, int, int, int], ...]  # (x, y, z, v)
    admissible_v: tuple[int, ...]
    original_pair_count: int
    omega_prime: int | None = None

    @property
    def admissible_v_count(self) -> int:
        return len(self.admissible_v)

    @property
    def consistent(self) -> bool:
        if self.parity == "odd":
            counts_ok = self.original_pair_count == len(self.pairs)
        else:
            # each value pair {X, Y} splits into three (x, y)-orbits
            counts_ok = 3 * self.original_pair_count == len(self.pairs)
        return (
            counts_ok
            and len(self.pairs) == self.admissible_v_count
            and sorted(p[3] for p in self.pairs) == sorted(self.admissible_v)
            and all(p[2] != 0 for p in self.pairs)
        )

    def to_dict(self) -> dict:
        return {
            "b": to_hex(self.b),
            "c": to_hex(self.c),
            "parity": self.parity,
            "omega_prime": None if self.omega_prime is None else to_hex(self.omega_prime),
            "pairs": [[to_hex(t) for t in p] for p in self.pairs],
            "admissible_v": [to_hex(v) for v in sorted(self.admissible_v)],
            "admissible_v_count": self.admissible_v_count,
            "original_pair_count": self.original_pair_count,
            "consistent": self.consistent,
        }


def reduction_equivalence(
    f: FieldSpec, k: int, b: int, parity: str, omega_prime: int = 1
) -> ReductionRecord:
    _require_coprime(f, k)
    if parity not in ("odd", "even"):
        raise InvalidArgument(f"parity must be 'odd' or 'even', got {parity!r}")
    if (parity == "odd") != (f.n % 2 == 1):
        raise ParityMismatch(f"parity={parity} but n={f.n}")
    gf2n._check_elem(f, b)
    q = 1 << k
    c = b ^ 1
    if parity == "odd":
        orig = len(original_pairs(f, k).get(b, []))
        tuples = []
        for x, y in odd_system_pairs(f, k).get(b, []):
            z = x ^ y
            tuples.append((x, y, z, power(f, z, q * q - 1)))
        adm = admissible_v(f, k, c)
        return ReductionRecord(b, c, parity, tuple(tuples), tuple(adm), orig)
    emb = gf4_embedding(f, omega_prime)
    vp2 = mul(f, emb.varpi, emb.varpi)
    tuples = []
    for x, y in even_system_orbits(f, k, omega_prime).get(b, []):
        z = x ^ y
        tuples.append((x, y, z, mul(f, vp2, power(f, z, q * q - 1))))
    # value pairs {X, Y} of the original system lying in the coset omega' * cubes
    orig = sum(
        1
        for X, Y in original_pairs(f, k).get(b, [])
        if is_cube(f, mul(f, X, emb.varpi)) and is_cube(f, mul(f, Y, emb.varpi))
    )
    adm = admissible_v(f, k, c, emb.varpi)
    return ReductionRecord(b, c, parity, tuple(tuples), tuple(adm), orig, omega_prime)


def verify_reduction(f: FieldSpec, k: int) -> CheckReport:
    """reduction_equivalence is consistent for every b (and every omega' when n is even)."""
    _require_coprime(f, k)
    rep = CheckReport("reduction", f.n, k)
    with timed(rep):
        parity = "odd" if f.n % 2 else "even"
        omegas = (None,) if parity == "odd" else gf4_embedding(f).omegas
        bad, total_pairs = set(), 0
        max_orig = 0
        for w in omegas:
            for b in range(f.size):
                r = reduction_equivalence(f, k, b, parity, 1 if w is None else w)
                total_pairs += len(r.pairs)
                if parity == "odd":
                    max_orig = max(max_orig, r.original_pair_count)
                if not r.consistent:
                    bad.add(b)
        if parity == "odd":
            rep.details["max_pairs_per_b"] = max_orig
            # the original system has at most one pair per b
            if max_orig > 1:
                rep.passed = False
        rep.details.update({"parity": parity, "total_pairs": total_pairs})
        if bad:
            rep.fail(*sorted(bad))
    return rep


# ---------------------------------------------------------------------------
# GF(4) discussion for even n
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscussionReport:
    u: int
    omega_prime: int
    S: tuple[int, int]
    b_value: int
    branch_results: tuple[bool, bool, bool]
    pair_found: bool
    b_derived: int  # c + 1 with c shared by the three branch values of v
    v_roots: tuple[int, int, int]
    v_roots_consistent: bool
    z_exists: bool  # varpi/(u+u^q) is a (q+1)-th power
    omega_distinct_solutions: int | None
    b_gf4_reading: int
    gf4_reading_solutions: int | None

    @property
    def b_matches_derivation(self) -> bool:
        return self.b_value == self.b_derived

    def to_dict(self) -> dict:
        return {
            "u": to_hex(self.u),
            "omega_prime": to_hex(self.omega_prime),
            "S": [to_hex(x) for x in self.S],
            "b_value": to_hex(self.b_value),
            "branch_results": list(self.branch_results),
            "pair_found": self.pair_found,
            "b_derived": to_hex(self.b_derived),
            "b_matches_derivation": self.b_matches_derivation,
            "v_roots": [to_hex(v) for v in self.v_roots],
            "v_roots_consistent": self.v_roots_consistent,
            "z_exists": self.z_exists,
            "omega_distinct_solutions": self.omega_distinct_solutions,
            "b_gf4_reading": to_hex(self.b_gf4_reading),
            "gf4_reading_solutions": self.gf4_reading_solutions,
        }


def b_formula(f: FieldSpec, k: int, u: int) -> int:
    """(u + u^(q^3)) / (u + u^q)^(q^2 - q + 1)."""
    q = 1 << k
    s = u ^ frobenius(f, u, k)
    return mul(f, u ^ frobenius(f, u, 3 * k), inv(f, power(f, s, q * q - q + 1)))


def _even_system_solutions(f: FieldSpec, k: int, b: int, distinct: bool) -> int | None:
    """Pairs {X, Y}, X, Y != 0, at b with x^(q+1) != y^(q+1), split by omega = omega' or not."""
    if f.n % 6 == 0:
        return None
    count = 0
    for X, Y in original_pairs(f, k).get(b, []):
        if X == 0 or Y == 0:
            continue
        wx, wy = coset_rep(f, X), coset_rep(f, Y)
        if mul(f, X, inv(f, wx)) == mul(f, Y, inv(f, wy)):
            continue
        if (wx != wy) == distinct:
            count += 1
    return count


def _system_solutions_at(f: FieldSpec, k: int, b: int) -> int | None:
    a = _even_system_solutions(f, k, b, distinct=True)
    s = _even_system_solutions(f, k, b, distinct=False)
    return None if a is None else a + s


def even_discussion_check(f: FieldSpec, k: int, u: int, omega_prime: int = 1) -> DiscussionReport:
    if f.n % 2:
        raise ParityError(f"n={f.n} is odd; GF(4) is not a subfield")
    _require_coprime(f, k)
    gf2n._check_elem(f, u)
    if frobenius(f, u, 2) == u:
        raise InvalidU(f"u={u:#x} lies in GF(4)")
    emb = gf4_embedding(f, omega_prime)
    q = 1 << k
    eps, varpi = emb.epsilon, emb.varpi
    s = u ^ frobenius(f, u, k)
    scale = mul(f, varpi, inv(f, s))
    S = tuple(sorted({mul(f, scale, power(f, u ^ eps, q + 1)),
                      mul(f, scale, power(f, u ^ 1 ^ eps, q + 1))}))
    if len(S) == 1:  # degenerate; keep the pair shape
        S = (S[0], S[0])
    u1 = u ^ 1
    branches = (
        s,
        inv(f, u) ^ inv(f, frobenius(f, u, k)),
        inv(f, u1) ^ inv(f, frobenius(f, u1, k)),
    )
    results = []
    vs = []
    for w in branches:
        zq = mul(f, varpi, inv(f, w))
        ts = gf2n.solve_frobenius_affine(f, k, w ^ 1)
        xs = {mul(f, zq, power(f, t, q + 1)) for t in ts}
        results.append(bool(ts) and xs == set(S))
        vs.append(power(f, inv(f, w), q - 1))
    ctab = equations.affine_c_table(f, k)
    cs = {int(ctab[v]) for v in vs}
    consistent = len(cs) == 1 and len(set(vs)) == 3
    b_derived = min(cs) ^ 1
    b_val = b_formula(f, k, u)
    value_pairs = {
        frozenset((power(f, x, q + 1), power(f, y, q + 1)))
        for x, y in even_system_orbits(f, k, omega_prime).get(b_val, [])
    }
    b4 = b_formula(f, k, eps)
    return DiscussionReport(
        u=u,
        omega_prime=omega_prime,
        S=S,
        b_value=b_val,
        branch_results=tuple(results),
        pair_found=frozenset(S) in value_pairs,
        b_derived=b_derived,
        v_roots=tuple(vs),
        v_roots_consistent=consistent,
        z_exists=is_cube(f, scale),
        omega_distinct_solutions=_even_system_solutions(f, k, b_val, distinct=True),
        b_gf4_reading=b4,
        gf4_reading_solutions=_system_solutions_at(f, k, b4),
    )


def verify_discussion(f: FieldSpec, k: int, omega_primes: tuple[int, ...] | None = None) -> CheckReport:
    """S-membership on all three branches for every u outside GF(4).

    Only the branch checks decide pass/fail. The b-formula and omega != omega'
    observations are collected under ``details["findings"]``.
    """
    if f.n % 2:
        raise ParityError(f"n={f.n} is odd; GF(4) is not a subfield")
    _require_coprime(f, k)
    rep = CheckReport("discussion", f.n, k)
    with timed(rep):
        emb = gf4_embedding(f)
        omegas = emb.omegas if omega_primes is None else omega_primes
        checked = found = matches = consistent = zs = 0
        distinct_total: int | None = 0
        found_with_z = z_total = 0
        gf4 = None
        for w in omegas:
            for u in range(f.size):
                if frobenius(f, u, 2) == u:
                    continue
                r = even_discussion_check(f, k, u, w)
                checked += 1
                if not all(r.branch_results):
                    rep.fail(u)
                found += r.pair_found
                matches += r.b_matches_derivation
                consistent += r.v_roots_consistent
                zs += r.z_exists
                if r.z_exists:
                    z_total += 1
                    found_with_z += r.pair_found
                if r.omega_distinct_solutions is None:
                    distinct_total = None
                elif distinct_total is not None:
                    distinct_total += r.omega_distinct_solutions
                gf4 = (r.b_gf4_reading, r.gf4_reading_solutions)
        rep.details = {
            "cases": checked,
            "omega_primes": [to_hex(w) for w in omegas],
            "findings": {
                "pair_found": found,
                "pair_found_when_z_exists": f"{found_with_z}/{z_total}",
                "b_formula_matches_derivation": matches,
                "v_roots_consistent": consistent,
                "z_exists": zs,
                "omega_distinct_solutions_total": distinct_total,
                "b_gf4_reading": None if gf4 is None else to_hex(gf4[0]),
                "gf4_reading_solutions": None if gf4 is None else gf4[1],
            },
        }
    return rep
