"""Roots of X^(q+1) + X + a = 0 over GF(2^n), q = 2^k, gcd(k, n) = 1.

Besides exhaustive root finding this module carries the three-root
parameterization by an auxiliary element u, its inverse (recovering u from a),
and the affine variant (v+1)^(q+1) + c*v = 0 reached by v = c^(1/q) V + 1.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from . import gf2n
from .errors import (
    DegenerateU,
    InvalidU,
    LemmaCounterexample,
    NoThreeSolutions,
    NotCoprime,
    OutsideLemmaScope,
)
from .gf2n import FieldSpec, frobenius, inv, mul, power, to_hex
from .reports import CheckReport, timed


def _require_coprime(f: FieldSpec, k: int) -> None:
    if k < 1 or math.gcd(k, f.n) != 1:
        raise NotCoprime(f"gcd(k={k}, n={f.n}) != 1")


def _sorted_hex(xs) -> list[str]:
    return [to_hex(x) for x in sorted(xs)]


@dataclass(frozen=True)
class RootSet:
    k: int
    a: int
    roots: frozenset[int]

    def to_dict(self) -> dict:
        return {"k": self.k, "a": to_hex(self.a), "roots": _sorted_hex(self.roots)}


@dataclass(frozen=True)
class Witness:
    u: int
    a: int
    x1: int
    x2: int
    x3: int

    @property
    def roots(self) -> frozenset[int]:
        return frozenset((self.x1, self.x2, self.x3))

    def to_dict(self) -> dict:
        return {k: to_hex(getattr(self, k)) for k in ("u", "a", "x1", "x2", "x3")}


@dataclass(frozen=True)
class SolutionHistogram:
    n: int
    k: int
    N0: int
    N1: int
    N3: int
    # root count -> number of nonzero a hitting it, for counts outside {0, 1, 3}
    anomalies: dict[int, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            not self.anomalies
            and self.N0 + self.N1 + self.N3 == (1 << self.n) - 1
            and self.N1 + 3 * self.N3 == (1 << self.n) - 2
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "N0": self.N0,
            "N1": self.N1,
            "N3": self.N3,
            "anomalies": {str(c): m for c, m in sorted(self.anomalies.items())},
        }


@dataclass(frozen=True)
class AffineSolution:
    c: int
    reduced_a: int | None  # c^(-1/q); None when c = 0
    V_roots: frozenset[int]
    v_roots: frozenset[int]
    # None when the closed-form comparison does not apply
    closed_form_match: bool | None = None

    def to_dict(self) -> dict:
        return {
            "c": to_hex(self.c),
            "reduced_a": None if self.reduced_a is None else to_hex(self.reduced_a),
            "V_roots": _sorted_hex(self.V_roots),
            "v_roots": _sorted_hex(self.v_roots),
            "closed_form_match": self.closed_form_match,
        }


# ---------------------------------------------------------------------------
# exhaustive root finding
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=64)
def lhs_table(f: FieldSpec, k: int) -> np.ndarray:
    """X^(q+1) + X for every X, indexed by X."""
    X = gf2n.elements(f)
    return gf2n.vmul(f, X, gf2n.vfrob(f, X, k)) ^ X


def roots_bruteforce(f: FieldSpec, k: int, a: int) -> RootSet:
    _require_coprime(f, k)
    gf2n._check_elem(f, a)
    roots = np.flatnonzero(lhs_table(f, k) == a)
    return RootSet(k, a, frozenset(int(r) for r in roots))


def root_counts(f: FieldSpec, k: int) -> np.ndarray:
    """Number of roots of X^(q+1) + X + a for every a, indexed by a."""
    _require_coprime(f, k)
    return np.bincount(lhs_table(f, k), minlength=f.size)


def count_histogram(f: FieldSpec, k: int) -> SolutionHistogram:
    counts = root_counts(f, k)[1:]
    values, mult = np.unique(counts, return_counts=True)
    tally = dict(zip(values.tolist(), mult.tolist()))
    anomalies = {c: m for c, m in tally.items() if c not in (0, 1, 3)}
    return SolutionHistogram(
        f.n, k, tally.get(0, 0), tally.get(1, 0), tally.get(3, 0), anomalies
    )


# ---------------------------------------------------------------------------
# three-root parameterization
# ---------------------------------------------------------------------------

def check_u(f: FieldSpec, k: int, u: int) -> None:
    """Raise unless u is an admissible parameter; the message names the rule that fired."""
    _require_coprime(f, k)
    gf2n._check_elem(f, u)
    if u in (0, 1):
        raise InvalidU(f"u={u:#x} lies in GF(2)")
    if f.n % 2 == 0 and frobenius(f, u, 2) == u:
        raise InvalidU(f"u={u:#x} lies in GF(4)")
    if u == frobenius(f, u, 2 * k):
        raise DegenerateU(f"u + u^(q^2) = 0 for u={u:#x}")


def witness_from_u(f: FieldSpec, k: int, u: int) -> Witness:
    check_u(f, k, u)
    s = u ^ frobenius(f, u, k)  # u + u^q
    t = u ^ frobenius(f, u, 2 * k)  # u + u^(q^2)
    num = mul(f, frobenius(f, s, 2 * k), s)  # s^(q^2+1)
    den = mul(f, frobenius(f, t, k), t)  # t^(q+1)
    a = mul(f, num, inv(f, den))
    d = 1 ^ mul(f, frobenius(f, s, k), inv(f, s))  # 1 + s^(q-1)
    if d == 0:
        raise DegenerateU(f"1 + (u + u^q)^(q-1) = 0 for u={u:#x}")
    x1 = inv(f, d)
    x2 = mul(f, mul(f, frobenius(f, u, 2 * k), inv(f, frobenius(f, u, k))), x1)
    u1 = u ^ 1
    x3 = mul(f, mul(f, frobenius(f, u1, 2 * k), inv(f, frobenius(f, u1, k))), x1)
    w = Witness(u, a, x1, x2, x3)
    if len(w.roots) != 3 or any(evaluate(f, k, x, a) for x in w.roots):
        raise LemmaCounterexample(f"witness for u={u:#x} fails substitution: {w}")
    return w


def evaluate(f: FieldSpec, k: int, x: int, a: int) -> int:
    """x^(q+1) + x + a."""
    return mul(f, x, frobenius(f, x, k)) ^ x ^ a


def is_admissible_u(f: FieldSpec, k: int, u: int) -> bool:
    try:
        check_u(f, k, u)
    except (InvalidU, DegenerateU):
        return False
    return True


def admissible_us(f: FieldSpec, k: int) -> list[int]:
    return [u for u in range(f.size) if is_admissible_u(f, k, u)]


def recover_u(f: FieldSpec, k: int, a: int, cross_check: bool = False) -> int:
    """Smallest admissible u whose witness has parameter a.

    Candidates come from the roots: 1/x + 1 = (u + u^q)^(q-1), so
    w = (1/x + 1)^(1/(q-1)) and u solves u^q + u = w. With ``cross_check`` an
    exhaustive sweep over all u must produce the same answer.
    """
    _require_coprime(f, k)
    if a == 0:
        raise OutsideLemmaScope("a = 0 has the degenerate root pair {0, 1}")
    rs = roots_bruteforce(f, k, a)
    if len(rs.roots) < 3:
        raise NoThreeSolutions(f"a={a:#x} has {len(rs.roots)} root(s)")
    e = gf2n.exp_inv(f, (1 << k) - 1)
    found = set()
    for x in rs.roots:
        w = power(f, inv(f, x) ^ 1, e)
        for u in gf2n.solve_frobenius_affine(f, k, w):
            if is_admissible_u(f, k, u) and witness_from_u(f, k, u).a == a:
                found.add(u)
    best = min(found) if found else None
    if cross_check or best is None:
        swept = [u for u in admissible_us(f, k) if witness_from_u(f, k, u).a == a]
        if not swept or (best is not None and min(swept) != best):
            raise LemmaCounterexample(
                f"recover_u disagreement at a={a:#x}: candidates {sorted(found)}, sweep {swept[:4]}"
            )
        best = min(swept)
    return best


# ---------------------------------------------------------------------------
# affine form (v + 1)^(q+1) + c v = 0
# ---------------------------------------------------------------------------

def affine_lhs(f: FieldSpec, k: int, v: int, c: int) -> int:
    w = v ^ 1
    return mul(f, w, frobenius(f, w, k)) ^ mul(f, c, v)


@functools.lru_cache(maxsize=64)
def affine_c_table(f: FieldSpec, k: int) -> np.ndarray:
    """For each v != 0 the unique c with (v+1)^(q+1) + c v = 0; entry 0 is unused (-1)."""
    V = gf2n.elements(f)
    w = V ^ 1
    num = gf2n.vmul(f, w, gf2n.vfrob(f, w, k))
    out = gf2n.vmul(f, num, gf2n.vinv(f, np.where(V == 0, 1, V)))
    out[0] = -1
    return out


def affine_roots_bruteforce(f: FieldSpec, k: int, c: int) -> frozenset[int]:
    """Roots of (v+1)^(q+1) + c v by direct evaluation over every v."""
    V = gf2n.elements(f)
    w = V ^ 1
    val = gf2n.vmul(f, w, gf2n.vfrob(f, w, k)) ^ gf2n.vmul(f, c, V)
    return frozenset(int(v) for v in np.flatnonzero(val == 0))


def closed_form_v_roots(f: FieldSpec, k: int, u: int) -> tuple[int, int, int]:
    """(1, u^(q^3-q), (u+1)^(q^3-q)) divided by (u + u^q)^(q^2-q)."""
    check_u(f, k, u)
    s = u ^ frobenius(f, u, k)
    den = inv(f, mul(f, frobenius(f, s, 2 * k), inv(f, frobenius(f, s, k))))
    r = []
    for base in (None, u, u ^ 1):
        if base is None:
            r.append(den)
        else:
            num = mul(f, frobenius(f, base, 3 * k), inv(f, frobenius(f, base, k)))
            r.append(mul(f, num, den))
    return tuple(r)


def c_from_reduced(f: FieldSpec, k: int, a: int) -> int:
    """The c with c^(-1/q) = a, i.e. c = a^(-q)."""
    return inv(f, frobenius(f, a, k))


def solve_affine_form(f: FieldSpec, k: int, c: int) -> AffineSolution:
    _require_coprime(f, k)
    gf2n._check_elem(f, c)
    if c == 0:
        return AffineSolution(0, None, frozenset(), frozenset({1}))
    q = 1 << k
    qinv = gf2n.exp_inv(f, q)
    reduced_a = power(f, c, -qinv)
    cq = power(f, c, qinv)
    V_roots = roots_bruteforce(f, k, reduced_a).roots
    v_roots = frozenset(mul(f, cq, V) ^ 1 for V in V_roots)
    match = None
    if len(v_roots) == 3 and f.n % 2 == 1:
        u = recover_u(f, k, reduced_a)
        match = set(closed_form_v_roots(f, k, u)) == set(v_roots)
    return AffineSolution(c, reduced_a, V_roots, v_roots, match)


def verify_lemma(f: FieldSpec, k: int, witnesses: bool = True) -> CheckReport:
    """Root counts in {0, 1, 3} for every a != 0; with ``witnesses`` also the
    u-parameterization against brute force and the recover_u round trip for
    every admissible u."""
    _require_coprime(f, k)
    rep = CheckReport("lemma", f.n, k)
    with timed(rep):
        h = count_histogram(f, k)
        rep.details = {"histogram": h.to_dict()}
        if not h.ok:
            counts = root_counts(f, k)
            rep.fail(*np.flatnonzero(~np.isin(counts[1:], (0, 1, 3))).tolist())
        if witnesses:
            recovered: dict[int, int] = {}
            checked = 0
            for u in admissible_us(f, k):
                checked += 1
                try:
                    w = witness_from_u(f, k, u)
                except LemmaCounterexample:
                    rep.fail(u)
                    continue
                if roots_bruteforce(f, k, w.a).roots != w.roots:
                    rep.fail(u)
                    continue
                if w.a not in recovered:
                    recovered[w.a] = recover_u(f, k, w.a)
                back = witness_from_u(f, k, recovered[w.a])
                if back.a != w.a or back.roots != w.roots or recovered[w.a] > u:
                    rep.fail(u)
            rep.details.update({"admissible_u": checked, "three_root_a": len(recovered)})
    return rep
