import math

import pytest
from hypothesis import HealthCheck, settings

from kasami_apn.gf2n import make_field

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


# Schoolbook arithmetic used as an oracle: shares no code with the package.
def naive_mul(a, b, poly, n):
    r = 0
    for i in range(n):
        if (b >> i) & 1:
            r ^= a << i
    for deg in range(2 * n - 2, n - 1, -1):
        if (r >> deg) & 1:
            r ^= poly << (deg - n)
    return r


def naive_pow(a, e, poly, n):
    r = 1
    for _ in range(e):
        r = naive_mul(r, a, poly, n)
    return r


def naive_irreducible(poly):
    """No factor of degree 1..n//2 by trial division."""
    n = poly.bit_length() - 1
    for d in range(2, 1 << (n // 2 + 1)):
        # long division of poly by d
        r = poly
        dd = d.bit_length() - 1
        while r and r.bit_length() - 1 >= dd:
            r ^= d << (r.bit_length() - 1 - dd)
        if r == 0:
            return False
    return True


def coprime_ks(n):
    return [k for k in range(1, n) if math.gcd(k, n) == 1]


@pytest.fixture
def gf8():
    return make_field(3)


@pytest.fixture
def gf16():
    return make_field(4)
