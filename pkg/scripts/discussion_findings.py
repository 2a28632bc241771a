"""Summarize the GF(4) discussion checks for even n (6 does not divide n).

For every coprime k and every omega' in GF(4)* this runs the branch checks on
all u outside GF(4) and prints the collected findings.
"""
import argparse
import json
import math

from kasami_apn.discussion import verify_discussion
from kasami_apn.gf2n import make_field


def main(ns):
    rows = []
    for n in ns:
        if n % 2 or n % 6 == 0:
            print(f"skip n={n}: needs n even and not divisible by 6")
            continue
        f = make_field(n)
        for k in (k for k in range(1, n) if math.gcd(k, n) == 1):
            rep = verify_discussion(f, k)
            rows.append({"n": n, "k": k, "pass": rep.passed, "cases": rep.details["cases"],
                         **rep.details["findings"]})
    for r in rows:
        print(json.dumps(r, sort_keys=True))
    return all(r["pass"] for r in rows)


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("ns", type=int, nargs="*", default=[4, 8, 10])
    raise SystemExit(0 if main(p.parse_args().ns) else 1)
