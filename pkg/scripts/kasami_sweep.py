"""Print a delta table for the Kasami exponents over a range of n.

    python scripts/kasami_sweep.py --n-max 16 --full-sweep
"""
import argparse
import math
import time
from dataclasses import dataclass

from kasami_apn.gf2n import make_field
from kasami_apn.kasami import kasami
from kasami_apn.power_maps import differential_uniformity


@dataclass
class SweepConfig:
    n_min: int = 3
    n_max: int = 14
    full_sweep: bool = False


def run(cfg: SweepConfig) -> bool:
    ok = True
    print(f"{'n':>3} {'k':>3} {'d':>12} {'delta':>6} {'ms':>8}")
    for n in range(cfg.n_min, cfg.n_max + 1):
        f = make_field(n)
        for k in range(1, n):
            if math.gcd(k, n) != 1:
                continue
            F = kasami(f, k)
            t0 = time.perf_counter()
            delta = differential_uniformity(F, cfg.full_sweep)
            ms = (time.perf_counter() - t0) * 1000
            ok &= delta == 2
            print(f"{n:>3} {k:>3} {F.d:>12} {delta:>6} {ms:>8.1f}")
    return ok


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=14)
    p.add_argument("--full-sweep", action="store_true")
    a = p.parse_args()
    raise SystemExit(0 if run(SweepConfig(a.n_min, a.n_max, a.full_sweep)) else 1)
