"""Command-line front end.

Exit codes: 0 all checks passed, 1 a check found a counterexample,
2 usage or domain error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import discussion, equations, gf2n, kasami, power_maps
from .errors import KasamiError, NotCoprime, ParityError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    target: str | None
    n: int | None
    k: int | None
    poly: int | None
    jobs: int
    format: str
    stable: bool
    full_sweep: bool
    output: str | None


def _hex(s: str) -> int:
    try:
        return int(s, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex value: {s!r}")


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


# ---------------------------------------------------------------------------
# work items (top level so they pickle into worker processes)
# ---------------------------------------------------------------------------

ODD_ONLY = {"odd-system", "trace"}
EVEN_ONLY = {"even-facts", "discussion", "cubing", "two-to-one"}
NO_K = {"even-facts", "table1"}


def _check(target: str, f: gf2n.FieldSpec, k: int | None, full_sweep: bool):
    if target == "lemma":
        return equations.verify_lemma(f, k)
    if target == "identity":
        return kasami.verify_kasami_gold_identity(f, k)
    if target == "mcm":
        return kasami.verify_mcm_permutation(f, k)
    if target == "two-to-one":
        return kasami.verify_derivative_two_to_one(f, k)
    if target == "odd-system":
        return kasami.verify_odd_system(f, k)
    if target == "trace":
        return kasami.closed_form_trace_sweep(f, k)
    if target == "even-facts":
        return kasami.verify_even_facts(f)
    if target == "discussion":
        return discussion.verify_discussion(f, k)
    if target == "reduction":
        return discussion.verify_reduction(f, k)
    if target == "cubing":
        return kasami.verify_three_to_one_cubing(f, k)
    if target == "table1":
        return power_maps.verify_table1(f, full_sweep=True)
    if target == "kasami":
        return kasami.verify_kasami_apn(f, k, full_sweep)
    raise KasamiError(f"unknown check {target!r}")


def _run_item(item: tuple) -> dict:
    target, n, k, poly, full_sweep, stable = item
    f = gf2n.make_field(n, poly)
    return _check(target, f, k, full_sweep).to_dict(stable)


def _map(items: list[tuple], jobs: int) -> list[dict]:
    if jobs <= 1 or len(items) <= 1:
        return [_run_item(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_item, items))


def _k_values(target: str, n: int) -> list[int]:
    ks = [k for k in range(1, n) if math.gcd(k, n) == 1]
    if target == "mcm":
        ks = [k for k in ks if k % 2 == 1]
    return ks


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _field(cfg: RunConfig) -> gf2n.FieldSpec:
    if cfg.n is None:
        raise KasamiError("--n is required")
    return gf2n.make_field(cfg.n, cfg.poly)


def _need_k(cfg: RunConfig) -> int:
    if cfg.k is None:
        raise KasamiError("--k is required")
    return cfg.k


def cmd_field(cfg, args):
    f = _field(cfg)
    out = f.to_dict()
    out["trace_mask"] = gf2n.to_hex(gf2n._tables(f).trace_mask)
    if f.n % 2 == 0:
        out["epsilon"] = gf2n.to_hex(kasami.gf4_epsilon(f))
    return out, EXIT_OK


def cmd_solve(cfg, args):
    f = _field(cfg)
    k = _need_k(cfg)
    rs = equations.roots_bruteforce(f, k, args.a)
    out = rs.to_dict()
    out["n"] = f.n
    if args.a == 0:
        out["warning"] = "a = 0 lies outside the three-root lemma: roots are {0, 1}"
    elif args.witness and len(rs.roots) == 3:
        u = equations.recover_u(f, k, args.a)
        out["witness"] = equations.witness_from_u(f, k, u).to_dict()
    return out, EXIT_OK


def cmd_witness(cfg, args):
    f = _field(cfg)
    w = equations.witness_from_u(f, _need_k(cfg), args.u)
    return {"n": f.n, "k": cfg.k, **w.to_dict()}, EXIT_OK


def cmd_recover(cfg, args):
    f = _field(cfg)
    k = _need_k(cfg)
    u = equations.recover_u(f, k, args.a, cross_check=cfg.full_sweep)
    return {"n": f.n, "k": k, "witness": equations.witness_from_u(f, k, u).to_dict()}, EXIT_OK


def cmd_ddt(cfg, args):
    f = _field(cfg)
    spec = power_maps.derivative_spectrum(power_maps.PowerFunction(f, args.d), args.a)
    if cfg.format == "csv":
        return spec.to_csv(), EXIT_OK
    return {"n": f.n, "d": args.d, **spec.to_dict()}, EXIT_OK


def cmd_apn(cfg, args):
    f = _field(cfg)
    F = power_maps.PowerFunction(f, args.d)
    delta = power_maps.differential_uniformity(F, cfg.full_sweep)
    return {"n": f.n, "d": args.d, "delta": delta, "apn": delta == 2,
            "full_sweep": cfg.full_sweep}, EXIT_OK


def cmd_catalog(cfg, args):
    if cfg.n is None:
        raise KasamiError("--n is required")
    return {"n": cfg.n, "entries": [e.to_dict() for e in power_maps.catalog_table1(cfg.n)]}, EXIT_OK


def cmd_verify(cfg, args):
    f = _field(cfg)
    target = cfg.target
    if target in ODD_ONLY and f.n % 2 == 0:
        raise ParityError(f"'{target}' needs n odd, got n={f.n}")
    if target in EVEN_ONLY and f.n % 2 == 1:
        raise ParityError(f"'{target}' needs n even, got n={f.n}")
    if target in NO_K:
        ks = [None]
    elif cfg.k is not None:
        if math.gcd(cfg.k, f.n) != 1 and target != "mcm":
            raise NotCoprime(f"gcd(k={cfg.k}, n={f.n}) != 1")
        ks = [cfg.k]
    else:
        ks = _k_values(target, f.n)
    t0 = time.perf_counter()
    reports = _map([(target, f.n, k, cfg.poly, cfg.full_sweep, cfg.stable) for k in ks], cfg.jobs)
    ok = all(r["pass"] for r in reports)
    out = {"command": f"verify {target}", "n": f.n, "pass": ok, "reports": reports}
    if not cfg.stable:
        out["elapsed_ms"] = int((time.perf_counter() - t0) * 1000)
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_sweep(cfg, args):
    if not 3 <= args.n_min <= args.n_max <= gf2n.MAX_N:
        raise KasamiError(f"need 3 <= n-min <= n-max <= {gf2n.MAX_N}")
    target = cfg.target
    items = []
    for n in range(args.n_min, args.n_max + 1):
        if (target in ODD_ONLY and n % 2 == 0) or (target in EVEN_ONLY and n % 2 == 1):
            continue
        ks = [None] if target in NO_K else _k_values(target, n)
        items += [(target, n, k, cfg.poly if n == cfg.n else None, cfg.full_sweep, cfg.stable)
                  for k in ks]
    lines = _map(items, cfg.jobs)
    ok = all(r["pass"] for r in lines)
    text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in lines)
    return text, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "field": cmd_field,
    "solve": cmd_solve,
    "witness": cmd_witness,
    "recover": cmd_recover,
    "ddt": cmd_ddt,
    "apn": cmd_apn,
    "catalog": cmd_catalog,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}

VERIFY_TARGETS = ("lemma", "identity", "mcm", "two-to-one", "odd-system", "trace",
                  "even-facts", "discussion", "reduction", "cubing", "table1")
SWEEP_TARGETS = ("kasami",) + VERIFY_TARGETS


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--poly", type=_hex, help="reduction polynomial as a hex mask")
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--stable", action="store_true", help="omit timing fields")
    common.add_argument("--full-sweep", action="store_true")
    common.add_argument("-o", "--output", help="write to a file instead of stdout")

    p = argparse.ArgumentParser(prog="kasami-apn", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("field", parents=[common], help="describe GF(2^n)")
    s = sub.add_parser("solve", parents=[common], help="roots of X^(q+1)+X+a")
    s.add_argument("--a", type=_hex, required=True)
    s.add_argument("--witness", action="store_true")
    s = sub.add_parser("witness", parents=[common], help="three-root witness from u")
    s.add_argument("--u", type=_hex, required=True)
    s = sub.add_parser("recover", parents=[common], help="recover u from a")
    s.add_argument("--a", type=_hex, required=True)
    s = sub.add_parser("ddt", parents=[common], help="derivative spectrum of x^d")
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--a", type=_hex, default=1)
    s = sub.add_parser("apn", parents=[common], help="differential uniformity of x^d")
    s.add_argument("--d", type=_positive, required=True)
    sub.add_parser("catalog", parents=[common], help="known APN exponents at n")
    s = sub.add_parser("verify", parents=[common], help="exhaustive verification")
    s.add_argument("target", choices=VERIFY_TARGETS)
    s = sub.add_parser("sweep", parents=[common], help="verification over a range of n")
    s.add_argument("target", choices=SWEEP_TARGETS)
    s.add_argument("--n-min", type=int, default=3)
    s.add_argument("--n-max", type=int, default=12)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        target=getattr(args, "target", None),
        n=args.n,
        k=args.k,
        poly=args.poly,
        jobs=args.jobs,
        format=args.format,
        stable=args.stable,
        full_sweep=args.full_sweep,
        output=args.output,
    )
    try:
        out, code = COMMANDS[cfg.command](cfg, args)
    except (KasamiError, ValueError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_USAGE
    text = out if isinstance(out, str) else json.dumps(out, indent=2, sort_keys=True) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
