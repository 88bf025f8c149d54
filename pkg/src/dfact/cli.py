"""Command line entry point: ``dfact <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import bijections as bij
from . import families as fam
from . import hafnian as haf
from . import identities as ids
from . import series as ser
from . import statistics as st
from .config import BOUND_ENV, BoundExceeded, RunConfig

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _orders(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        out = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--orders expects comma-separated integers, got {text!r}") from None
    if any(o < 1 for o in out):
        raise UsageError("orders must be at least 1")
    return out


def _size(args, name: str = "n") -> int:
    n = getattr(args, name, None)
    if n is None:
        n = args.opt_n
    if n is None:
        raise UsageError("a size is required (positional or --n)")
    return n


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _obj_text(obj) -> str:
    return obj.text() if hasattr(obj, "text") else str(obj)


def _obj_json(obj):
    return obj.to_json() if hasattr(obj, "to_json") else obj


# ---------------------------------------------------------------------------
# commands


def cmd_enumerate(args, cfg: RunConfig) -> int:
    n = _size(args)
    count = 0
    for obj in fam.enumerate_family(args.family, n, r=args.r, bound=cfg.bound):
        count += 1
        if cfg.fmt == "json":
            _emit(json.dumps(obj.to_json(), sort_keys=True))
        else:
            _emit(obj.text())
    _emit(f"count={count}")
    return EXIT_OK


def _verify_one(identity_id: str, n_max: int, cfg: RunConfig) -> ids.VerificationReport:
    rep = ids.verify_formula(identity_id, n_max)
    if n_max >= 2:
        rep.layers.update(ids.verify_recurrence(identity_id, n_max).layers)
    rep.layers.update(ids.verify_combinatorial(identity_id, min(n_max, cfg.bound)).layers)
    return rep


def cmd_verify(args, cfg: RunConfig) -> int:
    n_max = _size(args, "n_max")
    if n_max < 1:
        raise UsageError("n_max must be at least 1")
    targets = ids.identity_ids() if args.identity == "all" else [args.identity]
    reports = [_verify_one(t, n_max, cfg) for t in targets]
    ok = all(r.ok for r in reports)
    if cfg.fmt == "json":
        _emit(json.dumps({"seed": cfg.seed, "ok": ok, "reports": [r.to_json() for r in reports]}, sort_keys=True))
    else:
        for r in reports:
            _emit(r.to_text())
        _emit(f"seed={cfg.seed} result={'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_table(args, cfg: RunConfig) -> int:
    n = _size(args)
    stats = args.stat.split(",")
    table = st.distribution(stats[0], n, bound=cfg.bound) if len(stats) == 1 else st.joint_distribution(
        stats, n, bound=cfg.bound
    )
    if cfg.fmt == "csv":
        _emit(table.to_csv())
    elif cfg.fmt == "json":
        _emit(json.dumps(table.to_json(), sort_keys=True))
    else:
        for line in table.to_csv().splitlines():
            *vals, count = line.split(",")
            _emit(f"{' '.join(vals)}: {count}")
    return EXIT_OK


def _parse_target(family: str, raw: str):
    if family == "split-pair":
        data = json.loads(raw)
        X = frozenset((int(t[:-1]), t[-1]) for t in data["X"])
        return bij.SplitPair(X, fam.from_json(data["T0"], "increasing-ordered-tree"))
    if family == "lr-split":
        data = json.loads(raw)
        return bij.LRSplit(tuple(data["A"]), tuple(data["tau"]))
    return fam.parse_object(family, raw)


def cmd_bijection(args, cfg: RunConfig) -> int:
    d = bij.get(args.bijection)
    if args.direction == "fwd":
        obj = _parse_target(d.source, args.object)
        extra = []
        if d.needs_k:
            if args.k is None:
                raise UsageError(f"{d.id} needs --k")
            extra.append(args.k)
        if d.id == "maxrec-step":
            if args.slot is None:
                raise UsageError("maxrec-step needs --slot")
            extra.append(args.slot)
        out = d.forward(obj, *extra)
    else:
        if d.inverse is None:
            raise UsageError(f"{d.id} has no inverse")
        out = d.inverse(_parse_target(d.target, args.object))
    parts = out if isinstance(out, tuple) else (out,)
    if cfg.fmt == "json":
        payload = [_obj_json(p) for p in parts]
        _emit(json.dumps(payload[0] if len(payload) == 1 else payload, sort_keys=True))
    else:
        _emit(" ".join(_obj_text(p) if p is not None else "fixed-point" for p in parts))
    return EXIT_OK


def cmd_hafnian(args, cfg: RunConfig) -> int:
    mode = args.mode
    if mode == "check":
        return _hafnian_check(args, cfg)
    if args.input is None:
        raise UsageError(f"hafnian {mode} needs an input")
    data = json.loads(args.input)
    if mode == "constant-rows":
        value = haf.hafnian_constant_rows(data)
    elif mode == "pfaffian-constant-rows":
        value = haf.pfaffian_constant_rows(data)
    elif mode == "array":
        T = haf.UpperTriangularArray.from_rows(data)
        value = {"hafnian": haf.hafnian_bruteforce(T), "pfaffian": haf.pfaffian_bruteforce(T)}
    else:
        raise UsageError(f"unknown hafnian mode {mode!r}")
    _emit(json.dumps(value, sort_keys=True) if cfg.fmt == "json" or isinstance(value, dict) else str(value))
    return EXIT_OK


def _hafnian_check(args, cfg: RunConfig) -> int:
    """Seeded comparison of the constant-row formulas with brute force."""
    if args.input is not None and args.opt_n is None:
        try:
            args.opt_n = int(args.input)
        except ValueError:
            raise UsageError(f"hafnian check takes a size, got {args.input!r}") from None
    n = _size(args)
    rng = random.Random(cfg.seed)
    bad = None
    trials = args.trials
    for t in range(trials):
        x = [rng.randint(-9, 9) for _ in range(2 * n - 1)]
        T = haf.UpperTriangularArray.constant_rows(x)
        if haf.hafnian_constant_rows(x) != haf.hafnian_bruteforce(T) or haf.pfaffian_constant_rows(
            x
        ) != haf.pfaffian_bruteforce(T):
            bad = {"trial": t, "x": x}
            break
    ok = bad is None
    report = {"seed": cfg.seed, "n": n, "trials": trials, "ok": ok}
    if bad:
        report["witness"] = bad
    _emit(json.dumps(report, sort_keys=True))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_series(args, cfg: RunConfig) -> int:
    n_max = _size(args, "n_max")
    if n_max < 0:
        raise UsageError("n_max must be nonnegative")
    orders = _orders(args.orders)
    if args.check:
        targets = ser.gf_ids() if args.gf == "all" else [args.gf]
        reports = [ser.gf_check(g, n_max, orders) for g in targets]
        if args.gf in ("all", "G13"):
            reports.append(ser.row_polynomial_check(n_max))
        ok = all(r.ok for r in reports)
        if cfg.fmt == "json":
            _emit(json.dumps({"seed": cfg.seed, "ok": ok, "reports": [r.to_json() for r in reports]}, sort_keys=True))
        else:
            for r in reports:
                _emit(r.to_text())
            _emit(f"result={'PASS' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_FAIL
    if args.gf == "all":
        raise UsageError("'all' is only accepted with --check")
    if cfg.fmt == "json":
        _emit(ser.triangle_json(args.gf, n_max))
    else:
        _emit(ser.triangle_csv(args.gf, n_max))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", dest="opt_n", type=int, help="size (alternative to the positional)")
    common.add_argument("--bound", type=int, help=f"enumeration bound (env {BOUND_ENV}, default 6, ceiling 8)")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"))
    common.add_argument("--seed", type=int, help="seed for random weight vectors (env DFACT_SEED)")
    common.add_argument("--orders", help="truncation orders, e.g. 16,16,8")

    p = argparse.ArgumentParser(prog="dfact", description="Exact (2n-1)!! combinatorics toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list all objects of a family")
    e.add_argument("family")
    e.add_argument("n", type=int, nargs="?")
    e.add_argument("--r", type=int, help="end height for udf-bicolored")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", parents=[common], help="verify identities (or 'all')")
    v.add_argument("identity")
    v.add_argument("n_max", type=int, nargs="?")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", parents=[common], help="distribution of a statistic (comma list for joint)")
    t.add_argument("stat")
    t.add_argument("n", type=int, nargs="?")
    t.set_defaults(func=cmd_table)

    b = sub.add_parser("bijection", parents=[common], help="apply a bijection or its inverse")
    b.add_argument("bijection")
    b.add_argument("direction", choices=("fwd", "inv"))
    b.add_argument("object", help="JSON or canonical text")
    b.add_argument("--k", type=int)
    b.add_argument("--slot", type=int)
    b.set_defaults(func=cmd_bijection)

    h = sub.add_parser("hafnian", parents=[common], help="Hafnian / Pfaffian evaluation")
    h.add_argument("mode", choices=("constant-rows", "pfaffian-constant-rows", "array", "check"))
    h.add_argument("input", nargs="?", help="JSON vector or rows (a size for check)")
    h.add_argument("--trials", type=int, default=50)
    h.set_defaults(func=cmd_hafnian)

    s = sub.add_parser("series", parents=[common], help="normalized generating function triangles")
    s.add_argument("gf")
    s.add_argument("n_max", type=int, nargs="?")
    s.add_argument("--check", action="store_true", help="compare with the triangle instead of printing")
    s.set_defaults(func=cmd_series)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_env(bound=args.bound, seed=args.seed, fmt=args.fmt or "text")
        if args.orders is not None:
            cfg = RunConfig(cfg.bound, _orders(args.orders), cfg.fmt, cfg.seed)
    except (ValueError, UsageError) as exc:
        print(f"dfact: {exc}", file=sys.stderr)
        return EXIT_USAGE
    previous = os.environ.get(BOUND_ENV)
    os.environ[BOUND_ENV] = str(cfg.bound)
    try:
        return args.func(args, cfg)
    except (UsageError, BoundExceeded, KeyError, ValueError, TypeError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"dfact: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"dfact: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        if previous is None:
            os.environ.pop(BOUND_ENV, None)
        else:
            os.environ[BOUND_ENV] = previous


if __name__ == "__main__":
    sys.exit(main())
