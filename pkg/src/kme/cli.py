"""``kme`` command line.

Exit codes: 0 success, 2 input error, 3 numeric-integrity error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import families
from .bounds import DETECTION_TOL, ProbePair, bound1, bound2, measurement_budget
from .concurrence import kme_concurrence_pure
from .files import read_probe, read_state, write_state
from .partitions import h_k, h_k_bruteforce
from .qnum import InputError, NumericIntegrityError, outer, random_product, random_pure
from .sweep import FAMILIES, PROBE_SETS, SweepSpec, run_sweep


def _f(x) -> str:
    return format(float(x), ".15g")


def _pure_from_file(path):
    kind, dims, arr = read_state(path)
    if kind == "vector":
        return arr, dims
    # accept a rank-one projector
    w, v = np.linalg.eigh(arr)
    if abs(w[-1] - 1.0) > 1e-9 or abs(np.sum(np.abs(arr) ** 2) - 1.0) > 1e-9:
        raise InputError("concurrence needs a pure state; the matrix file is mixed")
    return v[:, -1], dims


def cmd_hk(args, out):
    v = h_k_bruteforce(args.n, args.k) if args.brute_force else h_k(args.n, args.k)
    print(_f(v), file=out)


def cmd_concurrence(args, out):
    psi, dims = _pure_from_file(args.state)
    res = kme_concurrence_pure(psi, dims, args.k)
    print(_f(res.value), file=out)
    if args.report_partition:
        print(str(res.argmin_partition), file=out)


def _pair_from_files(p1, p2):
    if p2 is None:
        if isinstance(p1, ProbePair):
            return p1
        raise InputError("bound 2 needs a probe-pair file or --probe2")
    if isinstance(p1, ProbePair) or isinstance(p2, ProbePair):
        raise InputError("--probe2 must be combined with single-probe files")
    pair = ProbePair.from_sites(p1.dims, p1.x_sites, p2.x_sites)
    # explicit flips in the files must agree with the implied ones
    ProbePair(p1, p2)
    return pair


def cmd_bound(args, out):
    kind, dims, arr = read_state(args.state)
    rho = outer(arr) if kind == "vector" else arr
    p1 = read_probe(args.probe)
    p2 = read_probe(args.probe2) if args.probe2 else None
    if args.order == 1:
        if p2 is not None:
            raise InputError("--probe2 is only used with --order 2")
        probe = p1.probe_x if isinstance(p1, ProbePair) else p1
        rep = bound1(rho, probe, args.k, args.tol)
    else:
        rep = bound2(rho, _pair_from_files(p1, p2), args.k, args.tol)
    print(f"order: {rep.order}", file=out)
    print(f"k: {rep.k}", file=out)
    print("i_k_values: " + " ".join(_f(v) for v in rep.i_k_values), file=out)
    print(f"prefactor: {_f(rep.prefactor)}", file=out)
    print(f"bound_value: {_f(rep.bound_value)}", file=out)
    print(f"detected: {str(rep.detected).lower()}", file=out)


def cmd_family(args, out):
    name, n = args.name, args.n
    if name in ("w-antiw", "ghz-w"):
        p = args.a if name == "w-antiw" else args.alpha
        q = args.b if name == "w-antiw" else args.beta
        if p is None or q is None:
            need = "--a/--b" if name == "w-antiw" else "--alpha/--beta"
            raise InputError(f"family {name} needs {need}")
        make = families.make_w_antiw_mix if name == "w-antiw" else families.make_ghz_w_mix
        state, dims = make(n, p, q), (2,) * n
    elif name in ("ghz", "w", "anti-w"):
        make = {"ghz": families.make_ghz, "w": families.make_w, "anti-w": families.make_anti_w}[name]
        state, dims = make(n), (2,) * n
        if args.matrix:
            state = outer(state)
    elif name in ("random-pure", "random-product"):
        dims = tuple(args.dims) if args.dims else (2,) * n
        gen = random_pure if name == "random-pure" else random_product
        state = gen(dims, args.seed)
        if args.matrix:
            state = outer(state)
    else:
        raise InputError(f"unknown family {name!r}")
    write_state(args.out, state, dims)


def cmd_sweep(args, out):
    spec = SweepSpec(
        family=args.family,
        n=args.n,
        k=args.k,
        probes=args.probes,
        grid=args.grid,
        out=args.out,
        check_psd=args.check_psd,
        tol=args.tol,
    )
    try:
        run_sweep(spec)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from exc


def cmd_budget(args, out):
    print(" ".join(str(v) for v in measurement_budget(args.n)), file=out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kme", description=__doc__)
    p.add_argument("--tol", type=float, default=DETECTION_TOL, help="detection threshold")
    p.add_argument("--seed", type=int, default=None, help="seed for random generators")
    # same flags after the subcommand; SUPPRESS keeps them from clobbering the global values
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hk", parents=[common], help="bound-1 prefactor")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--brute-force", action="store_true")
    s.set_defaults(func=cmd_hk)

    s = sub.add_parser("concurrence", parents=[common], help="exact k-ME concurrence of a pure state")
    s.add_argument("--state", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--report-partition", action="store_true")
    s.set_defaults(func=cmd_concurrence)

    s = sub.add_parser("bound", parents=[common], help="evaluate bound 1 or bound 2")
    s.add_argument("--order", type=int, choices=(1, 2), required=True)
    s.add_argument("--state", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--probe", required=True)
    s.add_argument("--probe2")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("family", parents=[common], help="write a benchmark state file")
    s.add_argument(
        "--name",
        required=True,
        choices=("w-antiw", "ghz-w", "ghz", "w", "anti-w", "random-pure", "random-product"),
    )
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--a", type=float)
    s.add_argument("--b", type=float)
    s.add_argument("--alpha", type=float)
    s.add_argument("--beta", type=float)
    s.add_argument("--dims", type=int, nargs="+", help="local dimensions for random states")
    s.add_argument("--matrix", action="store_true", help="write pure states as projectors")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("sweep", parents=[common], help="detection sweep over a family, as CSV")
    s.add_argument("--family", required=True, choices=FAMILIES)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--probes", default="canonical", choices=PROBE_SETS)
    s.add_argument("--grid", type=int, default=101)
    s.add_argument("--out", required=True)
    s.add_argument("--check-psd", action="store_true")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("budget", parents=[common], help="measurement and observable counts")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_budget)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except NumericIntegrityError as exc:
        print(f"kme: numeric error: {exc}", file=sys.stderr)
        return 3
    except (InputError, OSError) as exc:
        print(f"kme: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
