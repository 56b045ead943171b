"""Command-line front end.

    sstdist table [--mode general|qli] [--code c1.code] [--ebn0 0,1,...]
    sstdist dist (--eps 0.05 | --ebn0 3)
    sstdist poly
    sstdist verify
    sstdist simulate [--kind binary|mixture|both] [--samples N] [--seed S]
    sstdist inequality

Exit status is 0 when every check passes, 1 when a check fails and 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from sstdist.channel import ebn0_to_point
from sstdist.code import CODE_DIR_ENV, CodeSpec, load_code, taps_for_mode
from sstdist.dist import joint_dist, joint_poly, lemma1_residuals, marginal_poly
from sstdist.entropy import (
    EntropyRow,
    branch_gap,
    branch_mixture,
    build_table,
    cov_branch,
    cov_z,
    gauss_bound_2d,
    inequality_check,
    mixture_entropy_1d,
    mixture_entropy_2d,
    table_to_csv,
    z_mixture,
)
from sstdist.gf2 import NotAnInverse, verify_inverse
from sstdist.mc import simulate_binary, simulate_mixture

DEFAULT_EBN0 = tuple(float(x) for x in range(11))
COMMANDS = ("table", "dist", "poly", "verify", "simulate", "inequality")


def _ebn0_list(text: str) -> list[float]:
    return [float(t) for t in text.replace(",", " ").split()]


def _precision(text: str) -> Optional[int]:
    if text == "full":
        return None
    p = int(text)
    if p < 0:
        raise argparse.ArgumentTypeError("precision must be non-negative")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--code", default="c1.code", help=f"code config path or name (searched in ${CODE_DIR_ENV})")
    common.add_argument("--mode", choices=("general", "qli"), default="general")
    common.add_argument("--ebn0", type=_ebn0_list, default=None, help="comma-separated Eb/N0 values in dB")
    common.add_argument("--rate", type=float, default=None, help="code rate (default k0/n0)")
    common.add_argument("--output", choices=("csv", "pretty"), default="pretty")
    common.add_argument("--precision", type=_precision, default=4, help="decimals, or 'full'")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="sstdist", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("table", parents=[common], help="entropy-gap table")
    d = sub.add_parser("dist", parents=[common], help="exact branch distribution")
    d.add_argument("--eps", type=float, default=None)
    sub.add_parser("poly", parents=[common], help="joint-one probability as a polynomial in eps")
    sub.add_parser("verify", parents=[common], help="run the exact consistency checks")
    s = sub.add_parser("simulate", parents=[common], help="Monte Carlo validation")
    s.add_argument("--kind", choices=("binary", "mixture", "both"), default="both")
    s.add_argument("--eps", type=float, default=None, help="crossover probability for the binary simulator")
    s.add_argument("--samples", type=int, default=10**6)
    s.add_argument("--seed", type=int, default=20240601)
    sub.add_parser("inequality", parents=[common], help="compare general and QLI totals row by row")
    return p


def _fmt(x: float, precision: Optional[int]) -> str:
    return repr(float(x)) if precision is None else f"{x:.{precision}f}"


def _fmt_eps(eps: float) -> str:
    # 4 decimals, or 3 significant figures once that shows fewer digits
    return f"{eps:.4f}" if eps >= 0.01 else f"{eps:#.3g}"


def _pretty_table(rows: Sequence[EntropyRow], mode: str, precision: Optional[int]) -> str:
    h = "H_eta" if mode == "qli" else "H_r"
    corr = "Delta~" if mode == "qli" else "Delta"
    head = ["Eb/N0(dB)", "c", "eps", f"{h}(1)", f"{h}(2)", corr, "total"]
    body = []
    for r in rows:
        if precision is None:
            c, eps = repr(r.c), repr(r.eps)
        else:
            c, eps = f"{r.c:.3f}", _fmt_eps(r.eps)
        body.append([f"{r.ebn0_db:g}", c, eps] + [_fmt(x, precision) for x in (r.h1, r.h2, r.corr, r.total)])
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    lines = ["  ".join(x.rjust(w) for x, w in zip(line, widths)) for line in [head] + body]
    return "\n".join(lines) + "\n"


def cmd_table(args, code: CodeSpec) -> tuple[int, str]:
    rows = build_table(code, args.mode, args.ebn0_list, args.rate)
    if args.output == "csv":
        return 0, table_to_csv(rows, args.precision)
    return 0, _pretty_table(rows, args.mode, args.precision)


def cmd_dist(args, code: CodeSpec) -> tuple[int, str]:
    if args.eps is not None and args.ebn0 is not None:
        raise ValueError("--eps and --ebn0 are mutually exclusive")
    t1, t2 = taps_for_mode(code, args.mode)
    if args.eps is not None:
        points = [("", args.eps)]
    else:
        points = [(f"{db:g}", ebn0_to_point(db, args.rate or code.rate).eps) for db in args.ebn0_list]
    keys = ("a1", "a2", "a00", "a01", "a10", "a11", "delta")
    lines = [",".join(("ebn0_db", "eps") + keys)]
    for db, eps in points:
        b = joint_dist(t1, t2, eps)
        lines.append(",".join([db, repr(eps)] + [_fmt(getattr(b, k), args.precision) for k in keys]))
    return 0, "\n".join(lines) + "\n"


def cmd_poly(args, code: CodeSpec) -> tuple[int, str]:
    t1, t2 = taps_for_mode(code, args.mode)
    joint = joint_poly(t1, t2)
    if args.output == "csv":
        return 0, f"{joint}\n"
    return 0, (
        f"P(v1=1)      : {marginal_poly(t1)}\n"
        f"P(v2=1)      : {marginal_poly(t2)}\n"
        f"P(v1=1,v2=1) : {joint}\n"
    )


def _verify_checks(code: CodeSpec, ebn0: Sequence[float], rate: Optional[float]):
    """Yield ``(name, ok, detail)`` for every exact consistency check."""
    try:
        tau = verify_inverse(code.G, code.Ginv)
        yield "inverse G*Ginv = D^tau I", True, f"tau={tau}"
    except NotAnInverse as exc:
        yield "inverse G*Ginv = D^tau I", False, str(exc)
    modes = ["general"] + (["qli"] if code.is_qli else [])
    for mode in modes:
        t1, t2 = taps_for_mode(code, mode)
        cov_spread = 0.0
        bound_slack = math.inf
        sub_slack = math.inf
        decomp_err = 0.0
        for db in ebn0:
            pt = ebn0_to_point(db, rate or code.rate)
            b = joint_dist(t1, t2, pt.eps)
            res = lemma1_residuals(b)
            cov_spread = max(cov_spread, max(res) - min(res))
            mix = branch_mixture(b, pt.c)
            h_mix = mixture_entropy_2d(mix)
            bound_slack = min(bound_slack, gauss_bound_2d(cov_branch(b, pt.c)) + 1e-5 - h_mix)
            h_marg = mixture_entropy_1d(b.a1, pt.c) + mixture_entropy_1d(b.a2, pt.c)
            sub_slack = min(sub_slack, h_marg + 1e-5 - h_mix)
            gap = branch_gap(b, pt.c)
            diff = gauss_bound_2d(cov_z(pt.c)) - gauss_bound_2d(cov_branch(b, pt.c))
            decomp_err = max(decomp_err, abs(gap.total - diff))
        yield f"[{mode}] covariance identities agree", cov_spread <= 1e-12, f"max spread {cov_spread:.2e}"
        yield f"[{mode}] mixture entropy <= Gaussian bound", bound_slack >= 0, f"min slack {bound_slack:.3e}"
        yield f"[{mode}] subadditivity H[r1,r2] <= H[r1]+H[r2]", sub_slack >= 0, f"min slack {sub_slack:.3e}"
        yield f"[{mode}] gap decomposition exact", decomp_err <= 1e-12, f"max error {decomp_err:.2e}"
    bound_slack = math.inf
    for db in ebn0:
        c = ebn0_to_point(db, rate or code.rate).c
        bound_slack = min(bound_slack, gauss_bound_2d(cov_z(c)) + 1e-5 - mixture_entropy_2d(z_mixture(c)))
    yield "[z] mixture entropy <= Gaussian bound", bound_slack >= 0, f"min slack {bound_slack:.3e}"


def cmd_verify(args, code: CodeSpec) -> tuple[int, str]:
    lines = []
    status = 0
    for name, ok, detail in _verify_checks(code, args.ebn0_list, args.rate):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
        status |= not ok
    return int(status), "\n".join(lines) + "\n"


def cmd_simulate(args, code: CodeSpec) -> tuple[int, str]:
    if args.ebn0 is not None and len(args.ebn0) != 1:
        raise ValueError("simulate takes a single --ebn0 value")
    pt = ebn0_to_point(args.ebn0[0] if args.ebn0 else 3.0, args.rate or code.rate)
    lines = []
    status = 0
    if args.kind in ("binary", "both"):
        eps = pt.eps if args.eps is None else args.eps
        rep = simulate_binary(code, args.mode, eps, args.samples, args.seed)
        lines.append(f"binary [{args.mode}] eps={eps!r}")
        lines += rep.lines()
        status |= not rep.passed
    if args.kind in ("mixture", "both"):
        b = joint_dist(*taps_for_mode(code, args.mode), pt.eps)
        rep = simulate_mixture(b, pt.c, args.samples, args.seed)
        lines.append(f"mixture [{args.mode}] Eb/N0={pt.ebn0_db:g} dB c={pt.c!r}")
        lines += rep.lines()
        status |= not rep.passed
    return int(status), "\n".join(lines) + "\n"


def cmd_inequality(args, code: CodeSpec) -> tuple[int, str]:
    rows_g = build_table(code, "general", args.ebn0_list, args.rate)
    rows_q = build_table(code, "qli", args.ebn0_list, args.rate)
    lines = ["ebn0_db,general_total,qli_total,holds"]
    status = 0
    for g, q in zip(rows_g, rows_q):
        ok = inequality_check(g, q)
        status |= not ok
        lines.append(f"{g.ebn0_db:g},{_fmt(g.total, args.precision)},{_fmt(q.total, args.precision)},{'true' if ok else 'false'}")
    return int(status), "\n".join(lines) + "\n"


HANDLERS = {
    "table": cmd_table,
    "dist": cmd_dist,
    "poly": cmd_poly,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
    "inequality": cmd_inequality,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    args.ebn0_list = DEFAULT_EBN0 if args.ebn0 is None else args.ebn0
    try:
        code = load_code(args.code)
        status, text = HANDLERS[args.command](args, code)
    except (ValueError, FileNotFoundError) as exc:
        print(f"sstdist: error: {exc}", file=stderr)
        return 2
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
