"""Command-line entry point: ``wreathwalk <command> [options]``.

Exit status: 0 success, 1 usage or domain error, 2 verification failure,
3 state-space capacity exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

from . import bounds, montecarlo, spectrum, walk
from .errors import CapacityError, WreathError
from .groups import WreathIndex, parse_group

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_CAPACITY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser():
    p = _Parser(prog="wreathwalk", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, kmax=None):
        sp.add_argument("--group", required=True, help="cyclic:m | symmetric:m | cayley:<path>")
        sp.add_argument("--n", type=_positive, required=True)
        sp.add_argument("--out", type=Path, help="output file (default: stdout)")
        if kmax is not None:
            sp.add_argument("--kmax", type=_positive, default=kmax)

    sp = sub.add_parser("spectrum", help="eigenvalue atoms of the transition operator")
    common(sp)

    sp = sub.add_parser("exact-scan", help="exact TV and l2 distances for k = 0..kmax")
    common(sp, kmax=20)
    sp.add_argument("--mode", choices=walk.MODES, default="rational")
    sp.add_argument("--exact-output", action="store_true", help="print rationals as num/den")

    sp = sub.add_parser("mc-scan", help="Monte Carlo fixed-point moments and coupon tails")
    common(sp, kmax=None)
    sp.add_argument("--kmax", type=_positive, help="default: ceil(2 n log n)")
    sp.add_argument("--trials", type=_positive, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=_positive, default=1)

    sp = sub.add_parser("bounds", help="closed-form bounds over k = 1..kmax")
    common(sp, kmax=None)
    sp.add_argument("--kmax", type=_positive, help="default: ceil(2 n log n) + n")
    sp.add_argument("--a-const", type=float, default=2.0, help="constant of the coupling bound")

    sp = sub.add_parser("verify", help="check the exact identities between spectrum and walk")
    common(sp, kmax=12)
    return p


def _cell(x, exact=False):
    if x is None:
        return ""
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return str(x)
    return walk.format_exact(x) if exact else walk.format_decimal(x)


def _write(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    if path is None:
        sys.stdout.write(buf.getvalue())
    else:
        path.write_text(buf.getvalue())


def cmd_spectrum(args, group):
    table = spectrum.build_full_spectrum(args.n, group)
    _write(args.out, ("value", "multiplicity", "mu", "corner"), spectrum.spectrum_rows(table))


def cmd_exact_scan(args, group):
    rows = (
        [k] + [_cell(v, args.exact_output) for v in rest]
        for k, *rest in walk.exact_scan(args.n, group, args.kmax, args.mode)
    )
    _write(args.out, walk.SCAN_HEADER, rows)


def _default_kmax(n, extra=0):
    return max(1, math.ceil(2 * n * math.log(n)) + extra) if n > 1 else 1 + extra


def cmd_mc_scan(args, group):
    kmax = args.kmax or _default_kmax(args.n)
    step = max(1, kmax // 50)
    ks = sorted(set(range(0, kmax + 1, step)) | {kmax})
    cfg = montecarlo.MCConfig(args.n, group, args.trials, kmax, args.seed & (2**64 - 1), args.workers)
    moments = [
        (m.k, _cell(m.mean), _cell(m.second_moment), _cell(m.stderr))
        for m in montecarlo.fixed_point_scan(cfg, ks)
    ]
    coupons = [
        (C, thr, _cell(p), _cell(se), _cell(b))
        for C, thr, p, se, b in montecarlo.coupon_tail_rows(
            args.n, (1, 2, 3), args.trials, cfg.seed, args.workers
        )
    ]
    _write(args.out, montecarlo.MOMENTS_HEADER, moments)
    if args.out is None:
        sys.stdout.write("\n")
        _write(None, montecarlo.COUPON_HEADER, coupons)
    else:
        _write(coupon_path(args.out), montecarlo.COUPON_HEADER, coupons)


def coupon_path(out: Path) -> Path:
    """Sibling file for the coupon table: ``runs/mc.csv`` -> ``runs/mc_coupon.csv``."""
    return out.with_name(f"{out.stem}_coupon{out.suffix}")


def cmd_bounds(args, group):
    if group.order < 2:
        raise WreathError("bounds need |G| >= 2: log(|G|-1) is undefined for the trivial group")
    if args.n < 2:
        raise WreathError("bounds need n >= 2")
    kmax = args.kmax or _default_kmax(args.n, args.n)
    rows = []
    for k in range(1, kmax + 1):
        r = bounds.bounds_row(args.n, group.order, len(group.irreps), k, args.a_const)
        rows.append([_cell(r[h]) for h in bounds.BOUNDS_HEADER])
    _write(args.out, bounds.BOUNDS_HEADER, rows)


def verify_identities(n, group, kmax=12, l2_kmax=20, projection_kmax=15):
    """Yield ``(name, ok, detail)`` for each exact identity between spectrum and walk."""
    index = WreathIndex(n, group)
    N = index.size
    table = spectrum.build_full_spectrum(n, group)
    total = table.total_multiplicity
    yield "completeness", total == N, f"sum of multiplicities {total} vs |G|^n n! = {N}"

    top = [a for a in table.atoms if a.value == 1]
    ok = len(top) == 1 and top[0].multiplicity == 1 and all(abs(a.value) <= 1 for a in table.atoms)
    yield "top-eigenvalue", ok, "eigenvalue 1 must be simple and all eigenvalues in [-1, 1]"

    m = walk.build_warp_measure(n, group)
    tt = walk.build_transpose_top_measure(n)
    sn_dists = dict(walk.evolve(tt, projection_kmax))
    trace_bad = l2_bad = proj_bad = None
    for k, d in walk.evolve(m, max(kmax, l2_kmax, projection_kmax), index=index):
        if k <= kmax and trace_bad is None:
            if spectrum.spectral_trace(table, k) != N * d.prob(index.identity_index):
                trace_bad = k
        if 1 <= k <= l2_kmax and l2_bad is None:
            if spectrum.spectral_l2_sq(table, k) != walk.l2_sq(d):
                l2_bad = k
        if k <= projection_kmax and proj_bad is None:
            proj = walk.project_to_sn(d)
            if proj != sn_dists[k]:
                diff = next(
                    i for i in range(proj.size) if proj.prob(i) != sn_dists[k].prob(i)
                )
                proj_bad = (k, diff)
            elif walk.tv_distance(d) < walk.tv_distance(sn_dists[k]):
                proj_bad = (k, "tv")
    yield "trace-moment", trace_bad is None, f"k={trace_bad}"
    yield "plancherel-l2", l2_bad is None, f"k={l2_bad}"
    detail = "" if proj_bad is None else f"k={proj_bad[0]} state={proj_bad[1]}"
    yield "projection", proj_bad is None, detail


def cmd_verify(args, group):
    failed = []
    lines = []
    for name, ok, detail in verify_identities(args.n, group, args.kmax):
        if ok:
            lines.append(f"PASS {name}")
        else:
            lines.append(f"FAIL {name}: {detail}")
            failed.append(name)
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
    if failed:
        sys.stderr.write(f"verification failed: {', '.join(failed)}\n")
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "exact-scan": cmd_exact_scan,
    "mc-scan": cmd_mc_scan,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        group = parse_group(args.group)
        status = COMMANDS[args.command](args, group)
    except CapacityError as exc:
        sys.stderr.write(f"capacity exceeded: {exc}\n")
        return EXIT_CAPACITY
    except (WreathError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK if status is None else status


if __name__ == "__main__":
    sys.exit(main())
