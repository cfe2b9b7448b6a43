"""Command line interface: ``chirogrid <command> [options]``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import experiments as ex
from .chirotope import chirotope_diff, compute_chirotope, format_chirotope, parse_chirotope
from .grid import EncodedConfig, GridSpec, decode, encode, grid_from_params, round_config
from .sampling import SamplerConfig, format_config, load_config, sample_config


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _grid(args, n, d) -> GridSpec:
    if args.M is not None:
        return GridSpec(args.M)
    return grid_from_params(n, d, args.eps)


def cmd_sample(args):
    cfg = SamplerConfig(args.domain, args.d, args.n, args.bits, args.seed)
    _emit(format_config(sample_config(cfg)), args.out)


def cmd_round(args):
    S = load_config(args.input)
    _emit(format_config(round_config(S, _grid(args, S.n, S.d))), args.out)


def cmd_chirotope(args):
    _emit(format_chirotope(compute_chirotope(load_config(args.input))), args.out)


def _load_chirotope(path):
    text = Path(path).read_text()
    if text.lstrip().startswith("pointset"):
        return compute_chirotope(load_config(path))
    return parse_chirotope(text)


def cmd_compare(args):
    diff = chirotope_diff(_load_chirotope(args.a), _load_chirotope(args.b))
    lines = [" ".join(map(str, x.subset)) + f" {x.sign_a.symbol} {x.sign_b.symbol} {x.kind}" for x in diff]
    _emit("".join(ln + "\n" for ln in lines), args.out)
    return 1 if diff else 0


def cmd_encode(args):
    S = load_config(args.input)
    e = encode(S, _grid(args, S.n, S.d))
    data = e.to_bytes()
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    print(f"width={e.width} payload_bits={e.payload_bits} total_bits={8 * len(data)}", file=sys.stderr)


def cmd_decode(args):
    data = Path(args.input).read_bytes() if args.input != "-" else sys.stdin.buffer.read()
    _emit(format_config(decode(EncodedConfig.from_bytes(data))), args.out)


def cmd_bound(args):
    s = ex.success_lower_bound(args.n, args.d, args.eps)
    b = ex.per_event_bound(args.d, s.M)
    _emit(
        f"M={s.M}\nper_event_paper={b.paper!r}\nper_event_simplified={b.simplified!r}\n"
        f"per_event_exact={b.exact!r}\nsuccess_paper={s.paper!r}\nsuccess_exact={s.exact!r}\n",
        args.out,
    )


def cmd_theorem(args):
    params = ex.ExperimentParams(args.n, args.d, args.eps, args.trials, args.seed, args.domain, args.bits)
    summary = ex.run_theorem_experiment(params, args.workers)
    if args.records:
        Path(args.records).write_text("".join(r.to_json() + "\n" for r in summary.records))
    if args.csv:
        Path(args.csv).write_text(ex.ExperimentSummary.CSV_COLUMNS + "\n" + summary.csv_row() + "\n")
    _emit(summary.to_json() + "\n", args.out)


def cmd_per_event(args):
    M = args.M if args.M is not None else grid_from_params(args.n, args.d, args.eps).M
    est = ex.estimate_per_event(args.d, M, args.samples, args.seed, args.workers, args.bits)
    b = ex.per_event_bound(args.d, M)
    lo, hi = est.wilson()
    _emit(
        f'{{"d": {args.d}, "M": {M}, "samples": {est.samples}, "hits": {est.hits}, '
        f'"freq": {est.freq!r}, "wilson_lo": {lo!r}, "wilson_hi": {hi!r}, "resampled": {est.resampled}, '
        f'"bound_paper": {b.paper!r}, "bound_simplified": {b.simplified!r}, "bound_exact": {b.exact!r}}}\n',
        args.out,
    )


def cmd_lemma1(args):
    r = ex.lemma1_falsify(args.d, args.trials, args.seed)
    lines = [f"trials={r.trials} counterexamples={r.counterexamples}"]
    lines += [f"trial {i}: meets {' '.join(cells)}" for i, cells in r.witnesses]
    _emit("\n".join(lines) + "\n", args.out)
    return 1 if r.counterexamples else 0


def cmd_lemma2(args):
    M = args.M if args.M is not None else 1000
    r = ex.lemma2_property_run(args.d, args.trials, M, args.seed, args.bits)
    _emit(f"trials={r.trials} certified={r.certified} violations={r.violations}\n", args.out)
    return 1 if r.violations else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=32)
    common.add_argument("--d", type=int, default=2)
    common.add_argument("--eps", type=Fraction, default=Fraction(1, 2))
    common.add_argument("--M", type=int, default=None, help="grid denominator (overrides --eps)")
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--domain", choices=["ball", "cube"], default="ball")
    common.add_argument("--bits", type=int, default=96, help="dyadic sampling precision")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", default=None)

    p = argparse.ArgumentParser(prog="chirogrid", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, parent=sub, **kw):
        sp = parent.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    add("sample", cmd_sample, help="sample a point set")
    add("round", cmd_round, help="round a point set to the grid").add_argument("input")
    add("chirotope", cmd_chirotope, help="print the chirotope of a point set").add_argument("input")
    sp = add("compare", cmd_compare, help="diff two chirotopes or point sets")
    sp.add_argument("a")
    sp.add_argument("b")
    add("encode", cmd_encode, help="binary-encode a grid point set").add_argument("input")
    add("decode", cmd_decode, help="decode a binary point set").add_argument("input")
    add("bound", cmd_bound, help="closed-form success and per-event bounds")

    exp = sub.add_parser("experiment").add_subparsers(dest="experiment", required=True)
    sp = add("theorem", cmd_theorem, exp, help="grid-rounding Monte Carlo")
    sp.add_argument("--records", default=None, help="write TrialRecords as JSON lines")
    sp.add_argument("--csv", default=None, help="write the summary as CSV")
    add("per-event", cmd_per_event, exp, help="per-event slab frequency").add_argument(
        "--samples", type=int, default=100_000)

    ver = sub.add_parser("verify").add_subparsers(dest="lemma", required=True)
    add("lemma1", cmd_lemma1, ver, help="search for full R/S transversals")
    add("lemma2", cmd_lemma2, ver, help="certificate soundness under rounding")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args) or 0


if __name__ == "__main__":
    sys.exit(main())
