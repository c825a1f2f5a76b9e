"""Command-line front end.

Output is ``key=value`` lines (numbers to six significant figures) plus
optional CSV/JSON artifacts.  Exit status: 0 success, 1 usage error,
2 validation error, 3 convergence failure.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import channel, coding, discrete, estimation, formats, spectral
from .errors import ConvergenceError, DomainError, InfoTheoryError
from .formats import format_number as fmt

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_CONVERGENCE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(out, **values):
    for k, v in values.items():
        if isinstance(v, (float, np.floating)):
            v = fmt(v)
        print(f"{k}={v}", file=out)


def _deliver(text: str, path, out) -> None:
    if path:
        formats.write_text(path, text)
    else:
        out.write(text)


def cmd_entropy(args, out):
    pmf = formats.load_pmf(args.pmf)
    h = discrete.entropy(pmf)
    _emit(out, H=h, equiprobable_count=discrete.equivalent_equiprobable_count(h), symbols=len(pmf), units="bits")


def cmd_joint(args, out):
    j = formats.load_joint(args.joint)
    s = discrete.information_summary(j)
    _emit(out, **s)
    _emit(
        out,
        I_from_x=s["H_x"] - s["H_x_given_y"],
        I_from_y=s["H_y"] - s["H_y_given_x"],
        identity_residual=s["H_xy"] - (s["I"] + s["H_x_given_y"] + s["H_y_given_x"]),
        units="bits",
    )


def cmd_capacity(args, out):
    spec = channel.GaussianChannelSpec(args.signal_power, args.noise_power, args.bandwidth)
    per_usage = channel.gaussian_mutual_information(spec.signal_power, spec.noise_power)
    if spec.bandwidth is None:
        _emit(out, C=per_usage, units="bits")
    else:
        _emit(out, C=channel.gaussian_capacity(spec), C_per_usage=per_usage, units="bits/s")


def cmd_dmc_capacity(args, out):
    t = formats.load_transition_matrix(args.matrix)
    res = channel.dmc_capacity(t, tol=args.tol, max_iters=args.max_iters)
    _emit(out, C=res.capacity, gap=res.gap, iterations=res.iterations, units="bits")
    for sym, p in zip(res.optimal_input.symbols, res.optimal_input.probs):
        print(f"p[{sym}]={fmt(p)}", file=out)


def cmd_huffman(args, out):
    pmf = formats.load_pmf(args.pmf)
    src = coding.SourceSpec(pmf, args.block)
    if args.block > 1:
        coding.block_code_rate(src)  # enforces the tractability bound
        pmf = coding.block_pmf(pmf, args.block)
    code = coding.build_optimal_code(pmf)

    def label(sym):
        return " ".join(map(str, sym)) if isinstance(sym, tuple) else str(sym)

    rows = [
        (label(s), code.codewords[s], len(code.codewords[s]), float(p))
        for s, p in zip(pmf.symbols, pmf.probs)
    ]
    _deliver(formats.csv_text(("symbol", "codeword", "length", "probability"), rows), args.out, out)
    rep = coding.code_report(pmf, code)
    b = args.block
    _emit(out, H=rep["H"] / b, L=rep["L"] / b, redundancy=rep["redundancy"] / b, block=b, units="digits/symbol")


def cmd_simulate(args, out):
    spec = channel.GaussianChannelSpec(args.signal_power, args.noise_power)
    x, y = estimation.simulate_additive_gaussian(
        spec, args.n, estimation.SeededStream(args.seed), workers=args.workers
    )
    _deliver(formats.samples_csv_text(x, y), args.out, out)
    if args.out:
        _emit(out, n=args.n, seed=args.seed, var_x=float(np.var(x)), var_y=float(np.var(y)))


def cmd_estimate(args, out):
    x, y = formats.read_samples_csv(args.samples)
    rep = estimation.estimator_report(
        x, y, bins=args.bins, signal_power=args.signal_power, noise_power=args.noise_power
    )
    if args.out:
        formats.write_text(args.out, json.dumps(rep, indent=2) + "\n")
    _emit(out, **rep)


def cmd_spectrum(args, out):
    sig = formats.read_signal_csv(args.signal)
    coeffs = spectral.fourier_analyze(sig)
    ps = spectral.power_spectrum(coeffs)
    rows = [(0.0, coeffs.x0**2, 0.0)] + list(
        zip(ps.frequencies.tolist(), ps.power.tolist(), ps.phase.tolist())
    )
    _deliver(formats.csv_text(("f", "S", "phase"), rows), args.out, out)
    if args.out:
        _emit(out, samples=len(sig), duration=sig.duration, mean_square=spectral.parseval_power(coeffs))


def cmd_spectral_mi(args, out):
    sp = formats.read_spectrum_csv(args.spectrum, args.bandwidth)
    _emit(out, I=spectral.spectral_mutual_information(sp), bandwidth=sp.bandwidth, units="bits/s")


def cmd_figure(args, out):
    if args.points < 2:
        raise DomainError(f"--points must be >= 2, got {args.points}")
    if args.name == "coin-entropy":
        rows = discrete.coin_entropy_curve(args.points)
        header = ("bias", "H")
    else:
        powers = np.linspace(0.0, args.max_power, args.points)
        rows = channel.capacity_curve(powers, noise_power=1.0)
        header = ("S", "C")
    _deliver(formats.csv_text(header, rows), args.out, out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="shannonkit", description="Information theory toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("entropy", help="entropy of a pmf JSON file")
    s.add_argument("pmf")
    s.set_defaults(func=cmd_entropy)

    s = sub.add_parser("joint", help="entropies and MI of a joint pmf JSON file")
    s.add_argument("joint")
    s.set_defaults(func=cmd_joint)

    s = sub.add_parser("capacity", help="Gaussian channel capacity")
    s.add_argument("--signal-power", type=float, required=True)
    s.add_argument("--noise-power", type=float, required=True)
    s.add_argument("--bandwidth", type=float, default=None)
    s.set_defaults(func=cmd_capacity)

    s = sub.add_parser("dmc-capacity", help="capacity of a discrete memoryless channel")
    s.add_argument("matrix")
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--max-iters", type=int, default=10_000)
    s.set_defaults(func=cmd_dmc_capacity)

    s = sub.add_parser("huffman", help="optimal prefix code for a pmf JSON file")
    s.add_argument("pmf")
    s.add_argument("--block", type=int, default=1)
    s.add_argument("--out", default=None, help="write the code table CSV here")
    s.set_defaults(func=cmd_huffman)

    s = sub.add_parser("simulate", help="sample an additive Gaussian channel")
    s.add_argument("--signal-power", type=float, required=True)
    s.add_argument("--noise-power", type=float, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", default=None, help="samples CSV (x,y); stdout if omitted")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("estimate", help="plug-in entropy/MI of a samples CSV")
    s.add_argument("samples")
    s.add_argument("--bins", type=int, default=64)
    s.add_argument("--signal-power", type=float, default=None)
    s.add_argument("--noise-power", type=float, default=None)
    s.add_argument("--out", default=None, help="write the JSON report here")
    s.set_defaults(func=cmd_estimate)

    s = sub.add_parser("spectrum", help="power spectrum of a signal CSV (t,x)")
    s.add_argument("signal")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("spectral-mi", help="band-limited MI of a spectrum CSV (f,S,N)")
    s.add_argument("spectrum")
    s.add_argument("--bandwidth", type=float, default=None)
    s.set_defaults(func=cmd_spectral_mi)

    s = sub.add_parser("figure", help="CSV data for the entropy and capacity curves")
    s.add_argument("name", choices=("coin-entropy", "capacity-vs-power"))
    s.add_argument("--points", type=int, default=101)
    s.add_argument("--max-power", type=float, default=100.0)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_figure)
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
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (InfoTheoryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
