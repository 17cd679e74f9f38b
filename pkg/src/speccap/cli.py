"""Command-line front end: parameter sweeps, curves, and plots as flat files.

Exit codes: 0 success, 1 usage or validation, 2 computation failure, 3 I/O.
Worker threads (SPECCAP_THREADS, default all cores) never change output
bytes; grid points are independent and rows are emitted in grid order.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import svgplot
from .capacity import holevo_bound, optimal_alphabet_size, optimize_priors, two_state_exact, two_state_max
from .channel import EncodingEnsemble, compute_gram, output_spectrum
from .errors import ComputationError, ValidationError
from .spectral import (
    FlatResponse,
    GaussianPeakResponse,
    load_tabulated_amplitude,
    load_tabulated_response,
    make_gaussian_basis,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTATION = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(value):
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".12g")
    return str(value)


def parse_grid(text):
    """Grid syntax: single value, comma list, or ``min:max:step`` inclusive."""
    text = text.strip()
    try:
        if ":" in text:
            pieces = text.split(":")
            if len(pieces) != 3:
                raise ValueError("expected min:max:step")
            lo, hi, step = (float(p) for p in pieces)
            if step <= 0 or hi < lo:
                raise ValueError("need step > 0 and max >= min")
            count = int(round((hi - lo) / step))
            values = [lo + k * step for k in range(count + 1)]
            if values[-1] > hi + 1e-9 * step:
                values.pop()
            return values
        return [float(piece) for piece in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from None


def parse_int_list(text):
    try:
        return [int(piece) for piece in text.strip().split(",")]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}: {exc}") from None


def _thread_count():
    raw = os.environ.get("SPECCAP_THREADS", "").strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        count = int(raw)
    except ValueError:
        raise UsageError(f"SPECCAP_THREADS must be an integer, got {raw!r}") from None
    if count < 1:
        raise UsageError("SPECCAP_THREADS must be at least 1")
    return count


def _parallel_map(fn, items):
    items = list(items)
    workers = _thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _write_csv(path, header, rows):
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise exc


def cmd_sweep(args):
    n_list = parse_int_list(args.n)
    delta_grid = parse_grid(args.delta_omega)
    if args.mode == "flat":
        if args.eta is None:
            raise UsageError("flat mode requires --eta")
        channel_grid = parse_grid(args.eta)
        header = ["n", "delta_omega", "eta"]
    else:
        if args.sigma_eta is None:
            raise UsageError("gaussian mode requires --sigma-eta")
        channel_grid = parse_grid(args.sigma_eta)
        header = ["n", "delta_omega", "sigma_eta", "p_peak"]
    header += ["post_select", "holevo_bits", "post_selected_bits", "eps_bar", "error"]
    if not n_list or not delta_grid or not channel_grid:
        raise UsageError("all sweep grids must be non-empty")

    points = [
        (n, delta, channel_value)
        for n in n_list
        for delta in delta_grid
        for channel_value in channel_grid
    ]

    def one_point(point):
        n, delta, channel_value = point
        key = [n, _fmt(delta), _fmt(channel_value)]
        if args.mode == "gaussian":
            key.append(_fmt(args.p_peak))
        key.append(int(args.post_select))
        try:
            if args.mode == "flat":
                response = FlatResponse(channel_value)
            else:
                response = GaussianPeakResponse(args.p_peak, channel_value)
            letters = make_gaussian_basis(n, delta, args.sigma_psi, args.centering)
            ensemble = EncodingEnsemble.uniform(letters)
            if args.priors == "optimized" and n >= 2:
                _, report = optimize_priors(ensemble, response)
            else:
                report = holevo_bound(compute_gram(ensemble, response))
        except (ValidationError, ComputationError) as exc:
            return key + ["", "", "", str(exc)]
        return key + [
            _fmt(report.holevo_bits),
            _fmt(report.post_selected_bits),
            _fmt(report.mean_loss),
            "",
        ]

    rows = _parallel_map(one_point, points)
    _write_csv(args.out, header, rows)
    return EXIT_OK


def cmd_optimal_n(args):
    response = GaussianPeakResponse(args.p_peak, args.sigma_eta)
    best_n, best_bits, curve = optimal_alphabet_size(
        response,
        sigma_psi=args.sigma_psi,
        spacing=args.delta_omega,
        centering=args.centering,
        n_max=args.n_max,
        post_select=args.post_select,
    )
    rows = [["curve", n, _fmt(bits)] for n, bits in curve]
    rows.append(["optimal", best_n, _fmt(best_bits)])
    _write_csv(args.out, ["kind", "n", "bits"], rows)
    return EXIT_OK


def cmd_two_state(args):
    lam_grid = parse_grid(getattr(args, "lambda"))
    if any(lam <= 0 for lam in lam_grid):
        raise UsageError("--lambda values must be positive")

    if args.emit == "exact-curve":
        delta_grid = parse_grid(args.delta)
        header = ["lambda", "delta", "capacity_bits", "error"]
        points = [(lam, delta) for lam in lam_grid for delta in delta_grid]

        def one_point(point):
            lam, delta = point
            try:
                bits = two_state_exact(delta, lam, args.p_peak)
            except (ValidationError, ComputationError) as exc:
                return [_fmt(lam), _fmt(delta), "", str(exc)]
            return [_fmt(lam), _fmt(delta), _fmt(bits), ""]

    else:
        header = ["lambda", "c_max_bits", "delta_star", "error"]
        points = list(lam_grid)

        def one_point(lam):
            try:
                bits, separation = two_state_max(lam, args.p_peak)
            except (ValidationError, ComputationError) as exc:
                return [_fmt(lam), "", "", str(exc)]
            return [_fmt(lam), _fmt(bits), _fmt(separation), ""]

    rows = _parallel_map(one_point, points)
    _write_csv(args.out, header, rows)
    return EXIT_OK


def cmd_gram_dump(args):
    if args.letters:
        if args.n is not None or args.delta_omega is not None:
            raise UsageError("give either --letters files or gaussian basis parameters, not both")
        letters = [load_tabulated_amplitude(path) for path in args.letters]
    else:
        if args.n is None or args.delta_omega is None:
            raise UsageError("need --letters files or both --n and --delta-omega")
        letters = make_gaussian_basis(args.n, args.delta_omega, args.sigma_psi, args.centering)

    channel_flags = [args.eta is not None, args.sigma_eta is not None, args.channel_file is not None]
    if sum(channel_flags) != 1:
        raise UsageError("choose exactly one channel: --eta, --sigma-eta, or --channel-file")
    if args.eta is not None:
        response = FlatResponse(args.eta)
    elif args.sigma_eta is not None:
        response = GaussianPeakResponse(args.p_peak, args.sigma_eta)
    else:
        response = load_tabulated_response(args.channel_file)

    ensemble = EncodingEnsemble.uniform(letters)
    data = compute_gram(ensemble, response)
    spectrum, _ = output_spectrum(data)

    rows = []
    for i in range(data.n):
        for j in range(data.n):
            entry = data.gram.entries[i, j]
            rows.append(["gram", i, j, _fmt(entry.real), _fmt(entry.imag)])
    for i, value in enumerate(data.survival):
        rows.append(["survival", i, "", _fmt(value), ""])
    for i, value in enumerate(data.loss):
        rows.append(["loss", i, "", _fmt(value), ""])
    for i, value in enumerate(spectrum):
        rows.append(["eigenvalue", i, "", _fmt(value), ""])
    _write_csv(args.out, ["record", "i", "j", "value_re", "value_im"], rows)
    return EXIT_OK


def _read_csv_columns(path):
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise UsageError(f"{path}: empty CSV") from None
        rows = [row for row in reader if row]
    return header, rows


def _column(header, rows, name):
    if name not in header:
        raise UsageError(f"unknown column {name!r}; available: {', '.join(header)}")
    index = header.index(name)
    values = []
    for row in rows:
        cell = row[index] if index < len(row) else ""
        if cell == "":
            values.append(None)
        else:
            try:
                values.append(float(cell))
            except ValueError:
                raise UsageError(f"column {name!r} has non-numeric cell {cell!r}") from None
    return values


def cmd_plot(args):
    header, rows = _read_csv_columns(args.input)
    xs = _column(header, rows, args.x)
    ys = _column(header, rows, args.y)
    if args.kind == "line":
        points = [(x, y) for x, y in zip(xs, ys) if x is not None and y is not None]
        if not points:
            raise UsageError("no plottable rows")
        document = svgplot.render_line(points, args.x, args.y)
    else:
        if args.value is None:
            raise UsageError("heatmap requires --value")
        vals = _column(header, rows, args.value)
        cells = [
            (x, y, v)
            for x, y, v in zip(xs, ys, vals)
            if x is not None and y is not None and v is not None
        ]
        if not cells:
            raise UsageError("no plottable rows")
        document = svgplot.render_heatmap(cells, args.x, args.y, args.value)
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        handle.write(document)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="speccap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="capacity bounds over a parameter grid")
    sweep.add_argument("--mode", choices=["flat", "gaussian"], required=True)
    sweep.add_argument("--n", required=True, help="alphabet sizes, e.g. 32 or 2,4,8")
    sweep.add_argument("--delta-omega", required=True, help="letter spacing grid (min:max:step, list, or value)")
    sweep.add_argument("--eta", help="flat transmission grid (flat mode)")
    sweep.add_argument("--sigma-eta", help="channel width grid (gaussian mode)")
    sweep.add_argument("--sigma-psi", type=float, default=1.0)
    sweep.add_argument("--p-peak", type=float, default=1.0)
    sweep.add_argument("--post-select", action="store_true")
    sweep.add_argument("--centering", choices=["zero-start", "symmetric"], default="symmetric")
    sweep.add_argument("--priors", choices=["uniform", "optimized"], default="uniform")
    sweep.add_argument("--out", required=True)
    sweep.set_defaults(func=cmd_sweep)

    optimal = sub.add_parser("optimal-n", help="best alphabet size for a gaussian channel")
    optimal.add_argument("--sigma-eta", type=float, required=True)
    optimal.add_argument("--p-peak", type=float, default=1.0)
    optimal.add_argument("--sigma-psi", type=float, default=1.0)
    optimal.add_argument("--delta-omega", type=float, required=True)
    optimal.add_argument("--n-max", type=int, required=True)
    optimal.add_argument("--post-select", action="store_true")
    optimal.add_argument("--centering", choices=["zero-start", "symmetric"], default="symmetric")
    optimal.add_argument("--out", required=True)
    optimal.set_defaults(func=cmd_optimal_n)

    two = sub.add_parser("two-state", help="exact two-letter capacity curves")
    two.add_argument("--lambda", required=True, help="width-ratio grid")
    two.add_argument("--p-peak", type=float, default=1.0)
    two.add_argument("--emit", choices=["exact-curve", "max-curve"], required=True)
    two.add_argument("--delta", default="0:10:0.1", help="separation grid for exact-curve")
    two.add_argument("--out", required=True)
    two.set_defaults(func=cmd_two_state)

    gram = sub.add_parser("gram-dump", help="inspect the modulated Gram matrix")
    gram.add_argument("--letters", action="append", help="tabulated amplitude file (repeatable)")
    gram.add_argument("--n", type=int)
    gram.add_argument("--delta-omega", type=float)
    gram.add_argument("--sigma-psi", type=float, default=1.0)
    gram.add_argument("--centering", choices=["zero-start", "symmetric"], default="symmetric")
    gram.add_argument("--eta", type=float, help="flat channel transmission")
    gram.add_argument("--sigma-eta", type=float, help="gaussian channel width")
    gram.add_argument("--p-peak", type=float, default=1.0)
    gram.add_argument("--channel-file", help="tabulated channel response file")
    gram.add_argument("--out", required=True)
    gram.set_defaults(func=cmd_gram_dump)

    plot = sub.add_parser("plot", help="render a CSV produced by this tool to SVG")
    plot.add_argument("--in", dest="input", required=True)
    plot.add_argument("--kind", choices=["line", "heatmap"], required=True)
    plot.add_argument("--x", required=True)
    plot.add_argument("--y", required=True)
    plot.add_argument("--value", help="cell value column (heatmap)")
    plot.add_argument("--out", required=True)
    plot.set_defaults(func=cmd_plot)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"speccap: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"speccap: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComputationError as exc:
        print(f"speccap: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except OSError as exc:
        print(f"speccap: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
