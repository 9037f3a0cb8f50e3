#!/usr/bin/env python3

# -*- coding: utf-8 -*-

import argparse
import logging
import math
import os
import re
import sys
from multiprocessing.pool import ThreadPool

import numpy as np
from jinja2 import TemplateError

from emit.common import SweepTable
from emit.csv.generate import generate_csv
from emit.json.generate import generate_json
from kitaev import __version__
from kitaev.complexity import StatePair, total_complexity
from kitaev.derivatives import (
    Which,
    branch_points,
    classify_phase,
    susceptibility_delta,
    susceptibility_fd,
    susceptibility_mu,
    winding_from_branch_points,
)
from kitaev.exc import (
    BoundaryAmbiguous,
    DomainError,
    InvalidParameter,
    InvalidSize,
    KitaevError,
    NoConvergence,
)
from kitaev.model import Kind, ModelParams
from kitaev.optimal_circuit import N_MAX, locality_report, sine_coefficients
from kitaev.pip2d import Pip2dParams, complexity2d, curvature2d, susceptibility2d
from kitaev.quadrature import DEFAULT_RTOL
from kitaev.quench import (
    QuenchSetup,
    complexity_timeseries,
    max_envelope,
    mode_phi_average,
    mode_time_average,
    quench_profile,
    steady_state,
)
from kitaev.sweep import SweepRange, load, parse_range
from kitaev.sweep.exc import SweepParserError

logger = logging.getLogger("kcx")

USAGE_ERROR = 2
NUMERICAL_ERROR = 3

USAGE_ERRORS = (
    SweepParserError,
    InvalidSize,
    InvalidParameter,
    DomainError,
    TemplateError,
    OSError,
)

GENERATORS = {"csv": generate_csv, "json": generate_json}

# argparse takes "-2:2:41" or "-1e-3" for an option flag
_NEGATIVE_VALUE = re.compile(r"^-(\d|\.\d|inf\b)")

# subcommands whose ranges are given as plain flags rather than --sweep
RANGE_FLAGS = ("phase-map", "susceptibility-map", "quench-series")

PAIR_FIELDS = ("mu_r", "delta_r", "mu_t", "delta_t", "delta")
QUENCH_FIELDS = ("mu_i", "delta_i", "mu_f", "delta_f", "delta")
PIP2D_FIELDS = ("mu_t", "delta", "mass")


def _protect_ranges(argv):
    return [" " + arg if _NEGATIVE_VALUE.match(arg) else arg for arg in argv]


def _range(text):
    try:
        return parse_range(text)
    except SweepParserError as e:
        raise argparse.ArgumentTypeError("bad range %r: %s" % (text.strip(), e))


class SweepAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        name, text = values
        try:
            sweep_range = parse_range(text)
        except SweepParserError as e:
            parser.error("bad sweep range %r: %s" % (text.strip(), e))
        setattr(namespace, self.dest, (name.replace("-", "_"), sweep_range))


def _workers():
    value = os.environ.get("KC_THREADS")
    if value is None:
        return os.cpu_count() or 1
    try:
        workers = int(value)
    except ValueError:
        raise InvalidParameter("KC_THREADS must be an integer, got %r" % value)
    if workers < 1:
        raise InvalidParameter("KC_THREADS must be positive, got %d" % workers)
    return workers


def _fallback(opts, name):
    value = getattr(opts, name)
    return opts.delta if value is None else value


def _chain(opts, mu, delta):
    return ModelParams(Kind(opts.kind), mu, delta, opts.L, opts.alpha)


def _pair(opts):
    return StatePair(
        _chain(opts, opts.mu_r, _fallback(opts, "delta_r")),
        _chain(opts, opts.mu_t, _fallback(opts, "delta_t")),
    )


def _quench(opts):
    return QuenchSetup(
        _chain(opts, opts.mu_i, _fallback(opts, "delta_i")),
        _chain(opts, opts.mu_f, _fallback(opts, "delta_f")),
    )


def _sweep(opts, row, columns, default, fields):
    """Evaluate `row` at every sweep point on a thread pool.

    Rows come back in sweep order whatever the worker count.
    """
    name, values = default, [getattr(opts, default)]
    if opts.sweep is not None:
        name, sweep_range = opts.sweep
        if name not in fields:
            raise InvalidParameter(
                "%s cannot sweep %s; choose one of %s"
                % (opts.command, name, ", ".join(fields))
            )
        values = [float(v) for v in sweep_range.values()]
    points = []
    for value in values:
        point = argparse.Namespace(**vars(opts))
        setattr(point, name, value)
        points.append(point)
    with ThreadPool(_workers()) as pool:
        results = pool.map(row, points)
    rows = [(value,) + tuple(result) for value, result in zip(values, results)]
    return SweepTable(opts.command, [name] + columns, rows)


def gs_row(opts):
    report = total_complexity(_pair(opts))
    return report.total, report.density


def _susceptibility(opts, pair, which):
    if opts.method == "fd":
        return susceptibility_fd(pair, which, opts.step, opts.thermodynamic), 1
    analytic = susceptibility_mu if which is Which.MU else susceptibility_delta
    try:
        return analytic(pair, opts.rtol), 1
    except NoConvergence as e:
        logger.warning(
            "no convergence at mu_t=%g delta_t=%g: %s", pair.target.mu, pair.target.delta, e
        )
        return e.partial, 0


def susceptibility_row(opts):
    return _susceptibility(opts, _pair(opts), Which(opts.which))


def susceptibility_map_row(opts):
    pair = StatePair(
        _chain(opts, opts.mu_r, _fallback(opts, "delta_r")),
        _chain(opts, opts.mu_t, opts.delta_t),
    )
    d_mu, mu_ok = _susceptibility(opts, pair, Which.MU)
    d_delta, delta_ok = _susceptibility(opts, pair, Which.DELTA)
    return d_mu, d_delta, mu_ok * delta_ok


def phase_row(opts):
    p = _chain(opts, opts.mu, opts.delta)
    try:
        label = classify_phase(p)
        winding, inside = label.winding, label.inside_points
    except BoundaryAmbiguous as e:
        logger.warning("boundary cell: %s", e)
        winding = math.nan
        inside = branch_points(p.mu, p.delta).inside() if p.kind is Kind.SHORT_RANGE else ()
    branch = math.nan
    if p.kind is Kind.SHORT_RANGE:
        try:
            branch = float(winding_from_branch_points(branch_points(p.mu, p.delta)))
        except BoundaryAmbiguous:
            pass
    return winding, "+".join(inside), branch


def quench_steady_row(opts):
    q = _quench(opts)
    phi_average = mode_phi_average(quench_profile(q).delta_theta)
    return steady_state(q), float(np.max(phi_average))


def locality_row(opts):
    report = locality_report(_pair(opts), opts.n_max, opts.epsilon)
    return report.truncation_order, report.tail_law.value, report.tail_constant


def pip2d_row(opts):
    target = Pip2dParams(opts.mu_t, opts.delta, opts.mass, opts.cutoff, opts.resolution)
    reference = Pip2dParams.vacuum_like(target)
    return (
        complexity2d(reference, target),
        susceptibility2d(target),
        curvature2d(target),
    )


def gs_table(opts):
    return _sweep(opts, gs_row, ["complexity", "density"], "mu_t", PAIR_FIELDS)


def susceptibility_table(opts):
    columns = ["susceptibility", "converged"]
    return _sweep(opts, susceptibility_row, columns, "mu_t", PAIR_FIELDS)


def _grid(opts, row, first, second, columns):
    """Evaluate `row` on the first x second grid, first-major."""
    cells = []
    for x in getattr(opts, first).values():
        for y in getattr(opts, second).values():
            cell = argparse.Namespace(**vars(opts))
            setattr(cell, first, float(x))
            setattr(cell, second, float(y))
            cells.append(cell)
    with ThreadPool(_workers()) as pool:
        results = pool.map(row, cells)
    rows = [
        (getattr(cell, first), getattr(cell, second)) + tuple(result)
        for cell, result in zip(cells, results)
    ]
    return SweepTable(opts.command, [first, second] + columns, rows)


def phase_map_table(opts):
    columns = ["winding", "inside_points", "branch_winding"]
    return _grid(opts, phase_row, "mu", "delta", columns)


def susceptibility_map_table(opts):
    columns = ["d_mu", "d_delta", "converged"]
    return _grid(opts, susceptibility_map_row, "mu_t", "delta_t", columns)


def quench_series_table(opts):
    times = None if opts.times is None else opts.times.values()
    series = complexity_timeseries(_quench(opts), times)
    rows = list(zip(series.times.tolist(), series.values.tolist()))
    meta = {"steady_state": series.steady_state}
    return SweepTable(opts.command, ["t", "complexity"], rows, meta)


def quench_modes_table(opts):
    q = _quench(opts)
    profile = quench_profile(q)
    k = profile.grid.points
    averages = mode_time_average(profile.delta_theta)
    rows = list(zip(
        k.tolist(),
        profile.delta_theta.tolist(),
        profile.energy.tolist(),
        max_envelope(q, k).tolist(),
        mode_phi_average(profile.delta_theta).tolist(),
        averages.tolist(),
    ))
    columns = ["k", "delta_theta", "energy", "max_phi", "phi_average", "phi2_average"]
    meta = {"steady_state": float(np.sum(averages))}
    return SweepTable(opts.command, columns, rows, meta)


def quench_steady_table(opts):
    columns = ["steady_state", "max_phi_average"]
    return _sweep(opts, quench_steady_row, columns, "mu_f", QUENCH_FIELDS)


def fourier_table(opts):
    if opts.sweep is not None:
        columns = ["truncation_order", "tail_law", "tail_constant"]
        return _sweep(opts, locality_row, columns, "mu_t", PAIR_FIELDS)
    pair = _pair(opts)
    spectrum = sine_coefficients(pair, opts.n_max)
    report = locality_report(pair, opts.n_max, opts.epsilon, spectrum=spectrum)
    rows = [
        (n, float(omega), float(n * abs(omega)))
        for n, omega in enumerate(spectrum.coefficients, start=1)
    ]
    meta = {
        "epsilon": opts.epsilon,
        "truncation_order": report.truncation_order,
        "tail_law": report.tail_law.value,
        "tail_constant": report.tail_constant,
    }
    return SweepTable(opts.command, ["n", "omega", "n_omega"], rows, meta)


def pip2d_table(opts):
    columns = ["density", "susceptibility", "curvature"]
    return _sweep(opts, pip2d_row, columns, "mu_t", PIP2D_FIELDS)


TABLES = {
    "gs": gs_table,
    "susceptibility": susceptibility_table,
    "susceptibility-map": susceptibility_map_table,
    "phase-map": phase_map_table,
    "quench-series": quench_series_table,
    "quench-modes": quench_modes_table,
    "quench-steady": quench_steady_table,
    "fourier": fourier_table,
    "pip2d": pip2d_table,
}


def _add_pair_options(parser):
    parser.add_argument("--mu-r", type=float, default=0.0, help="Reference chemical potential")
    parser.add_argument("--delta-r", type=float, help="Reference pairing, defaults to --delta")
    parser.add_argument("--mu-t", type=float, default=0.5, help="Target chemical potential")
    parser.add_argument("--delta-t", type=float, help="Target pairing, defaults to --delta")
    parser.add_argument("--delta", type=float, default=1.0, help="Pairing amplitude")


def _add_quench_options(parser):
    parser.add_argument("--mu-i", type=float, default=0.0, help="Pre-quench chemical potential")
    parser.add_argument("--delta-i", type=float, help="Pre-quench pairing, defaults to --delta")
    parser.add_argument("--mu-f", type=float, default=2.0, help="Post-quench chemical potential")
    parser.add_argument("--delta-f", type=float, help="Post-quench pairing, defaults to --delta")
    parser.add_argument("--delta", type=float, default=1.0, help="Pairing amplitude")


def _add_susceptibility_options(parser):
    parser.add_argument("--method", choices=["fd", "analytic"], default="fd")
    parser.add_argument("--step", type=float, default=1e-4, help="Finite-difference step")
    parser.add_argument("--rtol", type=float, default=DEFAULT_RTOL, help="Quadrature tolerance")
    parser.add_argument(
        "--thermodynamic", action="store_true", help="Difference the L -> infinity density"
    )


def _add_sweep_option(parser):
    parser.add_argument(
        "--sweep",
        nargs=2,
        metavar=("VAR", "RANGE"),
        action=SweepAction,
        help="Sweep VAR over lo:hi:steps, endpoints included",
    )


def build_parser():
    chain = argparse.ArgumentParser(add_help=False)
    chain.add_argument("--L", type=int, default=1000, help="Chain length, even")
    chain.add_argument("--kind", choices=[k.value for k in Kind], default="short")
    chain.add_argument("--alpha", type=float, help="Long-range pairing decay exponent")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("-o", "--output", default="-", help="Output file, '-' for stdout")
    output.add_argument("--format", choices=sorted(GENERATORS), default="csv")
    output.add_argument("--template", help="Template name overriding the format default")

    parser = argparse.ArgumentParser(prog="kcx")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    gs = commands.add_parser("gs", parents=[chain, output], help="Ground-state complexity")
    _add_pair_options(gs)
    _add_sweep_option(gs)

    sus = commands.add_parser(
        "susceptibility", parents=[chain, output], help="Complexity susceptibility"
    )
    _add_pair_options(sus)
    _add_sweep_option(sus)
    _add_susceptibility_options(sus)
    sus.add_argument("--which", choices=[w.value for w in Which], default="mu")

    sus_map = commands.add_parser(
        "susceptibility-map",
        parents=[chain, output],
        help="Both susceptibilities over the (mu_t, delta_t) plane",
    )
    sus_map.add_argument("--mu-r", type=float, default=0.0, help="Reference chemical potential")
    sus_map.add_argument("--delta-r", type=float, help="Reference pairing, defaults to --delta")
    sus_map.add_argument("--delta", type=float, default=1.0, help="Pairing amplitude")
    sus_map.add_argument("--mu-t", type=_range, required=True, metavar="RANGE")
    sus_map.add_argument("--delta-t", type=_range, required=True, metavar="RANGE")
    _add_susceptibility_options(sus_map)

    phase = commands.add_parser("phase-map", parents=[chain, output], help="Phase diagram")
    phase.add_argument("--mu", type=_range, required=True, metavar="RANGE")
    phase.add_argument("--delta", type=_range, required=True, metavar="RANGE")

    series = commands.add_parser(
        "quench-series", parents=[chain, output], help="Complexity after a quench"
    )
    _add_quench_options(series)
    series.add_argument("--times", type=_range, metavar="RANGE", help="Time grid")

    modes = commands.add_parser(
        "quench-modes", parents=[chain, output], help="Per-mode quench envelopes and averages"
    )
    _add_quench_options(modes)

    steady = commands.add_parser(
        "quench-steady", parents=[chain, output], help="Steady-state complexity"
    )
    _add_quench_options(steady)
    _add_sweep_option(steady)

    fourier = commands.add_parser(
        "fourier", parents=[chain, output], help="Optimal circuit locality"
    )
    _add_pair_options(fourier)
    _add_sweep_option(fourier)
    fourier.add_argument("--n-max", type=int, default=N_MAX, help="Number of sine coefficients")
    fourier.add_argument("--epsilon", type=float, default=1e-3, help="Sup-norm target")

    pip2d = commands.add_parser("pip2d", parents=[output], help="Two-dimensional p+ip")
    pip2d.add_argument("--mu-t", type=float, default=-0.5, help="Target chemical potential")
    pip2d.add_argument("--delta", type=float, default=1.0, help="Pairing amplitude")
    pip2d.add_argument("--mass", type=float, default=0.5, help="Band mass")
    pip2d.add_argument("--cutoff", type=float, help="Momentum cutoff")
    pip2d.add_argument("--resolution", type=int, default=256, help="Grid oracle nodes per axis")
    _add_sweep_option(pip2d)

    run = commands.add_parser("run", help="Run the jobs of a .sweep file")
    run.add_argument("file", help="Job file")
    return parser


def execute(opts):
    generate = GENERATORS[opts.format]
    try:
        table = TABLES[opts.command](opts)
        if opts.template:
            generate(opts.output, table, opts.template)
        else:
            generate(opts.output, table)
    except USAGE_ERRORS as e:
        logger.error("%s: %s", opts.command, e)
        return USAGE_ERROR
    except KitaevError as e:
        logger.error("%s failed: %s", opts.command, e)
        return NUMERICAL_ERROR
    return 0


def _job_argv(job):
    argv = [job.command]
    for name, value in job.settings.items():
        flag = "--" + name.replace("_", "-")
        if isinstance(value, SweepRange):
            if job.command in RANGE_FLAGS:
                argv += [flag, str(value)]
            else:
                argv += ["--sweep", name, str(value)]
        elif isinstance(value, bool):
            if value:
                argv.append(flag)
        else:
            argv += [flag, str(value)]
    return argv


def _parse(parser, argv):
    try:
        return parser.parse_args(_protect_ranges(argv)), 0
    except SystemExit as e:
        return None, e.code


def run_jobs(parser, path):
    try:
        jobs = load(path)
    except (SweepParserError, OSError) as e:
        logger.error("cannot load %s: %s", path, e)
        return USAGE_ERROR
    for job in jobs:
        if job.command == "run":
            logger.error("job at line %d: run jobs cannot nest", job.lineno)
            return USAGE_ERROR
        opts, code = _parse(parser, _job_argv(job))
        if opts is None:
            logger.error("job at line %d has bad settings", job.lineno)
            return code
        logger.debug("job %s at line %d", job.command, job.lineno)
        code = execute(opts)
        if code:
            return code
    return 0


def main(argv=None):
    parser = build_parser()
    opts, code = _parse(parser, sys.argv[1:] if argv is None else list(argv))
    if opts is None:
        return code
    logging.basicConfig(
        level=logging.DEBUG if opts.verbose else logging.WARNING,
        format="%(levelname)s:%(name)s: %(message)s",
    )
    if opts.command == "run":
        return run_jobs(parser, opts.file)
    return execute(opts)


if __name__ == "__main__":
    sys.exit(main())
