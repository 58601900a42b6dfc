"""Command-line driver for the multigrid solvers.

Runs one solve per invocation and prints a one-line summary, or emits
the full report as CSV/JSON, or runs a multi-resolution study.  The
summary-line formats are a stable contract (regular expressions in the
README); WU is printed with 2 decimals, the solution norm with 6
decimals, the numerical error in scientific notation with 5 significant
digits.

Exit codes: 0 converged, 2 cycle budget exhausted (the normal outcome
of rtol=0 verification runs), 3 divergence (e^w overflow), 64 bad
arguments.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, replace

from .cycles import (CycleParams, SolveReport, SolverParams, fas_fcycle,
                     fas_solver, ngs_only)
from .diagnostics import fit_rate, norm_l2
from .mesh import build_hierarchy
from .problem import (DivergenceError, MeshFunction, ProblemParams,
                      SourceMode, mms_exact)
from .smoother import SmootherParams
from .transfer import RestrictionKind

__all__ = ['RunConfig', 'run', 'study_convergence', 'study_performance',
           'main', 'EXIT_CONVERGED', 'EXIT_CYCLEMAX', 'EXIT_DIVERGED',
           'EXIT_USAGE']

EXIT_CONVERGED = 0
EXIT_CYCLEMAX = 2
EXIT_DIVERGED = 3
EXIT_USAGE = 64


@dataclass(frozen=True)
class RunConfig:
    """Everything one solver run needs; mirrors the CLI flags."""

    K: int = 2
    m0: int = 2
    lam: float = 1.0
    mms: bool = False
    fcycle: bool = False
    ngsonly: bool = False
    down: int = 1
    up: int = 1
    coarse: int = 1
    niters: int = 2
    rtol: float = 1e-4
    cyclemax: int = 100
    restriction: RestrictionKind = RestrictionKind.FULL_WEIGHTING
    fmt: str = 'text'
    show: bool = False


def _problem_params(config: RunConfig) -> ProblemParams:
    source = SourceMode.MMS if config.mms else SourceMode.ZERO
    return ProblemParams(lam=config.lam, source=source)


def _execute(config: RunConfig) -> SolveReport:
    """Build the hierarchy and run the solver selected by config."""
    if config.fcycle and config.ngsonly:
        raise ValueError('-fcycle and -ngsonly are mutually exclusive')
    hier = build_hierarchy(config.m0, config.K)
    pp = _problem_params(config)
    sp = SolverParams(rtol=config.rtol, cyclemax=config.cyclemax)
    if config.ngsonly:
        w = MeshFunction.zeros(hier.finest)
        smp = SmootherParams(niters=config.niters, lam=config.lam)
        return ngs_only(w, sp, smp, pp)
    cp = CycleParams(down=config.down, up=config.up, coarse=config.coarse,
                     restriction=config.restriction, niters=config.niters)
    if config.fcycle:
        return fas_fcycle(hier, sp, cp, pp)
    w = MeshFunction.zeros(hier.finest)
    return fas_solver(w, sp, cp, pp)


def _summary_line(config: RunConfig, report: SolveReport) -> str:
    m = report.solution.level.m
    h = report.solution.level.h
    unorm = norm_l2(report.solution.values, h)
    if config.ngsonly:
        head = 'm=%d mesh, %d NGS sweeps' % (m, report.cycles_run)
    elif config.fcycle:
        head = 'm=%d mesh, F-cycle+%d V(%d,%d) cycles' \
               % (m, report.cycles_run, config.down, config.up)
    else:
        head = 'm=%d mesh, %d V(%d,%d) cycles' \
               % (m, report.cycles_run, config.down, config.up)
    line = '%s (%.2f WU): |u|_2=%.6f' % (head, report.work_units, unorm)
    if report.error_norm is not None:
        line += ' |u-u_ex|_2=%.4e' % report.error_norm
    return line


CSV_HEADER = 'm,h,cycles,wu,residual0,residualN,error'


def _csv_lines(report: SolveReport):
    err = '' if report.error_norm is None else repr(report.error_norm)
    row = '%d,%s,%d,%s,%s,%s,%s' % (
        report.solution.level.m, repr(report.solution.level.h),
        report.cycles_run, repr(report.work_units),
        repr(report.residual0), repr(report.residual_final), err)
    return [CSV_HEADER, row]


def _json_object(report: SolveReport) -> dict:
    return {
        'm': report.solution.level.m,
        'h': report.solution.level.h,
        'cycles_run': report.cycles_run,
        'work_units': report.work_units,
        'residual_history': list(report.residual_history),
        'converged': report.converged,
        'error_norm': report.error_norm,
        'solution': report.solution.values.tolist(),
    }


def _show_lines(config: RunConfig, report: SolveReport):
    x = report.solution.level.interior_x()
    w = report.solution.values
    if config.mms:
        yield '# x w u_exact'
        ue = mms_exact(x)
        for xi, wi, ui in zip(x, w, ue):
            yield '%.16e %.16e %.16e' % (xi, wi, ui)
    else:
        yield '# x w'
        for xi, wi in zip(x, w):
            yield '%.16e %.16e' % (xi, wi)


def run(config: RunConfig, out=None, err=None) -> int:
    """Execute one configured solve, stream the report, and return the
    exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        report = _execute(config)
    except ValueError as exc:
        print('error: %s' % exc, file=err)
        return EXIT_USAGE
    except DivergenceError as exc:
        print('diverged: %s' % exc, file=err)
        return EXIT_DIVERGED
    if config.fmt == 'csv':
        for line in _csv_lines(report):
            print(line, file=out)
    elif config.fmt == 'json':
        print(json.dumps(_json_object(report)), file=out)
    else:
        print(_summary_line(config, report), file=out)
    if config.show:
        for line in _show_lines(config, report):
            print(line, file=out)
    return EXIT_CONVERGED if report.converged else EXIT_CYCLEMAX


def study_convergence(Ks, config: RunConfig):
    """Solve the manufactured problem at each hierarchy depth with a
    fixed cycle budget and collect (K, m, h, error, wu) rows, plus the
    fitted log-log rate when three or more rows succeeded.

    Returns (rows, slope); failed depths produce a row with error None
    and do not stop the remaining depths.
    """
    rows = []
    for K in Ks:
        cfg = replace(config, K=K, mms=True, rtol=0.0, fmt='text',
                      show=False)
        try:
            report = _execute(cfg)
            rows.append({'K': K, 'm': report.solution.level.m,
                         'h': report.solution.level.h,
                         'error': report.error_norm,
                         'wu': report.work_units})
        except (DivergenceError, ValueError) as exc:
            rows.append({'K': K, 'm': config.m0 * 2 ** K,
                         'h': 1.0 / (config.m0 * 2 ** K),
                         'error': None, 'wu': None, 'failed': str(exc)})
    good = [(r['h'], r['error']) for r in rows
            if r.get('error') is not None and r['error'] > 0.0]
    slope = fit_rate(good).slope if len(good) >= 3 else None
    return rows, slope


# solver variants compared by the performance study
VARIANTS = ('fcycle', 'vcycles', 'ngsonly')


def _time_run(config: RunConfig):
    t0 = time.perf_counter()
    report = _execute(config)
    return report, time.perf_counter() - t0


def study_performance(Ks, variants, config: RunConfig,
                      timecap: float = 100.0, ngs_z0: int = 100):
    """Time each solver variant at each depth.

    fcycle is an F-cycle plus V(1,0) cycles to a 3-cycle total; vcycles
    is 12 V(1,1) cycles; ngsonly doubles its sweep budget, starting from
    ngs_z0, until the error is within twice the discretization error
    reported by the V-cycle variant or the time cap is hit.  Returns one
    row per (K, variant) with wall time, work units, error, and a
    completed flag (time-capped ngsonly rows are flagged, not fatal).
    """
    for v in variants:
        if v not in VARIANTS:
            raise ValueError('unknown variant %r' % (v,))
    rows = []
    for K in Ks:
        base = replace(config, K=K, mms=True, rtol=0.0, fmt='text',
                       show=False, fcycle=False, ngsonly=False)
        vconf = replace(base, cyclemax=12, down=1, up=1)
        vreport, vtime = _time_run(vconf)
        ref_error = vreport.error_norm
        if 'vcycles' in variants:
            rows.append({'K': K, 'm': vreport.solution.level.m,
                         'variant': 'vcycles', 'time': vtime,
                         'wu': vreport.work_units, 'error': ref_error,
                         'completed': True})
        if 'fcycle' in variants:
            fconf = replace(base, fcycle=True, cyclemax=3, down=1, up=0)
            freport, ftime = _time_run(fconf)
            rows.append({'K': K, 'm': freport.solution.level.m,
                         'variant': 'fcycle', 'time': ftime,
                         'wu': freport.work_units,
                         'error': freport.error_norm, 'completed': True})
        if 'ngsonly' in variants:
            z = ngs_z0
            while True:
                nconf = replace(base, ngsonly=True, cyclemax=z)
                nreport, ntime = _time_run(nconf)
                done = nreport.error_norm <= 2.0 * ref_error
                if done or ntime > timecap:
                    rows.append({'K': K, 'm': nreport.solution.level.m,
                                 'variant': 'ngsonly', 'time': ntime,
                                 'wu': nreport.work_units,
                                 'error': nreport.error_norm,
                                 'completed': done})
                    break
                z *= 2
    return rows


def _print_convergence(rows, slope, fmt, out):
    if fmt == 'csv':
        print('K,m,h,error,wu', file=out)
        for r in rows:
            err = '' if r.get('error') is None else repr(r['error'])
            wu = '' if r.get('wu') is None else '%.2f' % r['wu']
            print('%d,%d,%s,%s,%s'
                  % (r['K'], r['m'], repr(r['h']), err, wu), file=out)
        if slope is not None:
            print('# slope=%.4f' % slope, file=out)
    elif fmt == 'json':
        print(json.dumps({'rows': rows, 'slope': slope}), file=out)
    else:
        print('%3s %8s %12s %14s %10s' % ('K', 'm', 'h', 'error', 'WU'),
              file=out)
        for r in rows:
            if r.get('error') is None:
                print('%3d %8d %12.6e %14s %10s'
                      % (r['K'], r['m'], r['h'],
                         'failed', '-'), file=out)
            else:
                print('%3d %8d %12.6e %14.6e %10.2f'
                      % (r['K'], r['m'], r['h'], r['error'], r['wu']),
                      file=out)
        if slope is not None:
            print('fitted rate: error = O(h^%.3f)' % slope, file=out)


def _print_performance(rows, fmt, out):
    if fmt == 'csv':
        print('K,m,variant,time,wu,error,completed', file=out)
        for r in rows:
            print('%d,%d,%s,%s,%s,%s,%s'
                  % (r['K'], r['m'], r['variant'], repr(r['time']),
                     repr(r['wu']), repr(r['error']),
                     int(r['completed'])), file=out)
    elif fmt == 'json':
        print(json.dumps({'rows': rows}), file=out)
    else:
        print('%3s %8s %9s %10s %10s %14s %s'
              % ('K', 'm', 'variant', 'time[s]', 'WU', 'error', 'done'),
              file=out)
        for r in rows:
            print('%3d %8d %9s %10.3f %10.2f %14.6e %s'
                  % (r['K'], r['m'], r['variant'], r['time'], r['wu'],
                     r['error'], 'yes' if r['completed'] else 'CAPPED'),
                  file=out)
    # fitted exponents over the rows with meaningful timings
    byvar = {}
    for r in rows:
        if r['completed'] and r['time'] > 0.05:
            byvar.setdefault(r['variant'], []).append((1.0 / r['m'],
                                                       r['time']))
    for var, pts in sorted(byvar.items()):
        if len(pts) >= 3:
            slope = -fit_rate(pts).slope
            print('# %s: time = O(m^%.2f)' % (var, slope), file=out)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; we promise 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print('%s: error: %s' % (self.prog, message), file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_K_list(text: str):
    if ':' in text:
        lo, hi = text.split(':', 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(s) for s in text.split(',') if s]


def build_parser() -> _Parser:
    p = _Parser(prog='fasbratu', description=(
        'Solve the Liouville-Bratu problem -u\'\' - lam e^u = g on '
        '[0,1] with zero boundary values, by FAS multigrid V-cycles '
        '(default), F-cycles, or single-level nonlinear Gauss-Seidel.'))
    p.add_argument('-K', type=int, default=2, metavar='K',
                   help='refinements: finest mesh has m0 2^K elements '
                        '(default: 2)')
    p.add_argument('-m0', type=int, default=2, metavar='M',
                   help='coarsest mesh elements, even (default: 2)')
    p.add_argument('-lam', type=float, default=1.0, metavar='L',
                   help='reaction coefficient (default: 1.0)')
    p.add_argument('-mms', action='store_true',
                   help='manufactured-solution problem; reports the error')
    p.add_argument('-fcycle', action='store_true',
                   help='F-cycle: build the initial iterate from the '
                        'coarsest mesh up')
    p.add_argument('-ngsonly', action='store_true',
                   help='single-level Gauss-Seidel sweeps only')
    p.add_argument('-down', type=int, default=1, metavar='N',
                   help='pre-smoothing sweeps per level (default: 1)')
    p.add_argument('-up', type=int, default=1, metavar='N',
                   help='post-smoothing sweeps per level (default: 1)')
    p.add_argument('-coarse', type=int, default=1, metavar='N',
                   help='coarsest-level sweeps (default: 1)')
    p.add_argument('-niters', type=int, default=2, metavar='N',
                   help='Newton iterations per point solve (default: 2)')
    p.add_argument('-rtol', type=float, default=1e-4, metavar='T',
                   help='relative residual tolerance; 0 runs the full '
                        'cycle budget (default: 1e-4)')
    p.add_argument('-cyclemax', type=int, default=None, metavar='N',
                   help='cycle/sweep budget (default: 100; studies: 12)')
    p.add_argument('-rin', action='store_true',
                   help='restrict iterates by injection instead of full '
                        'weighting')
    p.add_argument('-show', action='store_true',
                   help='emit (x, w) solution samples after the report')
    p.add_argument('-format', choices=('text', 'csv', 'json'),
                   default='text', dest='fmt',
                   help='report format (default: text)')
    p.add_argument('-study', choices=('convergence', 'performance'),
                   default=None,
                   help='run a multi-depth study instead of one solve')
    p.add_argument('-Ks', type=str, default='3:10', metavar='A:B',
                   help='depths for -study, range A:B or comma list '
                        '(default: 3:10)')
    p.add_argument('-variants', type=str, default='fcycle,vcycles,ngsonly',
                   help='comma list for -study performance '
                        '(default: fcycle,vcycles,ngsonly)')
    p.add_argument('-timecap', type=float, default=100.0, metavar='S',
                   help='per-row time cap in the performance study '
                        '(default: 100 s)')
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    restriction = (RestrictionKind.INJECTION if args.rin
                   else RestrictionKind.FULL_WEIGHTING)
    study_default = 12 if args.study else 100
    config = RunConfig(
        K=args.K, m0=args.m0, lam=args.lam, mms=args.mms,
        fcycle=args.fcycle, ngsonly=args.ngsonly, down=args.down,
        up=args.up, coarse=args.coarse, niters=args.niters,
        rtol=args.rtol,
        cyclemax=args.cyclemax if args.cyclemax is not None
        else study_default,
        restriction=restriction, fmt=args.fmt, show=args.show)
    if args.study is None:
        return run(config)
    try:
        Ks = _parse_K_list(args.Ks)
        if not Ks:
            raise ValueError('empty -Ks list')
        if args.study == 'convergence':
            rows, slope = study_convergence(Ks, config)
            _print_convergence(rows, slope, config.fmt, sys.stdout)
        else:
            variants = [v for v in args.variants.split(',') if v]
            rows = study_performance(Ks, variants, config,
                                     timecap=args.timecap)
            _print_performance(rows, config.fmt, sys.stdout)
    except ValueError as exc:
        print('error: %s' % exc, file=sys.stderr)
        return EXIT_USAGE
    return EXIT_CONVERGED


if __name__ == '__main__':
    sys.exit(main())
