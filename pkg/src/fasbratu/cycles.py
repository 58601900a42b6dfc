"""Full approximation storage (FAS) cycles and solver drivers.

Because the operator is nonlinear, coarse levels cannot solve an error
equation; they solve for the full solution against the modified source

    ell_coarse[v] = R'(ell - F(w))[v] + F_coarse(R w)[v],

where R' is the canonical restriction of functionals, R the chosen
restriction of functions, and F_coarse the same discretization on the
coarser mesh.  If w already solves the fine problem the residual term
vanishes and the coarse solution is exactly R w, so the correction

    w <- w + P(w_coarse - R w)

is zero: the exact discrete solution is a fixed point of every cycle.

A V-cycle recurses this two-level step down to the coarsest mesh; the
V-cycle solver iterates V-cycles under a relative residual tolerance;
the F-cycle builds its own initial iterate by working upward from the
coarsest mesh with the enhanced prolongation before finishing with
finest-level V-cycles.  A single-level Gauss-Seidel driver with the
same stopping rule is included as the degenerate comparison point.
"""

import warnings
from dataclasses import dataclass

from .diagnostics import WorkCounter, mms_error, norm_l2
from .mesh import Hierarchy
from .problem import (DualFunctional, MeshFunction, ProblemParams,
                      SourceMode, apply_operator, residual,
                      source_functional)
from .smoother import SmootherParams, SweepDirection, coarse_solve, ngs_sweep
from .transfer import (RestrictionKind, enhanced_prolong, prolong,
                       restrict_function, restrict_functional)

__all__ = ['CycleParams', 'SolverParams', 'SolveReport', 'coarse_source',
           'fas_vcycle', 'fas_solver', 'fas_fcycle', 'ngs_only']


@dataclass(frozen=True)
class CycleParams:
    """Sweep counts and transfer choice for one cycle shape."""

    down: int = 1
    up: int = 1
    coarse: int = 1
    restriction: RestrictionKind = RestrictionKind.FULL_WEIGHTING
    niters: int = 2

    def __post_init__(self):
        if self.down < 0 or self.up < 0:
            raise ValueError('down and up must be nonnegative')
        if self.coarse < 1:
            raise ValueError('coarse must be positive')
        if self.niters < 1:
            raise ValueError('niters must be at least 1')
        if self.down + self.up == 0:
            warnings.warn('down=0 and up=0: cycles will not smooth and are '
                          'unlikely to converge', stacklevel=2)


@dataclass(frozen=True)
class SolverParams:
    """Outer stopping rule: relative residual tolerance and cycle cap."""

    rtol: float = 1e-4
    cyclemax: int = 100

    def __post_init__(self):
        if self.rtol < 0.0:
            raise ValueError('rtol must be nonnegative')
        if self.cyclemax < 1:
            raise ValueError('cyclemax must be at least 1')


@dataclass
class SolveReport:
    """Outcome of one solver run."""

    cycles_run: int
    residual_history: list
    work_units: float
    converged: bool
    solution: MeshFunction
    error_norm: float | None = None

    @property
    def residual0(self) -> float:
        return self.residual_history[0]

    @property
    def residual_final(self) -> float:
        return self.residual_history[-1]


def coarse_source(fine_w: MeshFunction, fine_ell: DualFunctional,
                  params: ProblemParams,
                  restriction: RestrictionKind) -> DualFunctional:
    """Source functional for the coarse-level problem:
    R'(ell - F(w)) + F_coarse(R w)."""
    r = residual(fine_w, fine_ell, params)
    rw = restrict_function(fine_w, restriction)
    out = restrict_functional(r).values + apply_operator(rw, params).values
    return DualFunctional(rw.level, out)


def fas_vcycle(w: MeshFunction, ell: DualFunctional, cp: CycleParams,
               pp: ProblemParams, work: WorkCounter | None = None) -> None:
    """One in-place FAS V-cycle on the level of w, recursing to level 0.

    down forward sweeps, restriction of the iterate and formation of the
    coarse source, recursion, correction by the prolonged coarse change,
    then up backward sweeps.  The restricted iterate is saved before the
    recursion and reused in the correction.
    """
    if w.level != ell.level:
        raise ValueError('w and ell live on different levels')
    smp = SmootherParams(niters=cp.niters, lam=pp.lam)
    k = w.level.k
    if k == 0:
        coarse_solve(w, ell, smp, cp.coarse)
        if work is not None:
            work.charge_sweep(0, float(cp.coarse))
        return
    for _ in range(cp.down):
        ngs_sweep(w, ell, smp, SweepDirection.FORWARD)
        if work is not None:
            work.charge_sweep(k)
    rw = restrict_function(w, cp.restriction)
    ell_coarse = coarse_source(w, ell, pp, cp.restriction)
    wc = rw.copy()
    fas_vcycle(wc, ell_coarse, cp, pp, work)
    correction = MeshFunction(rw.level, wc.values - rw.values)
    w.values += prolong(correction).values
    for _ in range(cp.up):
        ngs_sweep(w, ell, smp, SweepDirection.BACKWARD)
        if work is not None:
            work.charge_sweep(k)


def _finish_report(w, pp, cycles, history, work, converged):
    err = mms_error(w) if pp.source is SourceMode.MMS else None
    return SolveReport(cycles_run=cycles, residual_history=history,
                       work_units=work.total_wu, converged=converged,
                       solution=w, error_norm=err)


def fas_solver(w: MeshFunction, sp: SolverParams, cp: CycleParams,
               pp: ProblemParams) -> SolveReport:
    """Iterate V-cycles on the level of w until the residual norm drops
    below rtol times its initial value or cyclemax cycles have run.

    The residual is checked after each cycle, so at least one cycle
    always runs.  Hitting cyclemax with rtol > 0 is reported as
    non-convergence in the returned report, not raised.
    """
    ell = source_functional(w.level, pp)
    work = WorkCounter(w.level.k)
    h = w.level.h
    r0 = norm_l2(residual(w, ell, pp).values, h)
    history = [r0]
    converged = False
    cycles = 0
    for _ in range(sp.cyclemax):
        fas_vcycle(w, ell, cp, pp, work)
        cycles += 1
        r = norm_l2(residual(w, ell, pp).values, h)
        history.append(r)
        if r <= sp.rtol * r0:
            converged = True
            break
    return _finish_report(w, pp, cycles, history, work, converged)


def fas_fcycle(hier: Hierarchy, sp: SolverParams, cp: CycleParams,
               pp: ProblemParams) -> SolveReport:
    """Full-multigrid style solve: start from a zero iterate on the
    coarsest mesh, and at each level up prolong the previous solution
    with the enhanced prolongation and run one V-cycle there.

    The ascent's V-cycle on the finest level counts as cycle 1 of
    cyclemax; further finest-level V-cycles follow under the same
    stopping rule as the V-cycle solver, with the reference residual
    taken just after the final prolongation.
    """
    work = WorkCounter(hier.K)
    smp = SmootherParams(niters=cp.niters, lam=pp.lam)
    w = MeshFunction.zeros(hier.coarsest)
    ell = source_functional(hier.coarsest, pp)
    r_init = norm_l2(residual(w, ell, pp).values, w.level.h)
    coarse_solve(w, ell, smp, cp.coarse)
    work.charge_sweep(0, float(cp.coarse))
    if hier.K == 0:
        r = norm_l2(residual(w, ell, pp).values, w.level.h)
        return _finish_report(w, pp, 0, [r], work,
                              converged=r <= sp.rtol * r_init)
    for k in range(1, hier.K):
        ell = source_functional(hier[k], pp)
        w = enhanced_prolong(w, ell, smp)
        work.charge_sweep(k, 0.5)
        fas_vcycle(w, ell, cp, pp, work)
    ell = source_functional(hier.finest, pp)
    w = enhanced_prolong(w, ell, smp)
    work.charge_sweep(hier.K, 0.5)
    h = hier.finest.h
    r0 = norm_l2(residual(w, ell, pp).values, h)
    history = [r0]
    converged = False
    cycles = 0
    while cycles < sp.cyclemax and not converged:
        fas_vcycle(w, ell, cp, pp, work)
        cycles += 1
        r = norm_l2(residual(w, ell, pp).values, h)
        history.append(r)
        if r <= sp.rtol * r0:
            converged = True
    return _finish_report(w, pp, cycles, history, work, converged)


def ngs_only(w: MeshFunction, sp: SolverParams, smp: SmootherParams,
             pp: ProblemParams) -> SolveReport:
    """Single-level comparison solver: repeated forward sweeps under the
    same stopping rule.  Each sweep is a full work unit.  Converges fast
    at first, then stalls on the smooth error modes."""
    ell = source_functional(w.level, pp)
    work = WorkCounter(w.level.k)
    h = w.level.h
    r0 = norm_l2(residual(w, ell, pp).values, h)
    history = [r0]
    converged = False
    sweeps = 0
    for _ in range(sp.cyclemax):
        ngs_sweep(w, ell, smp, SweepDirection.FORWARD)
        work.charge_sweep(w.level.k)
        sweeps += 1
        r = norm_l2(residual(w, ell, pp).values, h)
        history.append(r)
        if r <= sp.rtol * r0:
            converged = True
            break
    return _finish_report(w, pp, sweeps, history, work, converged)
