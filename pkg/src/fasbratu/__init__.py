"""Nonlinear multigrid (full approximation storage) solver for the 1D
Liouville-Bratu equation, discretized by piecewise-linear finite
elements on nested uniform meshes.

Typical use:

    import fasbratu as fb

    hier = fb.build_hierarchy(m0=2, K=8)
    w = fb.MeshFunction.zeros(hier.finest)
    report = fb.fas_solver(w, fb.SolverParams(), fb.CycleParams(),
                           fb.ProblemParams(lam=1.0))
    print(report.cycles_run, report.work_units)
"""

from .mesh import Level, Hierarchy, build_hierarchy
from .problem import (DivergenceError, SourceMode, ProblemParams,
                      MeshFunction, DualFunctional, apply_operator,
                      source_functional, residual, mms_exact, mms_source)
from .smoother import (SweepDirection, SmootherParams, ngs_sweep,
                       ngs_point, coarse_solve)
from .transfer import (RestrictionKind, prolong, restrict_functional,
                       restrict_injection, restrict_fullweighting,
                       restrict_function, enhanced_prolong)
from .cycles import (CycleParams, SolverParams, SolveReport, coarse_source,
                     fas_vcycle, fas_solver, fas_fcycle, ngs_only)
from .diagnostics import (WorkCounter, RateFit, norm_l2, mms_error,
                          fit_rate)

__version__ = '0.1.0'

__all__ = [
    'Level', 'Hierarchy', 'build_hierarchy',
    'DivergenceError', 'SourceMode', 'ProblemParams', 'MeshFunction',
    'DualFunctional', 'apply_operator', 'source_functional', 'residual',
    'mms_exact', 'mms_source',
    'SweepDirection', 'SmootherParams', 'ngs_sweep', 'ngs_point',
    'coarse_solve',
    'RestrictionKind', 'prolong', 'restrict_functional',
    'restrict_injection', 'restrict_fullweighting', 'restrict_function',
    'enhanced_prolong',
    'CycleParams', 'SolverParams', 'SolveReport', 'coarse_source',
    'fas_vcycle', 'fas_solver', 'fas_fcycle', 'ngs_only',
    'WorkCounter', 'RateFit', 'norm_l2', 'mms_error', 'fit_rate',
]
