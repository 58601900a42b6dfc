"""Nonlinear Gauss-Seidel smoothing.

One sweep visits the interior nodes in order and, at each node p,
drives the pointwise residual to zero by a fixed number of scalar
Newton steps on

    phi(c)  = ell[p] - (1/h)(2(w[p]+c) - w[p-1] - w[p+1]) + h lam e^{w[p]+c},
    phi'(c) = -2/h + h lam e^{w[p]+c},

then updates w[p] += c.  Neighbor values already updated in this sweep
are used immediately (successive / multiplicative correction), which is
what makes the iteration Gauss-Seidel rather than Jacobi.  The sweep is
inherently sequential and mutates w in place.

For lam = 0 phi is linear and a single Newton step solves the point
problem exactly; extra steps are harmless no-ops.  The Newton count is
fixed (no early exit) so that the cost of a sweep, and hence the work
accounting, is exact.
"""

import enum
import math
from dataclasses import dataclass

from .problem import DivergenceError, DualFunctional, MeshFunction

__all__ = ['SweepDirection', 'SmootherParams', 'ngs_sweep', 'ngs_point',
           'coarse_solve']


class SweepDirection(enum.Enum):
    FORWARD = 'forward'    # p = 1, ..., m-1
    BACKWARD = 'backward'  # p = m-1, ..., 1


@dataclass(frozen=True)
class SmootherParams:
    """Inner Newton iteration count and the reaction coefficient."""

    niters: int = 2
    lam: float = 1.0

    def __post_init__(self):
        if self.niters < 1:
            raise ValueError('niters must be at least 1')


def ngs_point(w: MeshFunction, ell: DualFunctional, params: SmootherParams,
              p: int) -> None:
    """Newton-solve the scalar point problem at interior node p (1-based)
    and update w[p] in place.  Neighbor values are read as-is."""
    v = w.values
    n = len(v)
    i = p - 1
    h = w.level.h
    lam = params.lam
    left = v[i - 1] if i > 0 else 0.0
    right = v[i + 1] if i < n - 1 else 0.0
    wi = v[i]
    li = ell.values[i]
    c = 0.0
    try:
        for _ in range(params.niters):
            t = 0.0 if lam == 0.0 else h * lam * math.exp(wi + c)
            dphi = -2.0 / h + t
            if dphi == 0.0:
                raise DivergenceError('pointwise Newton derivative vanished '
                                      'at node %d' % p)
            phi = li - (2.0 * (wi + c) - left - right) / h + t
            c -= phi / dphi
    except OverflowError:
        raise DivergenceError('e^w overflowed during point solve at node %d'
                              % p) from None
    v[i] = wi + c


def ngs_sweep(w: MeshFunction, ell: DualFunctional, params: SmootherParams,
              direction: SweepDirection = SweepDirection.FORWARD,
              visit=None) -> None:
    """One in-place nonlinear Gauss-Seidel sweep over all interior nodes.

    visit, if given, is called with the 1-based node index just before
    each point solve (instrumentation hook; adds per-node overhead).
    """
    if w.level != ell.level:
        raise ValueError('w and ell live on different levels')
    v = w.values
    lv = ell.values
    n = len(v)
    h = w.level.h
    lam = params.lam
    niters = params.niters
    if direction is SweepDirection.FORWARD:
        indices = range(n)
    else:
        indices = range(n - 1, -1, -1)
    # same Newton kernel as ngs_point, inlined: the sweep is the hot
    # loop of the whole solver
    try:
        for i in indices:
            if visit is not None:
                visit(i + 1)
            left = v[i - 1] if i > 0 else 0.0
            right = v[i + 1] if i < n - 1 else 0.0
            wi = v[i]
            li = lv[i]
            c = 0.0
            for _ in range(niters):
                t = 0.0 if lam == 0.0 else h * lam * math.exp(wi + c)
                dphi = -2.0 / h + t
                if dphi == 0.0:
                    raise DivergenceError('pointwise Newton derivative '
                                          'vanished at node %d' % (i + 1))
                phi = li - (2.0 * (wi + c) - left - right) / h + t
                c -= phi / dphi
            v[i] = wi + c
    except OverflowError:
        raise DivergenceError('e^w overflowed during sweep at node %d'
                              % (i + 1)) from None


def coarse_solve(w: MeshFunction, ell: DualFunctional,
                 params: SmootherParams, coarse_sweeps: int = 1) -> None:
    """Approximate coarsest-level solve: a fixed number of forward
    sweeps.  No finite direct solver exists for the nonlinear problem,
    and on a mesh of a few nodes a sweep or two is essentially exact."""
    for _ in range(coarse_sweeps):
        ngs_sweep(w, ell, params, SweepDirection.FORWARD)
