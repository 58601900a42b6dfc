"""Norms, error measurement, work units, and convergence-rate fits.

The discrete L2 norm used throughout is |v| = sqrt(h sum_p v[p]^2) over
interior nodal values.  It is mesh-consistent (the norm of a sampled
smooth function converges to its continuum L2 norm as h -> 0) and is
applied uniformly to solutions, residual value vectors, and errors.

Work is measured in work units (WU): one WU is a smoother sweep on the
finest mesh, a sweep on the next coarser mesh is 1/2 WU, and so on.
All charges are dyadic rationals, so accumulated totals are bit-exact.
The arithmetic in restriction and prolongation is not charged, except
the enhanced prolongation, whose half-sweep costs 0.5 WU at its target
level.
"""

import math
from dataclasses import dataclass

import numpy as np

from .problem import MeshFunction, mms_exact

__all__ = ['norm_l2', 'WorkCounter', 'mms_error', 'RateFit', 'fit_rate']


def norm_l2(values, h: float) -> float:
    """Discrete L2 norm sqrt(h sum v^2) of an interior value vector."""
    v = np.asarray(values, dtype=float)
    return math.sqrt(h * float(np.dot(v, v)))


@dataclass
class WorkCounter:
    """Accumulates work-unit charges for one solve on a hierarchy whose
    finest level index is finest_level."""

    finest_level: int
    total_wu: float = 0.0

    def charge_sweep(self, level_k: int, fraction: float = 1.0) -> None:
        """Charge fraction of a sweep at level level_k: adds
        fraction * 2^-(K - level_k) to the total."""
        if not 0 <= level_k <= self.finest_level:
            raise ValueError('level %d outside hierarchy 0..%d'
                             % (level_k, self.finest_level))
        self.total_wu += fraction * 2.0 ** -(self.finest_level - level_k)


def mms_error(w: MeshFunction) -> float:
    """Discrete L2 norm of w minus the manufactured solution sampled at
    the interior nodes."""
    exact = mms_exact(w.level.interior_x())
    return norm_l2(w.values - exact, w.level.h)


@dataclass(frozen=True)
class RateFit:
    """Least-squares fit of log(error) against log(h)."""

    pairs: tuple
    slope: float
    intercept: float


def fit_rate(pairs) -> RateFit:
    """Fit error ~ C h^s in log-log space over (h, error) observations.

    Needs at least 3 pairs with strictly positive errors; an error at or
    below zero means the observation sits in the rounding floor and
    cannot be fit.
    """
    pairs = tuple((float(h), float(e)) for h, e in pairs)
    if len(pairs) < 3:
        raise ValueError('need at least 3 (h, error) pairs, got %d'
                         % len(pairs))
    if any(e <= 0.0 for _, e in pairs):
        raise ValueError('errors must be positive to fit a rate')
    logh = np.log([h for h, _ in pairs])
    loge = np.log([e for _, e in pairs])
    slope, intercept = np.polyfit(logh, loge, 1)
    return RateFit(pairs, float(slope), float(intercept))
