"""Discretization of the Liouville-Bratu boundary value problem.

The continuum problem is

    -u'' - lam e^u = g,   u(0) = u(1) = 0,

posed in weak form F(u)[v] = ell[v] over piecewise-linear functions
with zero boundary values.  With hat-function test functions and the
trapezoid rule for the transcendental integral, the operator and the
source functional reduce to the nodal formulas

    F(w)[psi_p]   = (1/h) (2 w[p] - w[p-1] - w[p+1]) - h lam e^{w[p]},
    ell[psi_p]    = h g(x_p),

for p = 1,...,m-1 with w[0] = w[m] = 0 implicit.  A function is stored
by its interior nodal values; a linear functional is stored by its
values on the interior hat functions.  The two are different objects
and are kept as separate types.

The manufactured-solution mode prescribes u(x) = sin(3 pi x), whose
source term is g(x) = 9 pi^2 sin(3 pi x) - lam e^{sin(3 pi x)}.
"""

import enum
from dataclasses import dataclass
from math import isfinite

import numpy as np

from .mesh import Level

__all__ = ['DivergenceError', 'SourceMode', 'ProblemParams',
           'MeshFunction', 'DualFunctional',
           'apply_operator', 'source_functional', 'residual',
           'mms_exact', 'mms_source']


class DivergenceError(ArithmeticError):
    """The iteration left the basin of the method: e^w overflowed, or a
    pointwise Newton derivative vanished.  Expected near the critical
    reaction coefficient; callers should report it, not crash."""


class SourceMode(enum.Enum):
    ZERO = 'zero'
    MMS = 'mms'


@dataclass(frozen=True)
class ProblemParams:
    """Reaction coefficient lam and the built-in source selector."""

    lam: float = 1.0
    source: SourceMode = SourceMode.ZERO

    def __post_init__(self):
        if not isfinite(self.lam):
            raise ValueError('lam must be finite')


@dataclass
class MeshFunction:
    """Piecewise-linear function with zero boundary values, stored as
    its interior nodal values (equivalently, hat-basis coefficients)."""

    level: Level
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.level.interior_count,):
            raise ValueError('expected %d interior values, got shape %s'
                             % (self.level.interior_count, self.values.shape))

    @classmethod
    def zeros(cls, level: Level) -> 'MeshFunction':
        return cls(level, np.zeros(level.interior_count))

    def copy(self) -> 'MeshFunction':
        return MeshFunction(self.level, self.values.copy())


@dataclass
class DualFunctional:
    """Linear functional on the mesh-function space, stored by its
    values on the interior hat functions."""

    level: Level
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.level.interior_count,):
            raise ValueError('expected %d functional values, got shape %s'
                             % (self.level.interior_count, self.values.shape))

    @classmethod
    def zeros(cls, level: Level) -> 'DualFunctional':
        return cls(level, np.zeros(level.interior_count))

    def copy(self) -> 'DualFunctional':
        return DualFunctional(self.level, self.values.copy())


def mms_exact(x):
    """Manufactured exact solution u(x) = sin(3 pi x)."""
    return np.sin(3.0 * np.pi * x)


def mms_source(x, lam: float):
    """Source g(x) = 9 pi^2 sin(3 pi x) - lam e^{sin(3 pi x)} matching
    the manufactured solution."""
    s = np.sin(3.0 * np.pi * x)
    return 9.0 * np.pi ** 2 * s - lam * np.exp(s)


def _exp_checked(values: np.ndarray) -> np.ndarray:
    with np.errstate(over='ignore'):
        ew = np.exp(values)
    if not np.all(np.isfinite(ew)):
        raise DivergenceError('e^w overflowed; iterate has diverged')
    return ew


def apply_operator(w: MeshFunction, params: ProblemParams) -> DualFunctional:
    """Evaluate the discretized operator on w, returning the functional
    with values (1/h)(2 w[p] - w[p-1] - w[p+1]) - h lam e^{w[p]}."""
    h = w.level.h
    padded = np.concatenate(([0.0], w.values, [0.0]))
    lap = (2.0 * padded[1:-1] - padded[:-2] - padded[2:]) / h
    out = lap - h * params.lam * _exp_checked(w.values)
    return DualFunctional(w.level, out)


def source_functional(level: Level, params: ProblemParams) -> DualFunctional:
    """Trapezoid-rule source functional, ell[psi_p] = h g(x_p).  The
    factor h is what distinguishes the functional from the function g."""
    if params.source is SourceMode.MMS:
        g = mms_source(level.interior_x(), params.lam)
    else:
        g = np.zeros(level.interior_count)
    return DualFunctional(level, level.h * g)


def residual(w: MeshFunction, ell: DualFunctional,
             params: ProblemParams) -> DualFunctional:
    """Residual functional ell - F(w) for the iterate w."""
    if w.level != ell.level:
        raise ValueError('w and ell live on different levels')
    out = ell.values - apply_operator(w, params).values
    return DualFunctional(w.level, out)
