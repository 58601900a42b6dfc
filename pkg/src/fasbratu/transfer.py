"""Transfer operators between consecutive mesh levels.

Functions and functionals transfer differently, because a coarse hat
function expands in fine hats as

    psi_q^{coarse} = (1/2) psi_{2q-1} + psi_{2q} + (1/2) psi_{2q+1}.

Prolongation of a function is exact: a piecewise-linear function on the
coarse mesh already lives on the fine mesh, so fine values at coarse
nodes are kept and in-between values are the half-sums of neighbors.
Restriction of a functional is canonical (no choices): its value on a
coarse hat is read off the expansion above, which makes the functional
restriction the transpose of prolongation.  Restriction of a function
does lose information; both pointwise injection (keep coarse-coincident
values) and full weighting (1/4, 1/2, 1/4 averaging) are provided, and
full weighting equals half the canonical functional restriction.

All operators are stencil loops in index space; no matrices are stored.
"""

import enum

from .problem import DualFunctional, MeshFunction
from .smoother import SmootherParams, ngs_point

import numpy as np

__all__ = ['RestrictionKind', 'prolong', 'restrict_functional',
           'restrict_injection', 'restrict_fullweighting',
           'restrict_function', 'enhanced_prolong']


class RestrictionKind(enum.Enum):
    FULL_WEIGHTING = 'fw'
    INJECTION = 'in'


def _require_coarsenable(level):
    if level.k < 1:
        raise ValueError('level 0 cannot be restricted further')
    if level.m % 2 != 0:
        raise ValueError('restriction needs an even element count, got m=%d'
                         % level.m)


def prolong(coarse: MeshFunction) -> MeshFunction:
    """Extend a coarse function to the next finer mesh without changing
    it: coarse nodal values are kept and new nodes get half-sums."""
    fine_level = coarse.level.refined()
    c = coarse.values
    out = np.empty(fine_level.interior_count)
    out[1::2] = c
    padded = np.concatenate(([0.0], c, [0.0]))
    out[0::2] = 0.5 * (padded[:-1] + padded[1:])
    return MeshFunction(fine_level, out)


def restrict_functional(fine: DualFunctional) -> DualFunctional:
    """Canonical restriction of a functional: its value on each coarse
    hat is (1/2) ell[2q-1] + ell[2q] + (1/2) ell[2q+1]."""
    _require_coarsenable(fine.level)
    f = fine.values
    out = 0.5 * f[0:-2:2] + f[1::2] + 0.5 * f[2::2]
    return DualFunctional(fine.level.coarsened(), out)


def restrict_injection(fine: MeshFunction) -> MeshFunction:
    """Keep the values at coarse-coincident nodes, drop the rest.  Can
    badly misrepresent a non-smooth input (sampling a sawtooth sees only
    peaks or only troughs)."""
    _require_coarsenable(fine.level)
    return MeshFunction(fine.level.coarsened(), fine.values[1::2].copy())


def restrict_fullweighting(fine: MeshFunction) -> MeshFunction:
    """Average each coarse nodal value from the three nearest fine nodes
    with weights 1/4, 1/2, 1/4."""
    _require_coarsenable(fine.level)
    f = fine.values
    out = 0.25 * f[0:-2:2] + 0.5 * f[1::2] + 0.25 * f[2::2]
    return MeshFunction(fine.level.coarsened(), out)


def restrict_function(fine: MeshFunction,
                      kind: RestrictionKind) -> MeshFunction:
    if kind is RestrictionKind.INJECTION:
        return restrict_injection(fine)
    return restrict_fullweighting(fine)


def enhanced_prolong(coarse: MeshFunction, ell_fine: DualFunctional,
                     params: SmootherParams) -> MeshFunction:
    """Prolong, then Newton-solve once at each of the *new* fine nodes
    (odd indices) in increasing order, leaving coarse-coincident values
    untouched.  Used when moving up a level with the fine-mesh source
    functional ell_fine; avoids seeding high frequencies.  Costs half a
    sweep on the target level."""
    fine = prolong(coarse)
    if fine.level != ell_fine.level:
        raise ValueError('ell_fine is not on the prolonged level')
    for p in range(1, fine.level.m, 2):
        ngs_point(fine, ell_fine, params, p)
    return fine
