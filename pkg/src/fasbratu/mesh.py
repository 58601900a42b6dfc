"""Nested uniform meshes on [0,1] for the multilevel solver.

A hierarchy starts from a coarsest mesh of m0 elements and refines by
factors of two, so the k-th level has m0 * 2^k elements of length
h = 1/m.  Every node of a coarse mesh coincides with an even-indexed
node of the next finer mesh, which is what the transfer operators rely
on.  Only interior nodes x_p = p*h, p = 1,...,m-1 carry unknowns; the
boundary values u(0) = u(1) = 0 are implicit everywhere.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ['Level', 'Hierarchy', 'build_hierarchy']

# finest admissible element count; protects array index arithmetic
_MAX_ELEMENTS = np.iinfo(np.intp).max // 4


@dataclass(frozen=True)
class Level:
    """One mesh in the hierarchy: m equal elements on [0,1], index k."""

    k: int
    m: int

    @property
    def h(self) -> float:
        return 1.0 / self.m

    @property
    def interior_count(self) -> int:
        return self.m - 1

    def interior_x(self) -> np.ndarray:
        """Coordinates x_p = p*h of the interior nodes, p = 1,...,m-1."""
        return np.arange(1, self.m) * self.h

    def coarsened(self) -> 'Level':
        if self.k == 0:
            raise ValueError('level 0 has no coarser level')
        if self.m % 2 != 0:
            raise ValueError('cannot coarsen a level with odd element count')
        return Level(self.k - 1, self.m // 2)

    def refined(self) -> 'Level':
        return Level(self.k + 1, 2 * self.m)


@dataclass(frozen=True)
class Hierarchy:
    """Ordered mesh levels from coarsest (k=0) to finest (k=K)."""

    levels: tuple[Level, ...]
    m0: int

    @property
    def K(self) -> int:
        return len(self.levels) - 1

    @property
    def coarsest(self) -> Level:
        return self.levels[0]

    @property
    def finest(self) -> Level:
        return self.levels[-1]

    def __getitem__(self, k: int) -> Level:
        return self.levels[k]

    def __len__(self) -> int:
        return len(self.levels)


def build_hierarchy(m0: int = 2, K: int = 0) -> Hierarchy:
    """Construct K+1 nested levels with m = m0 * 2^k elements each.

    m0 must be even (and at least 2) so that every level above the
    coarsest has an even element count and can be coarsened.
    """
    if m0 < 2:
        raise ValueError('m0 must be at least 2, got %d' % m0)
    if m0 % 2 != 0:
        raise ValueError('m0 must be even, got %d' % m0)
    if K < 0:
        raise ValueError('K must be nonnegative, got %d' % K)
    if m0 * 2 ** K > _MAX_ELEMENTS:
        raise ValueError('finest mesh of m0 * 2^K = %d elements overflows '
                         'the index type' % (m0 * 2 ** K))
    levels = tuple(Level(k, m0 * 2 ** k) for k in range(K + 1))
    return Hierarchy(levels, m0)
