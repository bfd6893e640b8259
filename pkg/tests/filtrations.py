"""Random iterated cones of shifted free modules over a finite Q-algebra."""

from __future__ import annotations

import random
from fractions import Fraction

from dgsmooth.dg import semifree_module
from dgsmooth.errors import PresentationError


def random_filtration(A, rnd: random.Random, max_cells: int = 4, tries: int = 50):
    """A semifree module with at most ``max_cells`` cells and d^2 = 0.

    Attaching maps are random elements of A in the right degree; candidates
    violating d^2 = 0 are discarded and redrawn.
    """
    support = [d for d in A.support_range() if A.dim(d)]
    for _ in range(tries):
        n = rnd.randint(1, max_cells)
        degrees = []
        for i in range(n):
            if i and rnd.random() < 0.7:
                # aim for a degree where an attaching map can be nonzero
                j = rnd.randrange(i)
                degrees.append(degrees[j] - 1 + rnd.choice(support))
            else:
                degrees.append(rnd.randint(-3, 3))
        diffs = []
        for i in range(n):
            dmap = {}
            for j in range(i):
                cdeg = degrees[i] + 1 - degrees[j]
                dim = A.dim(cdeg) if cdeg in support else 0
                if dim and rnd.random() < 0.8:
                    coeffs = tuple(Fraction(rnd.choice([-2, -1, 0, 1, 1, 2])) for _ in range(dim))
                    if any(coeffs):
                        dmap[j] = coeffs
            diffs.append(dmap)
        try:
            return semifree_module(A, degrees, diffs)
        except PresentationError:
            continue
    return semifree_module(A, [0], [{}])
