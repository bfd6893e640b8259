"""A deterministic corpus of finite graded-commutative Q-algebras on at most two generators."""

from __future__ import annotations

import itertools
from typing import Iterator, Tuple

from dgsmooth.dg import commutative_quotient_algebra
from dgsmooth.graded import GradedCommRing, KPolynomial


def _power(nvars: int, i: int, k: int) -> KPolynomial:
    e = [0] * nvars
    e[i] = k
    return KPolynomial(nvars, {tuple(e): 1})


def _ideals(degrees: Tuple[int, ...]):
    """Ideals making the ring finite: powers of the even generators, optionally a mixed relation."""
    n = len(degrees)
    even = [i for i, d in enumerate(degrees) if d % 2 == 0]
    ranges = [range(1, 4) if i in even else [None] for i in range(n)]
    for exps in itertools.product(*ranges):
        ideal = [_power(n, i, k) for i, k in enumerate(exps) if k is not None]
        yield ideal
        if n == 2 and all(k is None or k >= 2 for k in exps):
            # add the product of the two generators
            yield ideal + [KPolynomial(2, {(1, 1): 1})]


def corpus() -> Iterator[Tuple[str, object]]:
    seen = set()
    for n in (1, 2):
        for degrees in itertools.combinations_with_replacement((1, 2, 3, 4), n):
            names = ["a", "b"][:n]
            for ideal in _ideals(degrees):
                ring = GradedCommRing(list(zip(names, degrees)), ideal)
                key = repr(ring)
                if key in seen:
                    continue
                seen.add(key)
                if ring.top_degree() is None:
                    continue
                yield key, commutative_quotient_algebra(ring)
