"""Equivariant cohomology of points and smoothness of orbit-stratified varieties.

For a connected complex algebraic group the equivariant cohomology of a
point is the Weyl-invariant part of a polynomial ring on degree-2
variables (one per rank of a maximal compact torus).  Only the compact
data matter: the torus rank, the Weyl group order and the fundamental
invariant degrees.  All degrees below are cohomological (twice the
polynomial degree).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InconsistentInput, UnsupportedEmbedding, UnsupportedType
from .graded import GradedDimVector, GradedPolyRing

SUPPORTED_TYPES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class GroupDescriptor:
    """Reductive part as root-system factors plus a central torus; a unipotent radical."""

    name: str = ""
    levi: Tuple[Tuple[str, int], ...] = ()
    central_torus_rank: int = 0
    unipotent_dim: int = 0

    def __post_init__(self):
        object.__setattr__(self, "levi", tuple((str(t).upper(), int(r)) for t, r in self.levi))
        for t, r in self.levi:
            if t not in SUPPORTED_TYPES:
                raise UnsupportedType(f"root system type {t!r} is not supported", factor=t)
            if r < 1:
                raise ValueError(f"factor {t}{r} must have rank at least 1")
        if self.central_torus_rank < 0 or self.unipotent_dim < 0:
            raise ValueError("ranks and dimensions must be nonnegative")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "levi": [{"type": t, "rank": r} for t, r in self.levi],
            "central_torus_rank": self.central_torus_rank,
            "unipotent_dim": self.unipotent_dim,
        }


@dataclass(frozen=True)
class CompactData:
    rank: int
    weyl_order: int
    degrees: Tuple[int, ...]


def factor_degrees(kind: str, n: int) -> Tuple[int, ...]:
    """Cohomological degrees of the fundamental invariants of one root-system factor."""
    if kind == "A":
        return tuple(2 * k for k in range(2, n + 2))
    if kind in ("B", "C"):
        return tuple(4 * k for k in range(1, n + 1))
    if kind == "D":
        return tuple(sorted([4 * k for k in range(1, n)] + [2 * n]))
    raise UnsupportedType(f"root system type {kind!r} is not supported", factor=kind)


def factor_weyl_order(kind: str, n: int) -> int:
    if kind == "A":
        return math.factorial(n + 1)
    if kind in ("B", "C"):
        return 2 ** n * math.factorial(n)
    if kind == "D":
        return 2 ** (n - 1) * math.factorial(n)
    raise UnsupportedType(f"root system type {kind!r} is not supported", factor=kind)


def compact_data(G: GroupDescriptor) -> CompactData:
    """Torus rank, Weyl order and invariant degrees; the unipotent part contributes nothing."""
    rank = G.central_torus_rank + sum(r for _, r in G.levi)
    order = 1
    degrees = [2] * G.central_torus_rank
    for t, r in G.levi:
        order *= factor_weyl_order(t, r)
        degrees += factor_degrees(t, r)
    return CompactData(rank, order, tuple(sorted(degrees)))


def equivariant_ring(G: GroupDescriptor) -> GradedPolyRing:
    """H_G(point) as a polynomial ring on generators of the invariant degrees."""
    degs = compact_data(G).degrees
    if len(degs) == 1:
        return GradedPolyRing([("c", degs[0])])
    return GradedPolyRing([(f"c{i + 1}", d) for i, d in enumerate(degs)])


def hilbert_dims(degrees: Sequence[int], bound: int) -> GradedDimVector:
    """Degreewise dimensions of a polynomial ring on generators of the given degrees."""
    coeffs = [0] * (bound + 1)
    coeffs[0] = 1
    for d in degrees:
        for k in range(d, bound + 1):
            coeffs[k] += coeffs[k - d]
    return GradedDimVector({k: c for k, c in enumerate(coeffs)})


# ---------------------------------------------------------------------------
# reflection groups and the averaging oracle


def cartan_matrix(kind: str, n: int) -> List[List[int]]:
    """Cartan matrix with entries <alpha_i^vee, alpha_j>."""
    if kind == "D" and n == 1:
        return [[2]]
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if kind == "D":
        # chain 0 .. n-3, with n-2 and n-1 both attached to n-3
        for i in range(n - 3):
            A[i][i + 1] = A[i + 1][i] = -1
        if n >= 3:
            A[n - 3][n - 2] = A[n - 2][n - 3] = -1
            A[n - 3][n - 1] = A[n - 1][n - 3] = -1
        return A
    for i in range(n - 1):
        A[i][i + 1] = A[i + 1][i] = -1
    if n >= 2 and kind == "B":
        A[n - 1][n - 2] = -2
    if n >= 2 and kind == "C":
        A[n - 2][n - 1] = -2
    return A


def simple_reflections(kind: str, n: int) -> List[Tuple[Tuple[int, ...], ...]]:
    """Matrices of the simple reflections on the span of the simple roots."""
    if kind == "D" and n == 1:
        return []  # SO(2): a torus, no reflections
    A = cartan_matrix(kind, n)
    out = []
    for i in range(n):
        # s_i(alpha_j) = alpha_j - A[i][j] alpha_i; column j is the image of alpha_j
        m = [[int(r == c) for c in range(n)] for r in range(n)]
        for j in range(n):
            m[i][j] -= A[i][j]
        out.append(tuple(tuple(row) for row in m))
    return out


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def generate_group(generators: Sequence, n: int, limit: int = 100000) -> List[Tuple[Tuple[int, ...], ...]]:
    """Closure of a set of n x n integer matrices under multiplication."""
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = _matmul(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > limit:
                        raise ValueError("group is too large or infinite")
        frontier = nxt
    return sorted(seen)


@dataclass(frozen=True)
class WeylDescription:
    """A finite group acting linearly on ``nvars`` degree-2 variables."""

    nvars: int
    generators: Tuple = ()

    @classmethod
    def of_factor(cls, kind: str, n: int) -> "WeylDescription":
        return cls(n, tuple(simple_reflections(kind, n)))

    @classmethod
    def torus(cls, n: int) -> "WeylDescription":
        return cls(n, ())


def symmetric_power_traces(w, kmax: int) -> List[Fraction]:
    """tr Sym^k(w) for k = 0..kmax.

    These are the coefficients of 1/det(1 - t w), obtained from the power
    sums p_j = tr(w^j) by the Newton recursion k h_k = sum_j p_j h_{k-j}.
    """
    n = len(w)
    power = w
    p = [Fraction(0)]
    for j in range(1, kmax + 1):
        p.append(Fraction(sum(power[i][i] for i in range(n))))
        power = _matmul(power, w)
    h = [Fraction(1)]
    for k in range(1, kmax + 1):
        h.append(sum((p[j] * h[k - j] for j in range(1, k + 1)), Fraction(0)) / k)
    return h


def invariant_dims_oracle(weyl: WeylDescription, degree_bound: int) -> GradedDimVector:
    """Dimensions of the invariant subring, degree by degree, by averaging.

    In polynomial degree k the dimension of the invariants is the trace of
    the averaging operator on the degree-k slice, i.e. the mean over the
    group of tr Sym^k(w) (the coefficients of the Molien series).
    """
    n = weyl.nvars
    kmax = degree_bound // 2
    if n == 0:
        return GradedDimVector({0: 1})
    group = generate_group(list(weyl.generators), n)
    totals = [Fraction(0)] * (kmax + 1)
    for w in group:
        for k, t in enumerate(symmetric_power_traces(w, kmax)):
            totals[k] += t
    dims: Dict[int, int] = {}
    for k, total in enumerate(totals):
        avg = total / len(group)
        if avg.denominator != 1:
            raise ArithmeticError("average trace is not an integer")
        dims[2 * k] = int(avg)
    return GradedDimVector(dims)


def product_description(parts: Sequence[WeylDescription]) -> WeylDescription:
    """Direct product acting block-diagonally."""
    n = sum(p.nvars for p in parts)
    gens = []
    off = 0
    for p in parts:
        for g in p.generators:
            m = [[int(i == j) for j in range(n)] for i in range(n)]
            for i in range(p.nvars):
                for j in range(p.nvars):
                    m[off + i][off + j] = g[i][j]
            gens.append(tuple(tuple(r) for r in m))
        off += p.nvars
    return WeylDescription(n, tuple(gens))


def weyl_description(G: GroupDescriptor) -> WeylDescription:
    """The Weyl group of G acting on its maximal torus's degree-2 variables."""
    parts = [WeylDescription.torus(G.central_torus_rank)] + [WeylDescription.of_factor(t, r) for t, r in G.levi]
    return product_description(parts)


# ---------------------------------------------------------------------------
# homogeneous spaces and varieties


@dataclass(frozen=True)
class OrbitDescriptor:
    name: str
    stabilizer: GroupDescriptor
    affine_space: Optional[bool] = None
    trivial_cohomology: Optional[bool] = None


@dataclass(frozen=True)
class OrbitStratification:
    group: GroupDescriptor
    orbits: Tuple[OrbitDescriptor, ...]

    def __post_init__(self):
        object.__setattr__(self, "orbits", tuple(self.orbits))
        if not self.orbits:
            raise ValueError("a stratification needs at least one orbit")


@dataclass(frozen=True)
class HomogeneousSpaceReport:
    smooth: bool
    conditions: Dict[str, bool]
    group: CompactData
    subgroup: CompactData
    reason: str = ""
    sources: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "smooth": self.smooth,
            "conditions": dict(self.conditions),
            "sources": dict(self.sources),
            "group": {"rank": self.group.rank, "weyl_order": self.group.weyl_order, "degrees": list(self.group.degrees)},
            "subgroup": {"rank": self.subgroup.rank, "weyl_order": self.subgroup.weyl_order, "degrees": list(self.subgroup.degrees)},
            "reason": self.reason,
        }


_FITS = {
    # H factor type -> G factor types that contain it as a sub-root system of rank <= n
    "A": ("A", "B", "C", "D"),
    "B": ("B",),
    "C": ("C",),
    "D": ("D", "B"),
}


def _assign_levi(H: GroupDescriptor, G: GroupDescriptor) -> bool:
    """Greedy identification of H's Levi factors with sub-root systems of G's factors."""
    capacity = [[t, r] for t, r in G.levi]
    for t, r in sorted(H.levi, key=lambda f: -f[1]):
        options = [c for c in capacity if c[0] in _FITS[t] and c[1] >= r]
        if not options:
            # A_1 is also B_1 = C_1; D_2 = A_1 x A_1, D_3 = A_3
            return False
        best = min(options, key=lambda c: (c[0] != t, c[1]))
        best[1] -= r
    return True


def check_homogeneous_space(
    G: GroupDescriptor,
    H: GroupDescriptor,
    embedding_hint: str = "standard",
    affine_space: Optional[bool] = None,
    trivial_cohomology: Optional[bool] = None,
) -> HomogeneousSpaceReport:
    """Conditions for the orbit G/H to be G-smooth.

    ``d``: maximal compact subgroups agree (equal torus rank and Weyl
    order); ``c``: H_G(pt) -> H_H(pt) is an isomorphism, equivalent to
    ``d``; ``e``: G/H has the rational cohomology of a point; ``e'``: G/H
    is an affine space.  The last two are taken from flags when given and
    otherwise follow from ``d``; flags that disagree with ``d`` are
    rejected.
    """
    cg, ch = compact_data(G), compact_data(H)
    if ch.rank > cg.rank:
        raise InconsistentInput("subgroup has larger torus rank than the group", group=cg.rank, subgroup=ch.rank)
    if ch.weyl_order > cg.weyl_order or cg.weyl_order % ch.weyl_order:
        raise InconsistentInput("subgroup Weyl order does not divide the group's", group=cg.weyl_order, subgroup=ch.weyl_order)
    if embedding_hint == "standard":
        if not _assign_levi(H, G):
            raise UnsupportedEmbedding("Levi factors of the subgroup cannot be placed in the group's factors")
    elif embedding_hint != "equal-rank":
        raise UnsupportedEmbedding(f"unknown embedding hint {embedding_hint!r}")
    d = ch.rank == cg.rank and ch.weyl_order == cg.weyl_order
    sources = {"d": "compact data", "c": "equivalent to d"}
    conditions = {"d": d, "c": d}
    for key, flag, label in (("e", trivial_cohomology, "trivial_cohomology"), ("e'", affine_space, "affine_space")):
        if flag is None:
            conditions[key] = d
            sources[key] = "implied by d"
        else:
            if bool(flag) != d:
                raise InconsistentInput(f"flag {label}={flag} contradicts the compact data comparison", condition=key)
            conditions[key] = bool(flag)
            sources[key] = "flag"
    if d:
        reason = ""
    elif ch.rank != cg.rank:
        reason = f"torus rank {ch.rank} != {cg.rank}"
    else:
        reason = f"weyl order {ch.weyl_order} != {cg.weyl_order}"
    return HomogeneousSpaceReport(d, conditions, cg, ch, reason, sources)


@dataclass(frozen=True)
class VarietyReport:
    smooth: bool
    orbits: Tuple[Tuple[str, HomogeneousSpaceReport], ...]
    first_failure: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "verdict": "G_SMOOTH" if self.smooth else "NOT_G_SMOOTH",
            "first_failure": self.first_failure,
            "orbits": [{"name": n, **r.to_dict()} for n, r in self.orbits],
        }


def check_variety(X: OrbitStratification, embedding_hint: str = "standard", jobs: int = 1) -> VarietyReport:
    """G-smooth iff every orbit is; reports follow the input order."""

    def one(o: OrbitDescriptor) -> HomogeneousSpaceReport:
        return check_homogeneous_space(X.group, o.stabilizer, embedding_hint, o.affine_space, o.trivial_cohomology)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(one, X.orbits))
    else:
        reports = [one(o) for o in X.orbits]
    pairs = tuple((o.name, r) for o, r in zip(X.orbits, reports))
    failure = next((n for n, r in pairs if not r.smooth), None)
    return VarietyReport(failure is None, pairs, failure)
