"""Finitely presented dg algebras and dg modules over a graded polynomial base.

A dg K-algebra is presented by a finitely presented graded K-module (one
generator is the unit, in degree 0), structure constants giving each
product of two generators as a K-linear combination of generators, and a
K-linear differential given on generators.  K sits in even degrees and is
central, so ``(u g)(w h) = uw (g h)`` and ``d(u g) = u d(g)``.

Elements are handled degreewise in the quotient coordinates of the
underlying module.  A presentation also implements the ring protocol used
by :mod:`dgsmooth.graded` and :mod:`dgsmooth.resolution`, so modules over a
zero-differential algebra can be resolved directly.

Sign conventions: ``d`` has degree +1 and satisfies
``d(ab) = d(a) b + (-1)^{|a|} a d(b)``; tensor products multiply as
``(a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb'``; the opposite product
is ``a * b = (-1)^{|a||b|} ba``; the diagonal bimodule is a left module over
``A (x) A^op`` via ``(a (x) b) m = (-1)^{|b||m|} a m b``; and the shift
``[n]M`` has ``([n]M)^i = M^{n+i}``, differential ``(-1)^n d`` and action
twisted by ``(-1)^{n|a|}``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import HypothesisViolated, PresentationError, ReductionUnavailable, WindowTooSmall
from .exact import ONE, ZERO, QMatrix, Subspace, Vector, is_zero, kernel_vectors, rank, rank_of_vectors, unit_vector
from .graded import DegreeWindow, GradedDimVector, GradedModulePresentation, GradedPolyRing, KPolynomial

Sparse = Dict[int, KPolynomial]  # generator index -> K coefficient


def rational_base() -> GradedPolyRing:
    """K = Q, the polynomial ring on no generators."""
    return GradedPolyRing([])


def _sparse(entries, ngens: int, nvars: int) -> Sparse:
    """Normalize a relation-style list or a sparse mapping to a sparse dict."""
    if entries is None:
        return {}
    if isinstance(entries, Mapping):
        items = entries.items()
    else:
        entries = list(entries)
        if len(entries) != ngens:
            raise PresentationError(f"expected {ngens} coefficients, got {len(entries)}")
        items = enumerate(entries)
    out = {}
    for g, p in items:
        if not isinstance(p, KPolynomial):
            p = KPolynomial.constant(nvars, p)
        if p:
            out[int(g)] = out[int(g)] + p if int(g) in out else p
    return {g: p for g, p in out.items() if p}


def _dense(sp: Sparse, ngens: int, nvars: int) -> List[KPolynomial]:
    return [sp.get(g, KPolynomial.zero(nvars)) for g in range(ngens)]


def _add_sparse(acc: Sparse, sp: Sparse, coeff: KPolynomial | None = None, sign: int = 1) -> None:
    for g, p in sp.items():
        q = p * coeff if coeff is not None else p
        if sign < 0:
            q = -q
        acc[g] = acc[g] + q if g in acc else q
        if not acc[g]:
            del acc[g]


class _Degreewise:
    """Shared degreewise machinery for presentations over a base K."""

    base: GradedPolyRing
    module: GradedModulePresentation
    _dvec: Dict[int, Vector]

    def dim(self, d: int) -> int:
        return self.module.dim(d)

    def dims(self, window: Iterable[int]) -> GradedDimVector:
        return self.module.dims(window)

    @property
    def ngens(self) -> int:
        return self.module.ngens

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self.module.degrees

    def gen_vector(self, g: int) -> Vector:
        """Quotient coordinates of generator ``g``."""
        d = self.degrees[g]
        return self.module.reduce(d, self.module.generator_vector(g))

    def sparse_vector(self, sp: Sparse, d: int) -> Vector:
        """Free coordinates in degree ``d`` of a sparse K-combination of generators."""
        return self.module.element_vector(_dense(sp, self.ngens, self.base.nvars), d)

    def _blocks(self, d: int, f: Sequence[Fraction]):
        for g, off, n in self.module.free_layout(d):
            block = f[off:off + n]
            if not is_zero(block):
                yield g, d - self.degrees[g], block

    def _diff_free(self, d: int, f: Sequence[Fraction]) -> List[Fraction]:
        out = [ZERO] * self.module.free_dim(d + 1)
        for g, kdeg, U in self._blocks(d, f):
            dv = self._dvec.get(g)
            if dv is None:
                continue
            w = self.module.act(kdeg, U, self.degrees[g] + 1, dv)
            for i, x in enumerate(w):
                if x:
                    out[i] += x
        return out

    def differential(self, d: int, v: Sequence[Fraction]) -> Vector:
        f = self.module.lift(d, v)
        return self.module.reduce(d + 1, self._diff_free(d, f))

    def differential_matrix(self, d: int) -> QMatrix:
        n = self.dim(d)
        cols = [self.differential(d, unit_vector(n, i)) for i in range(n)]
        return QMatrix.from_columns(cols, self.dim(d + 1))

    def has_zero_differential(self) -> bool:
        return all(is_zero(self.module.reduce(self.degrees[g] + 1, v)) for g, v in self._dvec.items())

    def max_presentation_degree(self) -> int:
        degs = [self.module.max_presentation_degree()] + list(self.base.degrees)
        degs += [self.degrees[g] + 1 for g, v in self._dvec.items() if not is_zero(v)]
        return max(degs)

    def top_degree(self) -> Optional[int]:
        """Highest degree with a nonzero slice, or None if infinitely many are nonzero."""
        if not hasattr(self, "_top_cache"):
            self._top_cache = _finite_top(self.module, self.base)
        return self._top_cache

    def support_range(self) -> Optional[range]:
        top = self.top_degree()
        if top is None or not self.ngens:
            return None
        return range(min(self.degrees), top + 1)


def _finite_top(M: GradedModulePresentation, K: GradedPolyRing) -> Optional[int]:
    if not M.ngens:
        return None
    hi = max(M.degrees)
    if K.nvars == 0:
        return max((d for d in set(M.degrees) if M.dim(d)), default=None)
    run = max(K.degrees)
    start = hi + 1
    cap = M.max_presentation_degree() + 8 * run + 64
    zeros = 0
    d = start
    while d <= cap:
        zeros = zeros + 1 if M.dim(d) == 0 else 0
        if zeros == run:
            below = range(min(M.degrees), d - run + 1)
            return max((e for e in below if M.dim(e)), default=None)
        d += 1
    return None


# ---------------------------------------------------------------------------
# algebras


class DgAlgebraPresentation(_Degreewise):
    """A dg K-algebra finitely generated as a K-module.

    ``product`` maps a pair of generator indices to the product as a
    K-combination of generators (a list with one entry per generator or a
    sparse mapping); products with the unit are implicit and missing pairs
    are zero.  ``differential`` maps a generator index to its image.
    """

    def __init__(
        self,
        base: GradedPolyRing,
        module: GradedModulePresentation,
        unit: int = 0,
        product: Mapping[Tuple[int, int], object] | None = None,
        differential: Mapping[int, object] | None = None,
        name: str = "",
        validate: bool = True,
    ):
        if module.ring != base:
            raise PresentationError("underlying module must be presented over the base ring")
        if not 0 <= unit < module.ngens or module.degrees[unit] != 0:
            raise PresentationError("the unit generator must exist and sit in degree 0")
        self.base = base
        self.module = module
        self.unit = unit
        self.name = name
        n, s = module.ngens, base.nvars
        self._product: Dict[Tuple[int, int], Sparse] = {}
        for (i, j), val in (product or {}).items():
            sp = _sparse(val, n, s)
            if i == unit or j == unit:
                other = j if i == unit else i
                if not self._equal_in_quotient(sp, {other: KPolynomial.constant(s)}, self.degrees[other]):
                    raise PresentationError("products with the unit must be the identity", pair=(i, j))
                continue
            if sp:
                self._product[(i, j)] = sp
        self._differential: Dict[int, Sparse] = {}
        for g, val in (differential or {}).items():
            sp = _sparse(val, n, s)
            if sp:
                self._differential[int(g)] = sp
        self._pvec: Dict[Tuple[int, int], Vector] = {
            (i, j): self.sparse_vector(sp, self.degrees[i] + self.degrees[j]) for (i, j), sp in self._product.items()
        }
        self._dvec = {g: self.sparse_vector(sp, self.degrees[g] + 1) for g, sp in self._differential.items()}
        self._mult_tables: Dict[Tuple[int, int], List[List[Vector]]] = {}
        self.tensor_info: Optional[TensorInfo] = None
        if validate:
            self.validate()

    def _equal_in_quotient(self, a: Sparse, b: Sparse, d: int) -> bool:
        va = self.sparse_vector(a, d)
        vb = self.sparse_vector(b, d)
        return is_zero(self.module.reduce(d, [x - y for x, y in zip(va, vb)]))

    # -- structure constants -----------------------------------------------

    def product_sparse(self, i: int, j: int) -> Sparse:
        s = self.base.nvars
        if i == self.unit:
            return {j: KPolynomial.constant(s)}
        if j == self.unit:
            return {i: KPolynomial.constant(s)}
        return dict(self._product.get((i, j), {}))

    def differential_sparse(self, g: int) -> Sparse:
        return dict(self._differential.get(g, {}))

    def _pair_vector(self, i: int, j: int) -> Optional[Vector]:
        if i == self.unit:
            return self.module.generator_vector(j)
        if j == self.unit:
            return self.module.generator_vector(i)
        return self._pvec.get((i, j))

    def _free_product(self, d1: int, f1: Sequence[Fraction], d2: int, f2: Sequence[Fraction]) -> List[Fraction]:
        K = self.base
        out = [ZERO] * self.module.free_dim(d1 + d2)
        right = list(self._blocks(d2, f2))
        for g, k1, U in self._blocks(d1, f1):
            for h, k2, W in right:
                pv = self._pair_vector(g, h)
                if pv is None:
                    continue
                UW = K.multiply(k1, U, k2, W)
                if is_zero(UW):
                    continue
                w = self.module.act(k1 + k2, UW, self.degrees[g] + self.degrees[h], pv)
                for i, x in enumerate(w):
                    if x:
                        out[i] += x
        return out

    def _table(self, d1: int, d2: int) -> List[List[Vector]]:
        key = (d1, d2)
        if key not in self._mult_tables:
            n1, n2 = self.dim(d1), self.dim(d2)
            lifts1 = [self.module.lift(d1, unit_vector(n1, a)) for a in range(n1)]
            lifts2 = [self.module.lift(d2, unit_vector(n2, b)) for b in range(n2)]
            self._mult_tables[key] = [
                [self.module.reduce(d1 + d2, self._free_product(d1, l1, d2, l2)) for l2 in lifts2] for l1 in lifts1
            ]
        return self._mult_tables[key]

    # -- ring protocol -----------------------------------------------------

    def multiply(self, d1: int, v1: Sequence[Fraction], d2: int, v2: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.dim(d1 + d2)
        if not out:
            return ()
        table = self._table(d1, d2)
        for a, ca in enumerate(v1):
            if not ca:
                continue
            row = table[a]
            for b, cb in enumerate(v2):
                if not cb:
                    continue
                c = ca * cb
                for k, x in enumerate(row[b]):
                    if x:
                        out[k] += c * x
        return tuple(out)

    def unit_vector(self) -> Vector:
        return self.gen_vector(self.unit)

    def scalar(self, p: KPolynomial) -> Tuple[Optional[int], Vector]:
        """The element ``p * 1`` as (degree, quotient coordinates)."""
        e = self.base.poly_degree(p)
        if e is None:
            return None, ()
        return e, self.module.reduce(e, self.sparse_vector({self.unit: p}, e))

    def algebra_generators(self) -> List[Tuple[int, Vector]]:
        out = []
        for i in range(self.base.nvars):
            d, v = self.scalar(self.base.variable(i))
            if not is_zero(v):
                out.append((d, v))
        for g, d in enumerate(self.degrees):
            if g != self.unit and d != 0:
                v = self.gen_vector(g)
                if not is_zero(v):
                    out.append((d, v))
        return out

    def element_degree(self, e) -> Optional[int]:
        if e is None or is_zero(e[1]):
            return None
        return e[0]

    def element_vector(self, e, d: int) -> Vector:
        if e is None:
            return (ZERO,) * self.dim(d)
        if e[0] != d:
            raise PresentationError(f"element of degree {e[0]} used in degree {d}")
        return tuple(e[1])

    def element_from_vector(self, d: int, v: Sequence[Fraction]):
        return (d, tuple(v))

    def zero_element(self):
        return None

    def basis_labels(self, d: int) -> List[str]:
        return self.module.basis_labels(d)

    @property
    def is_regular(self) -> bool:
        return False

    @property
    def nvars(self) -> int:
        return len(self.algebra_generators())

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    # -- properties ----------------------------------------------------------

    def is_connected(self) -> bool:
        """A^i = 0 for i < 0 and A^0 = Q."""
        lo = min(self.degrees)
        return all(self.dim(d) == 0 for d in range(lo, 0)) and self.dim(0) == 1

    def is_base_only(self) -> bool:
        """The algebra is K itself: a single free unit generator."""
        return self.module.ngens == 1 and not self.module.relations and not self._dvec

    def validate(self) -> None:
        """Check unit, associativity, d^2 = 0, Leibniz and compatibility with relations."""
        n = self.ngens
        degs = self.degrees
        M = self.module
        if self.unit in self._differential and not is_zero(M.reduce(1, self._dvec[self.unit])):
            raise PresentationError("the differential must vanish on the unit")
        gv = [self.gen_vector(g) for g in range(n)]
        others = [g for g in range(n) if g != self.unit]
        for g in range(n):
            dd = self.differential(degs[g] + 1, self.differential(degs[g], gv[g]))
            if not is_zero(dd):
                raise PresentationError("d^2 is not zero", generator=M.generators[g][0])
        for a, b, c in itertools.product(others, repeat=3):
            da, db, dc = degs[a], degs[b], degs[c]
            left = self.multiply(da + db, self.multiply(da, gv[a], db, gv[b]), dc, gv[c])
            right = self.multiply(da, gv[a], db + dc, self.multiply(db, gv[b], dc, gv[c]))
            if left != right:
                raise PresentationError("product is not associative", triple=[M.generators[x][0] for x in (a, b, c)])
        for a, b in itertools.product(others, repeat=2):
            da, db = degs[a], degs[b]
            lhs = self.differential(da + db, self.multiply(da, gv[a], db, gv[b]))
            t1 = self.multiply(da + 1, self.differential(da, gv[a]), db, gv[b])
            t2 = self.multiply(da, gv[a], db + 1, self.differential(db, gv[b]))
            sign = -1 if da % 2 else 1
            rhs = tuple(x + sign * y for x, y in zip(t1, t2))
            if lhs != rhs:
                raise PresentationError("Leibniz rule fails", pair=[M.generators[a][0], M.generators[b][0]])
        for e, r in zip(M.relation_degrees, M.relations):
            f = M.element_vector(r, e)
            if not is_zero(M.reduce(e + 1, self._diff_free(e, f))):
                raise PresentationError("differential does not respect a relation")
            for h in range(n):
                hf = M.generator_vector(h)
                dh = degs[h]
                if not is_zero(M.reduce(e + dh, self._free_product(e, f, dh, hf))):
                    raise PresentationError("product does not respect a relation (right factor)")
                if not is_zero(M.reduce(e + dh, self._free_product(dh, hf, e, f))):
                    raise PresentationError("product does not respect a relation (left factor)")

    def __repr__(self) -> str:
        return f"DgAlgebraPresentation({self.name or '?'}: {self.ngens} gens over {self.base!r})"


@dataclass(frozen=True)
class TensorInfo:
    """Bookkeeping for ``A (x) B``: factors and the index of each generator pair."""

    left: DgAlgebraPresentation
    right: DgAlgebraPresentation
    pairs: Dict[Tuple[int, int], int]
    over_field: bool
    left_positions: Tuple[int, ...]
    right_positions: Tuple[int, ...]


def free_algebra_over_base(K: GradedPolyRing, name: str = "K") -> DgAlgebraPresentation:
    """K itself as a dg K-algebra (zero differential)."""
    return DgAlgebraPresentation(K, GradedModulePresentation(K, [("1", 0)]), name=name)


def quotient_of_base(K: GradedPolyRing, ideal: Sequence[KPolynomial], name: str = "") -> DgAlgebraPresentation:
    """K/(ideal) as a dg K-algebra with zero differential."""
    M = GradedModulePresentation(K, [("1", 0)], [(p,) for p in ideal])
    return DgAlgebraPresentation(K, M, name=name or "K/I")


def algebra_from_basis(
    generators: Sequence[Tuple[str, int]],
    product: Mapping[Tuple[int, int], Mapping[int, object]] | None = None,
    differential: Mapping[int, Mapping[int, object]] | None = None,
    name: str = "",
    validate: bool = True,
) -> DgAlgebraPresentation:
    """A finite dimensional dg Q-algebra from a basis; generator 0 is the unit."""
    Q = rational_base()
    M = GradedModulePresentation(Q, generators)
    return DgAlgebraPresentation(Q, M, 0, product, differential, name=name, validate=validate)


def truncated_polynomial_algebra(n: int, degree: int = 2, name: str = "") -> DgAlgebraPresentation:
    """Q[X]/(X^n) with |X| = ``degree`` as a finite dg Q-algebra."""
    if degree % 2 and n > 2:
        raise ValueError("odd generators square to zero")
    gens = [("1", 0)] + [(f"X^{k}" if k > 1 else "X", k * degree) for k in range(1, n)]
    prod = {(i, j): {i + j: 1} for i in range(1, n) for j in range(1, n) if i + j < n}
    return algebra_from_basis(gens, prod, name=name or f"Q[X]/(X^{n})")


def commutative_quotient_algebra(ring, name: str = "") -> DgAlgebraPresentation:
    """A finite dimensional graded-commutative ring (GradedCommRing) as a dg Q-algebra."""
    top = ring.top_degree()
    if top is None:
        raise ValueError("ring is not finite dimensional")
    basis: List[Tuple[int, int]] = []
    gens: List[Tuple[str, int]] = []
    index: Dict[Tuple[int, int], int] = {}
    for d in range(top + 1):
        for k, lab in enumerate(ring.basis_labels(d)):
            index[(d, k)] = len(gens)
            basis.append((d, k))
            gens.append((lab if lab else "1", d))
    prod: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i, (d1, k1) in enumerate(basis):
        for j, (d2, k2) in enumerate(basis):
            if i == 0 or j == 0 or d1 + d2 > top:
                continue
            v = ring.multiply(d1, unit_vector(ring.dim(d1), k1), d2, unit_vector(ring.dim(d2), k2))
            sp = {index[(d1 + d2, k)]: c for k, c in enumerate(v) if c}
            if sp:
                prod[(i, j)] = sp
    return algebra_from_basis(gens, prod, name=name or repr(ring))


def over_rationals(A: DgAlgebraPresentation) -> DgAlgebraPresentation:
    """Restrict scalars to Q when A is finite dimensional over Q."""
    if A.base.nvars == 0:
        return A
    rng = A.support_range()
    if rng is None:
        raise HypothesisViolated("finite dimensional over Q", message="algebra is not finite dimensional over Q")
    basis = [(d, k) for d in rng for k in range(A.dim(d))]
    index = {b: i for i, b in enumerate(basis)}
    unit_pos = index[(0, 0)] if A.dim(0) == 1 else None
    if unit_pos is None or A.unit_vector() != (ONE,):
        raise HypothesisViolated("A^0 = Q", degree=0)
    order = [unit_pos] + [i for i in range(len(basis)) if i != unit_pos]
    pos = {old: new for new, old in enumerate(order)}
    labels = {d: A.basis_labels(d) for d in rng}
    gens = [(labels[basis[o][0]][basis[o][1]] or "1", basis[o][0]) for o in order]
    prod, diff = {}, {}
    for a, b in itertools.product(range(len(basis)), repeat=2):
        (d1, k1), (d2, k2) = basis[a], basis[b]
        if pos[a] == 0 or pos[b] == 0:
            continue
        v = A.multiply(d1, unit_vector(A.dim(d1), k1), d2, unit_vector(A.dim(d2), k2))
        sp = {pos[index[(d1 + d2, k)]]: c for k, c in enumerate(v) if c}
        if sp:
            prod[(pos[a], pos[b])] = sp
    for a, (d, k) in enumerate(basis):
        v = A.differential(d, unit_vector(A.dim(d), k))
        sp = {pos[index[(d + 1, j)]]: c for j, c in enumerate(v) if c}
        if sp:
            diff[pos[a]] = sp
    gens[0] = ("1", 0)
    return algebra_from_basis(gens, prod, diff, name=A.name, validate=False)


# ---------------------------------------------------------------------------
# modules


class DgModulePresentation(_Degreewise):
    """A left dg module over a dg K-algebra, finitely generated as a K-module.

    ``action`` maps (algebra generator, module generator) to a K-combination
    of module generators; the unit acts as the identity and missing pairs
    act by zero.  ``unbounded`` marks a finite truncation of a module whose
    cohomology continues past the presented degrees.
    """

    def __init__(
        self,
        over: DgAlgebraPresentation,
        module: GradedModulePresentation,
        action: Mapping[Tuple[int, int], object] | None = None,
        differential: Mapping[int, object] | None = None,
        unbounded: bool = False,
        name: str = "",
        validate: bool = True,
    ):
        if module.ring != over.base:
            raise PresentationError("module must be presented over the algebra's base ring")
        self.over = over
        self.base = over.base
        self.module = module
        self.unbounded = unbounded
        self.name = name
        n, s = module.ngens, self.base.nvars
        self._action: Dict[Tuple[int, int], Sparse] = {}
        for (a, m), val in (action or {}).items():
            if a == over.unit:
                continue
            sp = _sparse(val, n, s)
            if sp:
                self._action[(a, m)] = sp
        self._differential: Dict[int, Sparse] = {}
        for g, val in (differential or {}).items():
            sp = _sparse(val, n, s)
            if sp:
                self._differential[int(g)] = sp
        self._avec = {
            (a, m): self.sparse_vector(sp, over.degrees[a] + self.degrees[m]) for (a, m), sp in self._action.items()
        }
        self._dvec = {g: self.sparse_vector(sp, self.degrees[g] + 1) for g, sp in self._differential.items()}
        self._tables: Dict[Tuple[int, int], List[List[Vector]]] = {}
        if validate:
            self.validate()

    def action_sparse(self, a: int, m: int) -> Sparse:
        if a == self.over.unit:
            return {m: KPolynomial.constant(self.base.nvars)}
        return dict(self._action.get((a, m), {}))

    def differential_sparse(self, g: int) -> Sparse:
        return dict(self._differential.get(g, {}))

    def _pair_vector(self, a: int, m: int) -> Optional[Vector]:
        if a == self.over.unit:
            return self.module.generator_vector(m)
        return self._avec.get((a, m))

    def _free_act(self, d1: int, f1: Sequence[Fraction], d2: int, f2: Sequence[Fraction]) -> List[Fraction]:
        A = self.over
        K = self.base
        out = [ZERO] * self.module.free_dim(d1 + d2)
        right = list(self._blocks(d2, f2))
        for a, k1, U in A._blocks(d1, f1):
            for m, k2, W in right:
                pv = self._pair_vector(a, m)
                if pv is None:
                    continue
                UW = K.multiply(k1, U, k2, W)
                if is_zero(UW):
                    continue
                w = self.module.act(k1 + k2, UW, A.degrees[a] + self.degrees[m], pv)
                for i, x in enumerate(w):
                    if x:
                        out[i] += x
        return out

    def act(self, d1: int, av: Sequence[Fraction], d2: int, mv: Sequence[Fraction]) -> Vector:
        """Algebra element (quotient coordinates, degree d1) times module element."""
        key = (d1, d2)
        if key not in self._tables:
            A = self.over
            n1, n2 = A.dim(d1), self.dim(d2)
            l1 = [A.module.lift(d1, unit_vector(n1, i)) for i in range(n1)]
            l2 = [self.module.lift(d2, unit_vector(n2, j)) for j in range(n2)]
            self._tables[key] = [[self.module.reduce(d1 + d2, self._free_act(d1, x, d2, y)) for y in l2] for x in l1]
        table = self._tables[key]
        out = [ZERO] * self.dim(d1 + d2)
        for i, ca in enumerate(av):
            if ca:
                for j, cm in enumerate(mv):
                    if cm:
                        for k, x in enumerate(table[i][j]):
                            if x:
                                out[k] += ca * cm * x
        return tuple(out)

    def validate(self) -> None:
        A = self.over
        M = self.module
        adeg, mdeg = A.degrees, self.degrees
        av = [A.gen_vector(a) for a in range(A.ngens)]
        mv = [self.gen_vector(m) for m in range(self.ngens)]
        others = [a for a in range(A.ngens) if a != A.unit]
        for m in range(self.ngens):
            if not is_zero(self.differential(mdeg[m] + 1, self.differential(mdeg[m], mv[m]))):
                raise PresentationError("d^2 is not zero on the module", generator=M.generators[m][0])
        for a, b, m in itertools.product(others, others, range(self.ngens)):
            left = self.act(adeg[a], av[a], adeg[b] + mdeg[m], self.act(adeg[b], av[b], mdeg[m], mv[m]))
            ab = A.multiply(adeg[a], av[a], adeg[b], av[b])
            right = self.act(adeg[a] + adeg[b], ab, mdeg[m], mv[m])
            if left != right:
                raise PresentationError("action is not associative", triple=[A.module.generators[a][0], A.module.generators[b][0], M.generators[m][0]])
        for a, m in itertools.product(others, range(self.ngens)):
            da, dm = adeg[a], mdeg[m]
            lhs = self.differential(da + dm, self.act(da, av[a], dm, mv[m]))
            t1 = self.act(da + 1, A.differential(da, av[a]), dm, mv[m])
            t2 = self.act(da, av[a], dm + 1, self.differential(dm, mv[m]))
            sign = -1 if da % 2 else 1
            if lhs != tuple(x + sign * y for x, y in zip(t1, t2)):
                raise PresentationError("Leibniz rule fails on the module", pair=[A.module.generators[a][0], M.generators[m][0]])
        for e, r in zip(M.relation_degrees, M.relations):
            f = M.element_vector(r, e)
            if not is_zero(M.reduce(e + 1, self._diff_free(e, f))):
                raise PresentationError("module differential does not respect a relation")
            for a in others:
                af = A.module.generator_vector(a)
                if not is_zero(M.reduce(adeg[a] + e, self._free_act(adeg[a], af, e, f))):
                    raise PresentationError("action does not respect a module relation")
        for e, r in zip(A.module.relation_degrees, A.module.relations):
            f = A.module.element_vector(r, e)
            for m in range(self.ngens):
                if not is_zero(M.reduce(e + mdeg[m], self._free_act(e, f, mdeg[m], M.generator_vector(m)))):
                    raise PresentationError("action does not respect an algebra relation")

    def is_zero_module(self, window: Optional[DegreeWindow] = None) -> bool:
        if not self.ngens:
            return True
        rng = self.support_range()
        if rng is not None:
            return all(self.dim(d) == 0 for d in rng)
        return False

    def to_ring_module(self) -> GradedModulePresentation:
        """The underlying graded module over the algebra viewed as a ring.

        Generators are the module generators; relations are the K-relations
        together with ``a m - (a . m)`` for every algebra generator ``a``.
        """
        A = self.over
        M = self.module
        rels = []
        for e, r in zip(M.relation_degrees, M.relations):
            row = []
            for g, p in enumerate(r):
                d, v = A.scalar(p)
                row.append(None if d is None else (d, v))
            rels.append(row)
        for a in range(A.ngens):
            if a == A.unit:
                continue
            for m in range(self.ngens):
                total = A.degrees[a] + self.degrees[m]
                row: List[object] = [None] * self.ngens
                entries: Dict[int, Tuple[int, List[Fraction]]] = {}
                entries[m] = (A.degrees[a], list(A.gen_vector(a)))
                for j, p in self.action_sparse(a, m).items():
                    d, v = A.scalar(p)
                    if d is None:
                        continue
                    if j in entries:
                        if entries[j][0] != d:
                            raise PresentationError("inhomogeneous action")
                        entries[j] = (d, [x - y for x, y in zip(entries[j][1], v)])
                    else:
                        entries[j] = (d, [-y for y in v])
                for j, (d, v) in entries.items():
                    if not is_zero(v) and d + self.degrees[j] == total:
                        row[j] = (d, tuple(v))
                if any(x is not None for x in row):
                    rels.append(row)
        return GradedModulePresentation(A, M.generators, rels, name=self.name or "M")

    def __repr__(self) -> str:
        return f"DgModulePresentation({self.name or '?'}: {self.ngens} gens over {self.over.name or '?'})"


def augmentation_module(A: DgAlgebraPresentation) -> DgModulePresentation:
    """Q over a connected algebra: every positive-degree generator acts by zero."""
    K = A.base
    M = GradedModulePresentation(K, [("q", 0)], [(K.variable(i),) for i in range(K.nvars)], name="Q")
    return DgModulePresentation(A, M, name="augmentation")


def regular_module(A: DgAlgebraPresentation) -> DgModulePresentation:
    """A as a left module over itself."""
    action = {(a, m): A.product_sparse(a, m) for a in range(A.ngens) for m in range(A.ngens) if a != A.unit}
    diff = {g: A.differential_sparse(g) for g in range(A.ngens)}
    return DgModulePresentation(A, A.module, action, diff, name=f"{A.name or 'A'} (regular)")


def zero_module(A: DgAlgebraPresentation) -> DgModulePresentation:
    return DgModulePresentation(A, GradedModulePresentation(A.base, []), name="0")


def semifree_module(
    A: DgAlgebraPresentation,
    degrees: Sequence[int],
    differentials: Sequence[Mapping[int, Sequence[Fraction]]],
    name: str = "",
) -> DgModulePresentation:
    """Iterated cone of shifted free modules over a finite dimensional Q-algebra.

    Cell ``i`` is a free generator ``e_i`` of degree ``degrees[i]`` with
    ``d(e_i) = sum_j c_j e_j`` over earlier cells ``j``; ``differentials[i]``
    maps ``j`` to the quotient coordinates of ``c_j`` in ``A`` (degree
    ``degrees[i] + 1 - degrees[j]``).  The module is spanned over Q by
    ``b e_i`` for basis elements ``b`` of ``A``.
    """
    if A.base.nvars:
        raise ValueError("semifree modules are built over Q-algebras")
    rng = A.support_range()
    basis = [(d, k) for d in rng for k in range(A.dim(d))] if rng else []
    cells = []
    for i, deg in enumerate(degrees):
        for (d, k) in basis:
            cells.append((i, d, k))
    index = {c: n for n, c in enumerate(cells)}
    gens = [(f"{A.basis_labels(d)[k] or '1'}*e{i}", degrees[i] + d) for (i, d, k) in cells]

    def expand(i, avd, av) -> Dict[int, Fraction]:
        # (element of A in degree avd) * e_i as a combination of cells
        return {index[(i, avd, k)]: c for k, c in enumerate(av) if c}

    action: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    agen = {}
    for a in range(A.ngens):
        if a == A.unit:
            continue
        agen[a] = (A.degrees[a], A.gen_vector(a))
    for (i, d, k) in cells:
        b = unit_vector(A.dim(d), k)
        for a, (da, av) in agen.items():
            prod = A.multiply(da, av, d, b)
            if any(prod):
                action[(a, index[(i, d, k)])] = expand(i, da + d, prod)
    diff: Dict[int, Dict[int, Fraction]] = {}
    for (i, d, k) in cells:
        b = unit_vector(A.dim(d), k)
        out: Dict[int, Fraction] = {}
        db = A.differential(d, b)
        for n, c in expand(i, d + 1, db).items():
            out[n] = out.get(n, ZERO) + c
        sign = -1 if d % 2 else 1
        for j, cj in differentials[i].items():
            cdeg = degrees[i] + 1 - degrees[j]
            prod = A.multiply(d, b, cdeg, tuple(cj))
            for n, c in expand(j, d + cdeg, prod).items():
                out[n] = out.get(n, ZERO) + sign * c
        out = {n: c for n, c in out.items() if c}
        if out:
            diff[index[(i, d, k)]] = out
    Q = A.base
    M = GradedModulePresentation(Q, gens, name=name or "semifree")
    return DgModulePresentation(A, M, action, diff, name=name or "semifree")


def shift(M: DgModulePresentation, n: int) -> DgModulePresentation:
    """[n]M: degrees drop by n, differential times (-1)^n, action twisted by (-1)^{n|a|}."""
    K = M.base
    gens = [(name, d - n) for name, d in M.module.generators]
    mod = GradedModulePresentation(K, gens, M.module.relations, name=f"[{n}]{M.module.name}")
    sd = -1 if n % 2 else 1
    diff = {g: {j: p.scale(sd) for j, p in sp.items()} for g, sp in M._differential.items()}
    action = {}
    for (a, m), sp in M._action.items():
        sa = -1 if (n * M.over.degrees[a]) % 2 else 1
        action[(a, m)] = {j: p.scale(sa) for j, p in sp.items()}
    return DgModulePresentation(M.over, mod, action, diff, M.unbounded, name=f"[{n}]{M.name}", validate=False)


# ---------------------------------------------------------------------------
# tensor products, opposites, bimodules


def _base_union(KA: GradedPolyRing, KB: GradedPolyRing, over_field: bool):
    if not over_field:
        if KA is not KB and KA != KB:
            raise PresentationError("tensor over K needs a common base")
        n = KA.nvars
        return KA, tuple(range(n)), tuple(range(n))
    if KA.nvars == 0 and KB.nvars == 0:
        return KA, (), ()
    gens = [(f"{nm}_l", d) for nm, d in KA.generators] + [(f"{nm}_r", d) for nm, d in KB.generators]
    K = GradedPolyRing(gens)
    return K, tuple(range(KA.nvars)), tuple(range(KA.nvars, KA.nvars + KB.nvars))


def _embed(sp: Sparse, nvars: int, positions: Sequence[int], remap: Callable[[int], int]) -> Sparse:
    return {remap(g): p.embed(nvars, positions) for g, p in sp.items()}


def tensor_over_K(A: DgAlgebraPresentation, B: DgAlgebraPresentation, over_field: bool = False) -> DgAlgebraPresentation:
    """A (x)_K B, or A (x)_Q B when ``over_field`` (the bases are then combined)."""
    K, lpos, rpos = _base_union(A.base, B.base, over_field)
    s = K.nvars
    pairs = {}
    gens = []
    for g, (gn, gd) in enumerate(A.module.generators):
        for h, (hn, hd) in enumerate(B.module.generators):
            pairs[(g, h)] = len(gens)
            gens.append((f"{gn}|{hn}", gd + hd))
    rels = []
    n = len(gens)
    for r in A.module.relations:
        for h in range(B.ngens):
            row = [KPolynomial.zero(s)] * n
            for g, p in enumerate(r):
                row[pairs[(g, h)]] = p.embed(s, lpos)
            rels.append(row)
    for r in B.module.relations:
        for g in range(A.ngens):
            row = [KPolynomial.zero(s)] * n
            for h, p in enumerate(r):
                row[pairs[(g, h)]] = p.embed(s, rpos)
            rels.append(row)
    M = GradedModulePresentation(K, gens, rels, name=f"{A.name}(x){B.name}")
    prod = {}
    for (g, h), i in pairs.items():
        for (g2, h2), j in pairs.items():
            if i == pairs[(A.unit, B.unit)] or j == pairs[(A.unit, B.unit)]:
                continue
            left = A.product_sparse(g, g2)
            right = B.product_sparse(h, h2)
            if not left or not right:
                continue
            sign = -1 if (B.degrees[h] * A.degrees[g2]) % 2 else 1
            out: Sparse = {}
            for gi, p in left.items():
                for hj, q in right.items():
                    c = p.embed(s, lpos) * q.embed(s, rpos)
                    _add_sparse(out, {pairs[(gi, hj)]: c}, sign=sign)
            if out:
                prod[(i, j)] = out
    diff = {}
    for (g, h), i in pairs.items():
        out = {}
        for gi, p in A.differential_sparse(g).items():
            _add_sparse(out, {pairs[(gi, h)]: p.embed(s, lpos)})
        sign = -1 if A.degrees[g] % 2 else 1
        for hj, q in B.differential_sparse(h).items():
            _add_sparse(out, {pairs[(g, hj)]: q.embed(s, rpos)}, sign=sign)
        if out:
            diff[i] = out
    T = DgAlgebraPresentation(K, M, pairs[(A.unit, B.unit)], prod, diff, name=f"{A.name or 'A'}(x){B.name or 'B'}", validate=False)
    T.tensor_info = TensorInfo(A, B, pairs, over_field, lpos, rpos)
    return T


def opposite(A: DgAlgebraPresentation) -> DgAlgebraPresentation:
    """A^op with a * b = (-1)^{|a||b|} b a."""
    prod = {}
    for i in range(A.ngens):
        for j in range(A.ngens):
            if A.unit in (i, j):
                continue
            sp = A.product_sparse(j, i)
            if sp:
                sign = -1 if (A.degrees[i] * A.degrees[j]) % 2 else 1
                prod[(i, j)] = {g: p.scale(sign) for g, p in sp.items()}
    diff = {g: A.differential_sparse(g) for g in range(A.ngens)}
    return DgAlgebraPresentation(A.base, A.module, A.unit, prod, diff, name=f"{A.name or 'A'}^op", validate=False)


def diagonal_bimodule(A: DgAlgebraPresentation, over_field: bool = False) -> DgModulePresentation:
    """A as a left module over A (x) A^op, via (a (x) b) m = (-1)^{|b||m|} a m b."""
    R = tensor_over_K(A, opposite(A), over_field)
    info = R.tensor_info
    K = R.base
    s = K.nvars
    lpos, rpos = info.left_positions, info.right_positions
    rels = [[p.embed(s, lpos) for p in r] for r in A.module.relations]
    if over_field and A.base.nvars:
        for i in range(A.base.nvars):
            diff_var = K.variable(lpos[i]) - K.variable(rpos[i])
            for m in range(A.ngens):
                row = [KPolynomial.zero(s)] * A.ngens
                row[m] = diff_var
                rels.append(row)
    M = GradedModulePresentation(K, A.module.generators, rels, name="diagonal")
    action = {}
    for (g, h), i in info.pairs.items():
        if i == R.unit:
            continue
        for m in range(A.ngens):
            sign = -1 if (A.degrees[h] * A.degrees[m]) % 2 else 1
            out: Sparse = {}
            for j, p in A.product_sparse(m, h).items():
                for k, q in A.product_sparse(g, j).items():
                    _add_sparse(out, {k: (p * q).embed(s, lpos)}, sign=sign)
            if out:
                action[(i, m)] = out
    diff = {g: _embed(A.differential_sparse(g), s, lpos, lambda x: x) for g in range(A.ngens)}
    return DgModulePresentation(R, M, action, diff, name=f"diagonal of {A.name or 'A'}", validate=False)


def restrict(N: DgModulePresentation, side: str) -> DgModulePresentation:
    """Restrict a module over a tensor product A (x) B to A (``side="left"``) or B (``"right"``)."""
    R = N.over
    info = R.tensor_info
    if info is None:
        raise ReductionUnavailable("restriction needs a module over a tensor product")
    if info.over_field and R.base.nvars:
        raise ReductionUnavailable("restriction of modules over a tensor over Q with a nontrivial base")
    if side == "left":
        C = info.left
        index = {a: info.pairs[(a, info.right.unit)] for a in range(C.ngens)}
    elif side == "right":
        C = info.right
        index = {b: info.pairs[(info.left.unit, b)] for b in range(C.ngens)}
    else:
        raise ValueError("side must be 'left' or 'right'")
    if C.base != N.base:
        raise ReductionUnavailable("factor and module use different base rings")
    action = {}
    for a, i in index.items():
        if a == C.unit:
            continue
        for m in range(N.ngens):
            sp = N.action_sparse(i, m)
            if sp:
                action[(a, m)] = sp
    diff = {g: N.differential_sparse(g) for g in range(N.ngens)}
    return DgModulePresentation(C, N.module, action, diff, N.unbounded, name=f"{N.name} restricted to {C.name}", validate=False)


def bimodule_from_actions(
    B: DgAlgebraPresentation,
    A: DgAlgebraPresentation,
    module: GradedModulePresentation,
    left: Mapping[Tuple[int, int], object] | None = None,
    right: Mapping[Tuple[int, int], object] | None = None,
    differential: Mapping[int, object] | None = None,
    unbounded: bool = False,
    name: str = "N",
) -> DgModulePresentation:
    """A B-A-bimodule as a left module over B (x) A^op.

    ``left[(b, m)]`` gives ``b m`` and ``right[(m, a)]`` gives ``m a``; the
    pair ``(b, a)`` acts by ``(-1)^{|a||m|} b (m a)``.
    """
    R = tensor_over_K(B, opposite(A), over_field=False)
    info = R.tensor_info
    K = R.base
    s, n = K.nvars, module.ngens
    L = {k: _sparse(v, n, s) for k, v in (left or {}).items()}
    Rt = {k: _sparse(v, n, s) for k, v in (right or {}).items()}

    def lact(b, m):
        return {m: KPolynomial.constant(s)} if b == B.unit else L.get((b, m), {})

    def ract(m, a):
        return {m: KPolynomial.constant(s)} if a == A.unit else Rt.get((m, a), {})

    action = {}
    for (b, a), i in info.pairs.items():
        if i == R.unit:
            continue
        for m in range(n):
            sign = -1 if (A.degrees[a] * module.degrees[m]) % 2 else 1
            out: Sparse = {}
            for j, p in ract(m, a).items():
                for k, q in lact(b, j).items():
                    _add_sparse(out, {k: p * q}, sign=sign)
            if out:
                action[(i, m)] = out
    return DgModulePresentation(R, module, action, differential, unbounded, name=name)


# ---------------------------------------------------------------------------
# cohomology and structure checks


@dataclass(frozen=True)
class CohomologyReport:
    dims: GradedDimVector
    window: DegreeWindow
    complete: bool
    unbounded: bool = False

    def to_dict(self) -> dict:
        return {
            "dims": {str(d): n for d, n in self.dims.as_dict().items()},
            "window": [self.window.lo, self.window.hi],
            "complete": self.complete,
            "unbounded": self.unbounded,
        }


def cohomology_dim(X: _Degreewise, d: int) -> int:
    return X.dim(d) - rank(X.differential_matrix(d)) - rank(X.differential_matrix(d - 1))


def cohomology(X: _Degreewise, window: DegreeWindow) -> CohomologyReport:
    """dim H^d = dim ker d^d - dim im d^{d-1} for every d in the window."""
    dims = {d: cohomology_dim(X, d) for d in window}
    rng = X.support_range()
    unbounded = bool(getattr(X, "unbounded", False))
    complete = rng is not None and not unbounded and window.lo <= rng.start and window.hi >= rng.stop - 1
    if not X.ngens:
        complete = not unbounded
    return CohomologyReport(GradedDimVector(dims), window, complete, unbounded)


def full_cohomology(X: _Degreewise, window: Optional[DegreeWindow] = None) -> CohomologyReport:
    """Cohomology over the whole support when X is finite dimensional over Q."""
    rng = X.support_range()
    if rng is None or not X.ngens:
        w = window or DegreeWindow(0, 0)
        return cohomology(X, w)
    lo, hi = rng.start, rng.stop - 1
    if window is not None:
        lo, hi = min(lo, window.lo), max(hi, window.hi)
    return cohomology(X, DegreeWindow(lo, hi))


class Amplitude(str, enum.Enum):
    ZERO_MODULE = "ZERO_MODULE"
    UNBOUNDED = "UNBOUNDED"


def amplitude(r: CohomologyReport):
    """max - min of the support, or a sentinel for zero or unbounded cohomology."""
    if r.unbounded:
        return Amplitude.UNBOUNDED
    supp = r.dims.support()
    if not supp:
        return Amplitude.ZERO_MODULE
    return supp[-1] - supp[0]


@dataclass(frozen=True)
class QuasiIsoResult:
    ok: bool
    degree: Optional[int] = None
    reason: Optional[str] = None
    base_dim: Optional[int] = None
    cohomology_dim: Optional[int] = None

    def to_dict(self) -> dict:
        if self.ok:
            return {"result": "QUASI_ISO"}
        return {
            "result": "FAILS_AT",
            "degree": self.degree,
            "reason": self.reason,
            "base_dim": self.base_dim,
            "cohomology_dim": self.cohomology_dim,
        }


def required_window_top(K: GradedPolyRing, A: DgAlgebraPresentation) -> int:
    return 2 * max([A.max_presentation_degree()] + list(K.degrees))


def unit_map_in_degree(K: GradedPolyRing, A: DgAlgebraPresentation, d: int) -> Tuple[int, int, int, int]:
    """(dim K^d, dim H^d(A), rank of K^d -> H^d(A), dim Z^d)."""
    n = A.dim(d)
    B = A.differential_matrix(d - 1)
    Z = kernel_vectors(A.differential_matrix(d).to_rows(), n)
    bvecs = B.columns()
    rb = rank_of_vectors(bvecs, n)
    kdim = K.dim(d)
    imgs = [A.scalar(K.vector_to_poly(d, unit_vector(kdim, i)))[1] or (ZERO,) * n for i in range(kdim)]
    rboth = rank_of_vectors(bvecs + imgs, n)
    return kdim, len(Z) - rb, rboth - rb, len(Z)


def check_quasi_iso_structure(K: GradedPolyRing, A: DgAlgebraPresentation, window: DegreeWindow) -> QuasiIsoResult:
    """Compare K with H(A) through the unit map, degree by degree.

    Raises :class:`WindowTooSmall` unless ``window.hi`` is at least twice the
    largest presentation degree.
    """
    if A.base != K:
        raise PresentationError("algebra is not presented over this base")
    need = required_window_top(K, A)
    if window.hi < need:
        raise WindowTooSmall(f"window top {window.hi} is below the certified bound {need}", required=need)
    for d in window:
        kdim, hdim, r, _ = unit_map_in_degree(K, A, d)
        if r < kdim:
            return QuasiIsoResult(False, d, "not injective", kdim, hdim)
        if r < hdim:
            return QuasiIsoResult(False, d, "not surjective", kdim, hdim)
    return QuasiIsoResult(True)


def connective_truncation(T: DgAlgebraPresentation, window: DegreeWindow) -> DgAlgebraPresentation:
    """A connective subalgebra U of T over Q with U -> T a quasi-isomorphism.

    U^0 = Q, U^1 = C + B where C lifts H^1 and B maps isomorphically onto
    d(T^1), and U^i = T^i for i > 1.
    """
    if T.base.nvars:
        raise HypothesisViolated("base is Q", message="connective truncation is defined over Q")
    rng = T.support_range()
    lo = min(window.lo, rng.start if rng else 0)
    for d in range(lo, 0):
        if cohomology_dim(T, d):
            raise HypothesisViolated("H^i = 0 for i < 0", degree=d)
    if cohomology_dim(T, 0) != 1:
        raise HypothesisViolated("H^0 = Q", degree=0)
    top = rng.stop - 1 if rng else 0
    # U^1: lift of H^1 plus a complement of Z^1 in T^1
    n1 = T.dim(1)
    d1 = T.differential_matrix(1)
    Z1 = kernel_vectors(d1.to_rows(), n1)
    B1 = T.differential_matrix(0).columns()
    sp = Subspace(n1, B1)
    C = [z for z in Z1 if sp.add(z)]
    zsp = Subspace(n1, Z1)
    comp = [unit_vector(n1, i) for i in range(n1) if zsp.add(unit_vector(n1, i))]
    u1 = C + comp
    basis: List[Tuple[int, Vector]] = [(0, T.unit_vector())]
    basis += [(1, v) for v in u1]
    for d in range(2, top + 1):
        basis += [(d, unit_vector(T.dim(d), k)) for k in range(T.dim(d))]
    labels = ["1"] + [f"u1_{i}" for i in range(len(u1))]
    for d in range(2, top + 1):
        labels += T.basis_labels(d)
    gens = [(lab or f"b{i}", d) for i, (lab, (d, _)) in enumerate(zip(labels, basis))]
    by_degree: Dict[int, List[int]] = {}
    for i, (d, _) in enumerate(basis):
        by_degree.setdefault(d, []).append(i)
    u1_space_rows = [v for v in u1]

    def coords(d: int, v: Vector) -> Dict[int, Fraction]:
        if is_zero(v):
            return {}
        idx = by_degree.get(d, [])
        if d == 1:
            # solve v = sum c_i u1_i
            m = QMatrix.from_columns(u1_space_rows, n1)
            aug = [list(m.row(r)) + [v[r]] for r in range(n1)]
            sol = kernel_vectors(aug, len(u1) + 1)
            for s in sol:
                if s[-1]:
                    c = [-x / s[-1] for x in s[:-1]]
                    return {idx[i]: ci for i, ci in enumerate(c) if ci}
            raise PresentationError("product leaves the truncation")
        if d < 1:
            if d == 0:
                return {0: v[0] / basis[0][1][0]}
            raise PresentationError("product leaves the truncation")
        return {idx[k]: c for k, c in enumerate(v) if c}

    prod = {}
    diff = {}
    for i, (di, vi) in enumerate(basis):
        if i:
            dv = T.differential(di, vi)
            c = coords(di + 1, dv)
            if c:
                diff[i] = c
        for j, (dj, vj) in enumerate(basis):
            if i == 0 or j == 0:
                continue
            c = coords(di + dj, T.multiply(di, vi, dj, vj))
            if c:
                prod[(i, j)] = c
    return algebra_from_basis(gens, prod, diff, name=f"tau({T.name or 'T'})")


@dataclass(frozen=True)
class Obstruction:
    verdict: str  # NO_OBSTRUCTION or NOT_PERFECT
    witness: Optional[dict] = None

    @property
    def obstructed(self) -> bool:
        return self.verdict == "NOT_PERFECT"


def check_bounded_connected(A: DgAlgebraPresentation, window: Optional[DegreeWindow] = None) -> CohomologyReport:
    """Verify H^{<0}(A) = 0, H^0(A) = Q and bounded cohomology; return H(A)."""
    if A.base.nvars:
        A = over_rationals(A)
    rep = full_cohomology(A, window)
    for d in rep.dims.support():
        if d < 0:
            raise HypothesisViolated("H^i = 0 for i < 0", degree=d)
    if rep.dims[0] != 1:
        raise HypothesisViolated("H^0 = Q", degree=0)
    return rep


def amplitude_obstruction(A: DgAlgebraPresentation, M: DgModulePresentation, window: Optional[DegreeWindow] = None) -> Obstruction:
    """Necessary conditions for M to be perfect over A with bounded H(A) of top m > 0."""
    HA = check_bounded_connected(A, window)
    m = HA.dims.support()[-1]
    if m <= 0:
        raise HypothesisViolated("top cohomology degree m > 0", degree=m)
    if M.unbounded:
        return Obstruction("NOT_PERFECT", {"reason": "unbounded cohomology"})
    HM = full_cohomology(M, window)
    supp = HM.dims.support()
    if not supp:
        return Obstruction("NO_OBSTRUCTION", {"reason": "acyclic"})
    ampl = supp[-1] - supp[0]
    if len(supp) < 2:
        return Obstruction("NOT_PERFECT", {"reason": "fewer than two nonzero cohomology groups", "degree": supp[0], "amplitude": ampl, "m": m})
    if ampl < m:
        return Obstruction("NOT_PERFECT", {"reason": "amplitude below m", "amplitude": ampl, "m": m})
    if HM.dims[supp[-1]] < HA.dims[m]:
        return Obstruction(
            "NOT_PERFECT",
            {"reason": "top cohomology too small", "degree": supp[-1], "dim": HM.dims[supp[-1]], "required": HA.dims[m]},
        )
    return Obstruction("NO_OBSTRUCTION", {"amplitude": ampl, "m": m})


@dataclass(frozen=True)
class TriangularPresentation:
    """The triangular algebra [B 0; N A] given by its three pieces."""

    upper_left: DgAlgebraPresentation
    lower_right: DgAlgebraPresentation
    connecting: DgModulePresentation

    def __post_init__(self):
        if self.upper_left.base != self.lower_right.base:
            raise PresentationError("components must share the base ring")
