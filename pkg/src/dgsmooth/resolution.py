"""Minimal graded free resolutions, their totalization and the derived fiber.

The resolution is built stage by stage.  ``P_0`` is free on a lift of a
basis of ``M / R^{>0} M``; each later ``P_{-i-1}`` is free on a minimal
generating set of the kernel of the previous map.  Kernels are computed
degree by degree up to an internal degree bound, so every emitted map is
exact through that bound and every map reduces to zero modulo ``R^{>0}``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .exact import QMatrix, Subspace, Vector, ZERO, kernel_vectors, rank_of_vectors, unit_vector
from .graded import DegreeWindow, GradedDimVector, GradedModulePresentation


class Status(str, enum.Enum):
    COMPLETE = "COMPLETE"
    TRUNCATED = "TRUNCATED"


TRUNCATED = Status.TRUNCATED

MAX_EXTENSIONS = 3


@dataclass
class Stage:
    """One free module ``P_{-i}`` with the images of its generators.

    Images live in the free coordinates of the target (the free cover of
    ``M`` for ``i = 0``, otherwise ``P_{-i+1}``) at the generator's degree.
    """

    module: GradedModulePresentation
    images: Tuple[Vector, ...]

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self.module.degrees


@dataclass
class MinimalResolution:
    ring: object
    module: GradedModulePresentation
    stages: List[Stage]
    status: Status
    pd: Optional[int]
    degree_bound: int
    max_length: int
    certified: bool
    original_generators: Tuple[int, ...] = ()
    notes: List[str] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.stages) - 1

    @property
    def columns(self) -> List[Tuple[int, ...]]:
        """Generator degrees of P_0, P_{-1}, ..."""
        return [s.degrees for s in self.stages]

    def target(self, i: int) -> GradedModulePresentation:
        """Target (as a free module) of the map out of stage ``i``."""
        return self.module if i == 0 else self.stages[i - 1].module

    def map_entries(self, i: int) -> List[List[object]]:
        """Matrix of ring elements for the map out of ``P_{-i}``.

        Rows are indexed by target generators, columns by source generators.
        For ``i = 0`` this is the augmentation ``P_0 -> M`` expressed on the
        given generators of ``M``.
        """
        stage = self.stages[i]
        tgt = self.target(i)
        cols = [tgt.elements_from_vector(d, img) for d, img in zip(stage.degrees, stage.images)]
        return [[cols[c][r] for c in range(len(cols))] for r in range(tgt.ngens)]

    def degree_matrix(self, i: int, e: int) -> QMatrix:
        """Matrix of the map out of ``P_{-i}`` in internal degree ``e`` (free target coordinates)."""
        stage = self.stages[i]
        tgt = self.target(i)
        return QMatrix.from_columns(_image_columns(stage, tgt, e, reduce=False), tgt.free_dim(e))

    def is_minimal(self) -> bool:
        """Every map p_i (i <= -1) vanishes modulo the augmentation ideal."""
        for i in range(1, len(self.stages)):
            stage = self.stages[i]
            tgt = self.stages[i - 1].module
            for d, img in zip(stage.degrees, stage.images):
                for g, off, n in tgt.free_layout(d):
                    if tgt.degrees[g] == d and any(img[off:off + n]):
                        return False
        return True

    def generator_counts(self) -> List[Dict[int, int]]:
        out = []
        for s in self.stages:
            c: Dict[int, int] = {}
            for d in s.degrees:
                c[d] = c.get(d, 0) + 1
            out.append(c)
        return out

    def to_dict(self) -> dict:
        return {
            "columns": [list(c) for c in self.columns],
            "status": self.status.value,
            "pd": self.pd,
            "degree_bound": self.degree_bound,
            "max_length": self.max_length,
            "certified": self.certified,
        }


# ---------------------------------------------------------------------------
# construction


def default_max_length(ring) -> int:
    return ring.nvars + 1 if getattr(ring, "is_regular", False) else 8


def default_window(M: GradedModulePresentation) -> DegreeWindow:
    return DegreeWindow(-4, max(4 * M.max_presentation_degree(), 4))


def _degree_bound(ring, M: GradedModulePresentation, max_length: int, window: DegreeWindow) -> int:
    gen_degs = [d for d, _ in ring.algebra_generators()] or [1]
    top = ring.top_degree() or 0
    step = max(max(gen_degs), top)
    base = max(window.hi + max_length + 1, M.max_presentation_degree())
    return base + (max_length + 1) * step


def _image_columns(stage: Stage, tgt: GradedModulePresentation, e: int, reduce: bool) -> List[Vector]:
    cols = []
    P = stage.module
    for g, _, n in P.free_layout(e):
        gd = P.degrees[g]
        img = stage.images[g]
        for b in range(n):
            v = tgt.act(e - gd, unit_vector(n, b), gd, img)
            cols.append(tgt.reduce(e, v) if reduce else v)
    return cols


def _kernel_generators(stage: Stage, tgt: GradedModulePresentation, bound: int) -> Tuple[List[int], List[Vector]]:
    ring = tgt.ring
    P = stage.module
    gens = ring.algebra_generators()
    kernels: Dict[int, List[Vector]] = {}
    new_degrees: List[int] = []
    new_images: List[Vector] = []
    lo = P.min_degree
    if lo is None:
        return new_degrees, new_images
    for d in range(lo, bound + 1):
        n = P.free_dim(d)
        if not n:
            continue
        cols = _image_columns(stage, tgt, d, reduce=True)
        m = tgt.dim(d)
        rows = [[c[r] for c in cols] for r in range(m)]
        Z = kernel_vectors(rows, n)
        kernels[d] = Z
        if not Z:
            continue
        dec = Subspace(n)
        for xd, xv in gens:
            for z in kernels.get(d - xd, ()):
                dec.add(P.act(xd, xv, d - xd, z))
        for z in Z:
            if dec.add(z):
                new_degrees.append(d)
                new_images.append(z)
    return new_degrees, new_images


def _minimal_generators(M: GradedModulePresentation) -> List[int]:
    """Indices of input generators forming a basis of M / R^{>0} M.

    Greedy in input order, degree by degree: a generator is kept when its
    unit vector is independent of the constant parts of the relations in
    its degree and of the generators already kept.
    """
    chosen = []
    for d in sorted(set(M.degrees)):
        layout = M.free_layout(d)
        positions = [(g, off) for g, off, n in layout if M.degrees[g] == d]
        if not positions:
            continue
        sp = Subspace(len(positions))
        for row in M.relation_space(d).basis():
            sp.add([row[off] for _, off in positions])
        for k, (g, _) in enumerate(positions):
            if sp.add(unit_vector(len(positions), k)):
                chosen.append(g)
    return sorted(chosen, key=lambda g: (M.degrees[g], g))


def _build(ring, M: GradedModulePresentation, max_length: int, bound: int) -> MinimalResolution:
    chosen = _minimal_generators(M)
    P0 = GradedModulePresentation(ring, [(M.generators[g][0], M.degrees[g]) for g in chosen], name="P0")
    stages = [Stage(P0, tuple(M.generator_vector(g) for g in chosen))]
    pd = None
    status = Status.COMPLETE
    i = 0
    while True:
        tgt = M if i == 0 else stages[i - 1].module
        degs, imgs = _kernel_generators(stages[i], tgt, bound)
        if not degs:
            pd = i
            break
        if i == max_length:
            status = Status.TRUNCATED
            break
        Pn = GradedModulePresentation(ring, [(f"p{i + 1}_{k}", d) for k, d in enumerate(degs)], name=f"P-{i + 1}")
        stages.append(Stage(Pn, tuple(imgs)))
        i += 1
    return MinimalResolution(
        ring=ring,
        module=M,
        stages=stages,
        status=status,
        pd=pd,
        degree_bound=bound,
        max_length=max_length,
        certified=False,
        original_generators=tuple(chosen),
    )


def minimal_resolution(
    K,
    M: GradedModulePresentation,
    max_length: Optional[int] = None,
    window: Optional[DegreeWindow] = None,
    degree_bound: Optional[int] = None,
) -> MinimalResolution:
    """Minimal graded free resolution of ``M`` over its ring.

    Stops when a kernel vanishes (``pd`` is then exact, status COMPLETE) or
    after ``max_length`` syzygy stages (status TRUNCATED).  Over polynomial
    rings the last map is certified injective over the fraction field and
    the Euler characteristic is checked past the bound; a failed check
    raises the internal degree bound and recomputes.
    """
    ring = M.ring
    if K is not None and K != ring:
        raise ValueError("module is presented over a different ring")
    if max_length is None:
        max_length = default_max_length(ring)
    if window is None:
        window = default_window(M)
    bound = degree_bound if degree_bound is not None else _degree_bound(ring, M, max_length, window)
    for attempt in range(MAX_EXTENSIONS + 1):
        res = _build(ring, M, max_length, bound)
        if res.status is Status.TRUNCATED:
            res.certified = False
            return res
        ok, certified = _certify(res)
        res.certified = certified
        if ok or degree_bound is not None or attempt == MAX_EXTENSIONS:
            if not ok:
                res.notes.append("termination not certified beyond the internal degree bound")
            return res
        bound = 2 * bound + 2
    return res  # pragma: no cover


def _certify(res: MinimalResolution) -> Tuple[bool, bool]:
    """(consistent, certified) for a terminated resolution."""
    ring = res.ring
    M = res.module
    pd = res.pd
    if pd == 0:
        # the kernel of P_0 -> M is generated in relation degrees
        ok = res.degree_bound >= max(M.relation_degrees, default=0)
        return ok, ok
    last = res.stages[pd]
    top = ring.top_degree()
    if top is not None:
        ok = res.degree_bound >= max(last.degrees) + top
        return ok, ok
    if getattr(ring, "is_regular", False):
        injective = _generically_injective(res, pd)
        euler = _euler_consistent(res)
        return injective and euler, injective
    return True, False


def _euler_consistent(res: MinimalResolution, extra: Optional[int] = None) -> bool:
    """Alternating sum of Hilbert functions of the P_i against M, past the bound."""
    M = res.module
    ring = res.ring
    if extra is None:
        extra = 2 * max((d for d, _ in ring.algebra_generators()), default=2) * (ring.nvars + 1)
    lo = res.degree_bound + 1
    for e in range(lo, lo + extra + 1):
        chi = 0
        for i, s in enumerate(res.stages):
            chi += (-1) ** i * s.module.free_dim(e)
        if chi != M.dim(e):
            return False
    return True


def _polynomial_matrix(res: MinimalResolution, i: int):
    """Entries of the map out of ``P_{-i}`` as polynomials (regular rings only)."""
    return res.map_entries(i)


def _generically_injective(res: MinimalResolution, i: int) -> bool:
    """Full column rank over the fraction field of the polynomial ring."""
    entries = _polynomial_matrix(res, i)
    nrows = len(entries)
    ncols = len(entries[0]) if entries else len(res.stages[i].degrees)
    if ncols == 0:
        return True
    if ncols > nrows:
        return False
    ring = res.ring
    rng = random.Random(1729)
    points = [[Fraction(k + 2) for k in range(ring.nvars)]]
    points += [[Fraction(rng.randint(-997, 997)) for _ in range(ring.nvars)] for _ in range(4)]
    for pt in points:
        rows = [[p.evaluate(pt) for p in row] for row in entries]
        if rank_of_vectors(rows, ncols) == ncols:
            return True
    return _symbolic_rank(entries, ring) == ncols


def _symbolic_rank(entries, ring) -> int:
    import sympy
    from sympy.polys.matrices import DomainMatrix

    syms = sympy.symbols(" ".join(f"v{k}" for k in range(ring.nvars)) or "v0")
    syms = syms if isinstance(syms, tuple) else (syms,)
    field = sympy.QQ.frac_field(*syms)

    def conv(p):
        expr = sum(
            (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** k for s, k in zip(syms, m)]) for m, c in p.terms.items()),
            sympy.Integer(0),
        )
        return field.from_sympy(expr)

    dm = DomainMatrix([[conv(p) for p in row] for row in entries], (len(entries), len(entries[0])), field)
    return dm.rank()


# ---------------------------------------------------------------------------
# totalization and derived fiber


class TotalComplex:
    """tot(P): degree n is the sum over i of P_{-i} in internal degree n + i.

    The vertical differentials vanish (each P_i carries the zero
    differential), so the total differential is the horizontal one; the
    ``(-1)^i`` sign on vertical maps never contributes.
    """

    def __init__(self, res: MinimalResolution):
        self.res = res

    def blocks(self, n: int) -> List[Tuple[int, int, int]]:
        out = []
        off = 0
        for i, s in enumerate(self.res.stages):
            k = s.module.free_dim(n + i)
            if k:
                out.append((i, off, k))
                off += k
        return out

    def dim(self, n: int) -> int:
        b = self.blocks(n)
        return b[-1][1] + b[-1][2] if b else 0

    def differential(self, n: int) -> QMatrix:
        src = self.blocks(n)
        tgt = {i: (off, k) for i, off, k in self.blocks(n + 1)}
        rows = self.dim(n + 1)
        cols: List[Vector] = []
        for i, off, k in src:
            if i == 0:
                cols.extend([(ZERO,) * rows] * k)
                continue
            e = n + i
            mat = self.res.degree_matrix(i, e)
            toff, tk = tgt[i - 1]
            for c in range(k):
                col = [ZERO] * rows
                col[toff:toff + tk] = mat.column(c)
                cols.append(tuple(col))
        return QMatrix.from_columns(cols, rows)

    def augmentation(self, n: int) -> QMatrix:
        M = self.res.module
        m = M.dim(n)
        cols: List[Vector] = []
        for i, off, k in self.blocks(n):
            if i == 0:
                cols.extend(_image_columns(self.res.stages[0], M, n, reduce=True))
            else:
                cols.extend([(ZERO,) * m] * k)
        return QMatrix.from_columns(cols, m)

    def cohomology(self, window: DegreeWindow) -> GradedDimVector:
        from .exact import rank

        out = {}
        for n in window:
            d_n = self.differential(n)
            d_prev = self.differential(n - 1)
            out[n] = self.dim(n) - rank(d_n) - rank(d_prev)
        return GradedDimVector(out)

    def is_quasi_isomorphic_in(self, window: DegreeWindow) -> bool:
        """tot(P) -> M induces an isomorphism on cohomology in every degree of the window."""
        from .exact import kernel_basis, rank

        M = self.res.module
        for n in window:
            d_n = self.differential(n)
            d_prev = self.differential(n - 1)
            aug = self.augmentation(n)
            if not (aug @ d_prev).is_zero():
                return False
            h = self.dim(n) - rank(d_n) - rank(d_prev)
            if h != M.dim(n):
                return False
            Z = kernel_basis(d_n)
            if M.dim(n) and rank(aug @ Z) != M.dim(n):
                return False
        return True


def totalize(res: MinimalResolution) -> TotalComplex:
    return TotalComplex(res)


@dataclass(frozen=True)
class DerivedFiber:
    dims: GradedDimVector
    window: DegreeWindow
    lower_bound_only: bool

    @property
    def status(self) -> str:
        return "LOWER_BOUND_ONLY" if self.lower_bound_only else "EXACT"


def fiber_from_resolution(res: MinimalResolution, window: DegreeWindow) -> DerivedFiber:
    dims: Dict[int, int] = {}
    for i, s in enumerate(res.stages):
        for d in s.degrees:
            n = d - i
            if n in window:
                dims[n] = dims.get(n, 0) + 1
    return DerivedFiber(GradedDimVector(dims), window, res.status is Status.TRUNCATED)


def derived_fiber(
    K,
    M: GradedModulePresentation,
    window: Optional[DegreeWindow] = None,
    max_length: Optional[int] = None,
) -> DerivedFiber:
    """Dimensions of H(M (x)^L k) in the window, read off generator degrees."""
    if window is None:
        window = default_window(M)
    res = minimal_resolution(K, M, max_length=max_length, window=window)
    return fiber_from_resolution(res, window)


def projective_dimension(K, M: GradedModulePresentation, max_length: Optional[int] = None, window=None):
    """Exact projective dimension, or ``TRUNCATED`` when the bound was hit."""
    res = minimal_resolution(K, M, max_length=max_length, window=window)
    return res.pd if res.status is Status.COMPLETE else TRUNCATED
