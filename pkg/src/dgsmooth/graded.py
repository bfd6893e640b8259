"""Graded-commutative rings and finitely presented graded modules.

All computations are degreewise: a module ``M`` presented as ``F / R`` with
``F`` free is handled one degree at a time, where ``F^d`` is a finite
dimensional rational vector space and ``R^d`` is the span of ring multiples
of the relations landing in degree ``d``.

The module code is generic over a small ring protocol (``dim``,
``multiply``, ``algebra_generators``, ``element_vector``, ...) that is
implemented here by :class:`GradedCommRing` and elsewhere by dg algebra
presentations, so resolutions can be run over either.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import NonHomogeneousError, ParseError
from .exact import ONE, ZERO, Subspace, Vector, is_zero, unit_vector

Monomial = Tuple[int, ...]


# ---------------------------------------------------------------------------
# windows and dimension vectors


@dataclass(frozen=True)
class DegreeWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __contains__(self, d) -> bool:
        return self.lo <= d <= self.hi

    @classmethod
    def parse(cls, text: str) -> "DegreeWindow":
        try:
            lo, hi = text.split(":")
            return cls(int(lo), int(hi))
        except ValueError as exc:
            raise ParseError(f"bad window {text!r}; expected LO:HI") from exc

    def __str__(self) -> str:
        return f"{self.lo}:{self.hi}"


@dataclass(frozen=True)
class GradedDimVector:
    """Degree -> dimension, zeros dropped."""

    dims: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dims", {int(d): int(n) for d, n in sorted(self.dims.items()) if n})

    def __getitem__(self, d: int) -> int:
        return self.dims.get(d, 0)

    def support(self) -> List[int]:
        return sorted(self.dims)

    def total(self) -> int:
        return sum(self.dims.values())

    def shifted(self, n: int) -> "GradedDimVector":
        """Dimension vector of [n]M, i.e. degree i goes to i - n."""
        return GradedDimVector({d - n: k for d, k in self.dims.items()})

    def as_dict(self) -> Dict[int, int]:
        return dict(self.dims)

    def __bool__(self) -> bool:
        return bool(self.dims)


# ---------------------------------------------------------------------------
# polynomials


class KPolynomial:
    """Immutable polynomial with rational coefficients keyed by exponent vectors.

    Arithmetic here is commutative; products involving odd variables must go
    through :meth:`GradedCommRing.mul_poly`, which tracks Koszul signs.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: Dict[Monomial, Fraction] = {}
        for m, c in items:
            m = tuple(m)
            if len(m) != nvars:
                raise ValueError("exponent vector has wrong length")
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                clean[m] = clean.get(m, ZERO) + c
                if not clean[m]:
                    del clean[m]
        self.nvars = nvars
        self.terms: Dict[Monomial, Fraction] = dict(sorted(clean.items(), reverse=True))
        self._hash = None

    @classmethod
    def constant(cls, nvars: int, c=1) -> "KPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "KPolynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def zero(cls, nvars: int) -> "KPolynomial":
        return cls(nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = KPolynomial.constant(self.nvars, other)
        return isinstance(other, KPolynomial) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self.terms.items())))
        return self._hash

    def __add__(self, other: "KPolynomial") -> "KPolynomial":
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, ZERO) + c
        return KPolynomial(self.nvars, t)

    def __neg__(self) -> "KPolynomial":
        return KPolynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "KPolynomial") -> "KPolynomial":
        return self + (-other)

    def scale(self, c) -> "KPolynomial":
        return KPolynomial(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: "KPolynomial") -> "KPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        t: Dict[Monomial, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(a, b))
                t[m] = t.get(m, ZERO) + ca * cb
        return KPolynomial(self.nvars, t)

    __rmul__ = __mul__

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, ZERO)

    def embed(self, nvars: int, positions: Sequence[int]) -> "KPolynomial":
        """Re-index variables: variable i goes to ``positions[i]`` of ``nvars``."""
        out = {}
        for m, c in self.terms.items():
            e = [0] * nvars
            for i, k in enumerate(m):
                e[positions[i]] += k
            out[tuple(e)] = c
        return KPolynomial(nvars, out)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        total = ZERO
        for m, c in self.terms.items():
            v = c
            for x, k in zip(point, m):
                if k:
                    v *= x ** k
            total += v
        return total

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, m) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"KPolynomial({self.format([f'x{i}' for i in range(self.nvars)])})"


# ---------------------------------------------------------------------------
# rings


class GradedCommRing:
    """Graded-commutative Q-algebra on named generators modulo a homogeneous ideal.

    Even-degree generators are polynomial, odd-degree ones exterior.  Each
    degree slice is the span of monomials of that degree modulo the ideal;
    the basis is the set of standard (non-pivot) monomials.
    """

    def __init__(self, generators: Sequence[Tuple[str, int]], ideal: Sequence[KPolynomial] = ()):
        self.generators = tuple((str(n), int(d)) for n, d in generators)
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        if any(d <= 0 for _, d in self.generators):
            raise ValueError("ring generators must have positive degree")
        self.names = tuple(names)
        self.degrees = tuple(d for _, d in self.generators)
        self.nvars = len(self.generators)
        self._odd = tuple(d % 2 == 1 for d in self.degrees)
        self.ideal = tuple(p for p in ideal if p)
        self._ideal_degrees = tuple(self.poly_degree(p) for p in self.ideal)
        self._mono: Dict[int, List[Monomial]] = {}
        self._mono_idx: Dict[int, Dict[Monomial, int]] = {}
        self._ideal_space: Dict[int, Subspace] = {}
        self._std: Dict[int, List[int]] = {}
        self._top: Optional[int] = None
        self._top_known = False

    # -- monomials ---------------------------------------------------------

    def monomials(self, d: int) -> List[Monomial]:
        if d not in self._mono:
            out: List[Monomial] = []
            if d >= 0:
                self._enumerate(d, 0, [], out)
            self._mono[d] = out
            self._mono_idx[d] = {m: i for i, m in enumerate(out)}
        return self._mono[d]

    def _enumerate(self, d, i, acc, out):
        if i == self.nvars:
            if d == 0:
                out.append(tuple(acc))
            return
        deg = self.degrees[i]
        top = 1 if self._odd[i] else d // deg
        for k in range(min(top, d // deg), -1, -1):
            acc.append(k)
            self._enumerate(d - k * deg, i + 1, acc, out)
            acc.pop()

    def mono_index(self, d: int) -> Dict[Monomial, int]:
        self.monomials(d)
        return self._mono_idx[d]

    def mono_degree(self, m: Monomial) -> int:
        return sum(k * d for k, d in zip(m, self.degrees))

    def mono_mul(self, a: Monomial, b: Monomial) -> Tuple[int, Optional[Monomial]]:
        """Product of monomials as (sign, monomial); sign 0 when an odd square appears."""
        sign = 1
        if any(self._odd):
            seen_odd_in_a_after = 0
            # move each odd factor of b left past the odd factors of a with larger index
            for j in range(self.nvars - 1, -1, -1):
                if self._odd[j]:
                    if b[j] and a[j]:
                        return 0, None
                    if b[j] and seen_odd_in_a_after % 2:
                        sign = -sign
                    seen_odd_in_a_after += a[j]
        return sign, tuple(x + y for x, y in zip(a, b))

    def poly_degree(self, p: KPolynomial) -> Optional[int]:
        degs = {self.mono_degree(m) for m in p.terms}
        if len(degs) > 1:
            raise NonHomogeneousError(f"polynomial {p.format(self.names)} is not homogeneous")
        return degs.pop() if degs else None

    def mul_poly(self, p: KPolynomial, q: KPolynomial) -> KPolynomial:
        t: Dict[Monomial, Fraction] = {}
        for a, ca in p.terms.items():
            for b, cb in q.terms.items():
                s, m = self.mono_mul(a, b)
                if s:
                    t[m] = t.get(m, ZERO) + s * ca * cb
        return KPolynomial(self.nvars, t)

    def variable(self, i: int) -> KPolynomial:
        return KPolynomial.variable(self.nvars, i)

    def one(self) -> KPolynomial:
        return KPolynomial.constant(self.nvars, 1)

    def zero(self) -> KPolynomial:
        return KPolynomial.zero(self.nvars)

    # -- degreewise quotient -----------------------------------------------

    def _full_vector(self, p: KPolynomial, d: int) -> List[Fraction]:
        idx = self.mono_index(d)
        v = [ZERO] * len(idx)
        for m, c in p.terms.items():
            v[idx[m]] += c
        return v

    def ideal_space(self, d: int) -> Subspace:
        if d not in self._ideal_space:
            n = len(self.monomials(d))
            sp = Subspace(n)
            for f, e in zip(self.ideal, self._ideal_degrees):
                if e is None or e > d:
                    continue
                for u in self.monomials(d - e):
                    sp.add(self._full_vector(self.mul_poly(KPolynomial(self.nvars, {u: 1}), f), d))
            self._ideal_space[d] = sp
        return self._ideal_space[d]

    def standard_positions(self, d: int) -> List[int]:
        if d not in self._std:
            if not self.ideal:
                self._std[d] = list(range(len(self.monomials(d))))
            else:
                self._std[d] = self.ideal_space(d).complement_positions()
        return self._std[d]

    def basis(self, d: int) -> List[Monomial]:
        mons = self.monomials(d)
        return [mons[i] for i in self.standard_positions(d)]

    def dim(self, d: int) -> int:
        return len(self.standard_positions(d))

    def reduce_full(self, d: int, full: Sequence[Fraction]) -> Vector:
        if self.ideal:
            full = self.ideal_space(d).reduce(full)
        return tuple(full[i] for i in self.standard_positions(d))

    def lift(self, d: int, coords: Sequence[Fraction]) -> List[Fraction]:
        v = [ZERO] * len(self.monomials(d))
        for i, c in zip(self.standard_positions(d), coords):
            v[i] = c
        return v

    def poly_to_vector(self, p: KPolynomial, d: Optional[int] = None) -> Tuple[Optional[int], Vector]:
        e = self.poly_degree(p)
        if e is None:
            e = d
        if d is not None and e != d:
            raise NonHomogeneousError(f"expected degree {d}, got {e}")
        if e is None:
            return None, ()
        return e, self.reduce_full(e, self._full_vector(p, e))

    def vector_to_poly(self, d: int, coords: Sequence[Fraction]) -> KPolynomial:
        mons = self.monomials(d)
        return KPolynomial(self.nvars, {mons[i]: c for i, c in zip(self.standard_positions(d), coords) if c})

    def multiply(self, d1: int, v1: Sequence[Fraction], d2: int, v2: Sequence[Fraction]) -> Vector:
        d = d1 + d2
        idx = self.mono_index(d)
        out = [ZERO] * len(idx)
        b1 = self.basis(d1)
        b2 = self.basis(d2)
        for a, ca in zip(b1, v1):
            if not ca:
                continue
            for b, cb in zip(b2, v2):
                if not cb:
                    continue
                s, m = self.mono_mul(a, b)
                if s:
                    out[idx[m]] += s * ca * cb
        return self.reduce_full(d, out)

    # -- ring protocol -----------------------------------------------------

    def algebra_generators(self) -> List[Tuple[int, Vector]]:
        out = []
        for i, d in enumerate(self.degrees):
            _, v = self.poly_to_vector(self.variable(i), d)
            out.append((d, v))
        return out

    def unit_vector(self) -> Vector:
        return (ONE,)

    def element_degree(self, e: KPolynomial) -> Optional[int]:
        return self.poly_degree(e)

    def element_vector(self, e: KPolynomial, d: int) -> Vector:
        return self.poly_to_vector(e, d)[1]

    def element_from_vector(self, d: int, coords: Sequence[Fraction]) -> KPolynomial:
        return self.vector_to_poly(d, coords)

    def zero_element(self) -> KPolynomial:
        return self.zero()

    def basis_labels(self, d: int) -> List[str]:
        return [KPolynomial(self.nvars, {m: 1}).format(self.names) for m in self.basis(d)]

    @property
    def is_regular(self) -> bool:
        """Polynomial ring on even generators: finite global dimension."""
        return not self.ideal and not any(self._odd)

    @property
    def min_degree(self) -> int:
        return 0

    def top_degree(self) -> Optional[int]:
        """Highest nonzero degree, or None when the ring is infinite dimensional."""
        if self._top_known:
            return self._top
        bound = 0
        finite = True
        for i, (deg, odd) in enumerate(zip(self.degrees, self._odd)):
            if odd:
                bound += deg
                continue
            x = self.variable(i)
            power = self.one()
            k = 0
            while True:
                k += 1
                power = self.mul_poly(power, x)
                if k * deg > 256:
                    finite = False
                    break
                if is_zero(self.poly_to_vector(power, k * deg)[1]):
                    bound += (k - 1) * deg
                    break
            if not finite:
                break
        self._top = max((d for d in range(bound + 1) if self.dim(d)), default=0) if finite else None
        self._top_known = True
        return self._top

    def __repr__(self) -> str:
        gens = ", ".join(f"{n}:{d}" for n, d in self.generators)
        rel = f" / ({', '.join(p.format(self.names) for p in self.ideal)})" if self.ideal else ""
        return f"Q[{gens}]{rel}"

    def describe(self) -> dict:
        return {
            "generators": [{"name": n, "degree": d} for n, d in self.generators],
            "ideal": [p.format(self.names) for p in self.ideal],
        }


class GradedPolyRing(GradedCommRing):
    """The base ring K = Q[x_1, ..., x_s] with generators in positive even degrees."""

    def __init__(self, generators: Sequence[Tuple[str, int]]):
        for n, d in generators:
            if int(d) < 2 or int(d) % 2:
                raise ValueError(f"base ring generator {n} must have positive even degree, got {d}")
        super().__init__(generators)

    def with_ideal(self, ideal: Sequence[KPolynomial]) -> GradedCommRing:
        return GradedCommRing(self.generators, ideal)

    def parse(self, text: str) -> KPolynomial:
        from .io import parse_polynomial

        return parse_polynomial(text, self.names)

    def __eq__(self, other) -> bool:
        return type(other) is GradedPolyRing and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)


# ---------------------------------------------------------------------------
# modules


class GradedModulePresentation:
    """A finitely presented graded module ``F / R`` over a connected graded ring.

    ``relations`` is a sequence of relation vectors, one ring element per
    module generator.  Ring elements are whatever the ring's
    ``element_vector`` accepts (``KPolynomial`` for polynomial rings).
    """

    def __init__(self, ring, generators: Sequence[Tuple[str, int]], relations: Sequence[Sequence] = (), name: str = ""):
        self.ring = ring
        self.generators = tuple((str(n), int(d)) for n, d in generators)
        self.degrees = tuple(d for _, d in self.generators)
        self.ngens = len(self.generators)
        self.name = name
        rels = []
        rel_data = []
        for r in relations:
            r = tuple(r)
            if len(r) != self.ngens:
                raise ParseError(f"relation has {len(r)} entries for {self.ngens} generators")
            deg = self._relation_degree(r)
            if deg is None:
                continue
            rels.append(r)
            rel_data.append((deg, r))
        self.relations = tuple(rels)
        self._rel = tuple(rel_data)
        self._free_layout: Dict[int, List[Tuple[int, int, int]]] = {}
        self._rel_space: Dict[int, Subspace] = {}
        self._qpos: Dict[int, List[int]] = {}
        self._rel_vectors = None

    def _relation_degree(self, r) -> Optional[int]:
        degs = set()
        for e, g in zip(r, self.degrees):
            ed = self.ring.element_degree(e)
            if ed is not None:
                degs.add(ed + g)
        if len(degs) > 1:
            raise NonHomogeneousError(f"relation is not homogeneous (degrees {sorted(degs)})", degrees=sorted(degs))
        return degs.pop() if degs else None

    @property
    def relation_degrees(self) -> Tuple[int, ...]:
        return tuple(d for d, _ in self._rel)

    @property
    def min_degree(self) -> Optional[int]:
        return min(self.degrees, default=None)

    def max_presentation_degree(self) -> int:
        return max(list(self.degrees) + list(self.relation_degrees) + [0])

    # -- free module F -----------------------------------------------------

    def free_layout(self, d: int) -> List[Tuple[int, int, int]]:
        """(generator, offset, block size) for the blocks of F^d."""
        if d not in self._free_layout:
            out = []
            off = 0
            rmin = self.ring.min_degree
            for g, gd in enumerate(self.degrees):
                if d - gd < rmin:
                    continue
                n = self.ring.dim(d - gd)
                if n:
                    out.append((g, off, n))
                    off += n
            self._free_layout[d] = out
        return self._free_layout[d]

    def free_dim(self, d: int) -> int:
        lay = self.free_layout(d)
        return lay[-1][1] + lay[-1][2] if lay else 0

    def free_labels(self, d: int) -> List[str]:
        out = []
        for g, _, _ in self.free_layout(d):
            for lab in self.ring.basis_labels(d - self.degrees[g]):
                name = self.generators[g][0]
                out.append(name if lab in ("1", "") else f"{lab}*{name}")
        return out

    def element_vector(self, elems: Sequence, d: int) -> Vector:
        """F^d coordinates of a vector of ring elements (one per generator)."""
        v = [ZERO] * self.free_dim(d)
        for g, off, n in self.free_layout(d):
            e = elems[g]
            if self.ring.element_degree(e) is None:
                continue
            block = self.ring.element_vector(e, d - self.degrees[g])
            v[off:off + n] = block
        # entries whose ring degree has an empty slice vanish automatically
        for g, e in enumerate(elems):
            ed = self.ring.element_degree(e)
            if ed is not None and ed + self.degrees[g] != d:
                raise NonHomogeneousError(f"entry for generator {self.generators[g][0]} has wrong degree")
        return tuple(v)

    def element_degree(self, elems: Sequence) -> Optional[int]:
        return self._relation_degree(tuple(elems))

    def elements_from_vector(self, d: int, v: Sequence[Fraction]) -> Tuple:
        """Inverse of :meth:`element_vector`."""
        out = [self.ring.zero_element() for _ in range(self.ngens)]
        for g, off, n in self.free_layout(d):
            block = v[off:off + n]
            if not is_zero(block):
                out[g] = self.ring.element_from_vector(d - self.degrees[g], block)
        return tuple(out)

    def generator_vector(self, g: int) -> Vector:
        d = self.degrees[g]
        v = [ZERO] * self.free_dim(d)
        for h, off, n in self.free_layout(d):
            if h == g:
                v[off:off + n] = self.ring.unit_vector()
        return tuple(v)

    def act(self, xdeg: int, xvec: Sequence[Fraction], d: int, v: Sequence[Fraction]) -> Vector:
        """Ring element (degree ``xdeg``) times an element of F^d."""
        e = d + xdeg
        out = [ZERO] * self.free_dim(e)
        src = {g: (off, n) for g, off, n in self.free_layout(d)}
        for g, off, n in self.free_layout(e):
            if g not in src:
                continue
            so, sn = src[g]
            block = v[so:so + sn]
            if is_zero(block):
                continue
            out[off:off + n] = self.ring.multiply(xdeg, xvec, d - self.degrees[g], block)
        return tuple(out)

    # -- relations and quotient --------------------------------------------

    def relation_space(self, d: int) -> Subspace:
        if d not in self._rel_space:
            sp = Subspace(self.free_dim(d))
            for e, r in self._rel:
                if e > d:
                    continue
                rv = self._relation_vector(r, e)
                k = d - e
                nb = self.ring.dim(k) if k >= self.ring.min_degree else 0
                for b in range(nb):
                    sp.add(self.act(k, unit_vector(nb, b), e, rv))
            self._rel_space[d] = sp
        return self._rel_space[d]

    def _relation_vector(self, r, e) -> Vector:
        if self._rel_vectors is None:
            self._rel_vectors = {}
        key = id(r)
        if key not in self._rel_vectors:
            self._rel_vectors[key] = self.element_vector(r, e)
        return self._rel_vectors[key]

    def quotient_positions(self, d: int) -> List[int]:
        if d not in self._qpos:
            self._qpos[d] = self.relation_space(d).complement_positions() if self._rel else list(range(self.free_dim(d)))
        return self._qpos[d]

    def dim(self, d: int) -> int:
        return len(self.quotient_positions(d))

    def reduce(self, d: int, v: Sequence[Fraction]) -> Vector:
        """Quotient coordinates of an element of F^d."""
        if self._rel:
            v = self.relation_space(d).reduce(v)
        return tuple(v[i] for i in self.quotient_positions(d))

    def lift(self, d: int, q: Sequence[Fraction]) -> Vector:
        v = [ZERO] * self.free_dim(d)
        for i, c in zip(self.quotient_positions(d), q):
            v[i] = c
        return tuple(v)

    def basis_labels(self, d: int) -> List[str]:
        labs = self.free_labels(d)
        return [labs[i] for i in self.quotient_positions(d)]

    def dims(self, window: Iterable[int]) -> GradedDimVector:
        return GradedDimVector({d: self.dim(d) for d in window})

    def is_free(self) -> bool:
        return not self._rel

    def __repr__(self) -> str:
        return f"GradedModulePresentation({self.name or '?'}: {self.ngens} gens, {len(self.relations)} rels over {self.ring!r})"


@dataclass(frozen=True)
class DegreeSlice:
    """One degree of a presented module: a Q-basis and the relation expansion."""

    degree: int
    dim: int
    basis: Tuple[str, ...]
    free_dim: int
    relation_rank: int
    relation_rows: Tuple[Vector, ...]


def degree_slice(K, M: GradedModulePresentation, d: int) -> DegreeSlice:
    """Expand ``M`` to a Q-basis in degree ``d``.

    The dimension is the monomial-spanning count minus the rank of the
    relation matrix in that degree.
    """
    if K is not None and M.ring != K:
        raise ValueError("module is presented over a different ring")
    sp = M.relation_space(d)
    return DegreeSlice(
        degree=d,
        dim=M.dim(d),
        basis=tuple(M.basis_labels(d)),
        free_dim=M.free_dim(d),
        relation_rank=sp.dim,
        relation_rows=tuple(sp.basis()),
    )


def free_module(ring, degrees: Sequence[int], prefix: str = "e") -> GradedModulePresentation:
    return GradedModulePresentation(ring, [(f"{prefix}{i}", d) for i, d in enumerate(degrees)])


def cyclic_module(ring, polys: Sequence[KPolynomial], degree: int = 0, name: str = "") -> GradedModulePresentation:
    """ring / (polys), one generator in ``degree``."""
    return GradedModulePresentation(ring, [("e0", degree)], [(p,) for p in polys], name=name)


def residue_field(ring, degree: int = 0) -> GradedModulePresentation:
    """k = ring / (generators)."""
    return cyclic_module(ring, [ring.variable(i) for i in range(ring.nvars)], degree, name="k")
