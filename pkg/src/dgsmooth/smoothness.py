"""Deciders for smoothness of dg algebras and perfectness of modules.

Each decider applies one criterion under its hypotheses, verifies those
hypotheses on the input, and reports the criterion it used.  Negative
answers always come with a witness; bounded searches that run out report
``UNDECIDED_WITHIN_BOUND`` rather than guessing.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from .dg import (
    DgAlgebraPresentation,
    DgModulePresentation,
    TriangularPresentation,
    amplitude_obstruction,
    check_bounded_connected,
    check_quasi_iso_structure,
    cohomology_dim,
    diagonal_bimodule,
    full_cohomology,
    required_window_top,
    restrict,
    unit_map_in_degree,
)
from .errors import DgSmoothError, HypothesisViolated, ReductionUnavailable
from .graded import DegreeWindow, GradedCommRing, GradedModulePresentation, GradedPolyRing
from .resolution import Status, minimal_resolution


class Verdict(str, enum.Enum):
    SMOOTH = "SMOOTH"
    NOT_SMOOTH = "NOT_SMOOTH"
    UNDECIDED = "UNDECIDED_WITHIN_BOUND"


class Perfectness(str, enum.Enum):
    PERFECT = "PERFECT"
    NOT_PERFECT = "NOT_PERFECT"
    UNDECIDED = "UNDECIDED_WITHIN_BOUND"


# criterion identifiers
FIELD_CRITERION = "field-criterion"
BASE_CRITERION = "base-ring-criterion"
DIAGONAL_TOR = "diagonal-tor"
MINIMAL_RESOLUTION = "minimal-resolution"
AMPLITUDE_BOUND = "amplitude-bound"
FINITE_COHOMOLOGY = "finite-cohomology"
SWEETNESS_REDUCTION = "sweetness-reduction"
TRIANGULAR = "triangular-decomposition"


@dataclass(frozen=True)
class SmoothnessVerdict:
    verdict: Verdict
    criterion: str
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is Verdict.NOT_SMOOTH and not self.witness:
            raise ValueError("a negative verdict needs a witness")
        if not self.criterion:
            raise ValueError("a verdict names its criterion")

    @property
    def smooth(self) -> bool:
        return self.verdict is Verdict.SMOOTH

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "criterion": self.criterion, "witness": self.witness, **self.details}


@dataclass(frozen=True)
class PerfectnessVerdict:
    verdict: Perfectness
    criterion: str
    pd: Optional[int] = None
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is Perfectness.NOT_PERFECT and not self.witness:
            raise ValueError("a negative verdict needs a witness")

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "criterion": self.criterion, "pd": self.pd, "witness": self.witness, **self.details}


def default_window(A: Union[DgAlgebraPresentation, DgModulePresentation]) -> DegreeWindow:
    top = 4 * A.max_presentation_degree()
    top = max(top, 2 * max(A.base.degrees, default=0), 4)
    return DegreeWindow(-4, top)


# ---------------------------------------------------------------------------
# smoothness over Q


def decide_smooth_over_field(T: DgAlgebraPresentation, window: Optional[DegreeWindow] = None) -> SmoothnessVerdict:
    """T over Q with H^{<0} = 0, H^0 = Q and bounded H is smooth iff H(T) = Q.

    Algebras presented over a polynomial base are accepted when they are
    finite dimensional over Q (scalars are restricted to Q).
    """
    if window is None:
        window = default_window(T)
    HT = check_bounded_connected(T, window)
    supp = [d for d in HT.dims.support() if d > 0]
    if not supp:
        return SmoothnessVerdict(Verdict.SMOOTH, FIELD_CRITERION, details={"cohomology": _dims(HT)})
    d = supp[0]
    return SmoothnessVerdict(
        Verdict.NOT_SMOOTH,
        FIELD_CRITERION,
        witness={"degree": d, "dim": HT.dims[d], "expected": 0},
        details={"cohomology": _dims(HT)},
    )


def _dims(rep) -> dict:
    return {str(d): n for d, n in rep.dims.as_dict().items()}


# ---------------------------------------------------------------------------
# smoothness over the base


def decide_smooth_over_base(K: GradedPolyRing, A: DgAlgebraPresentation, window: Optional[DegreeWindow] = None) -> SmoothnessVerdict:
    """A with H^{<0} = 0, H^0 = Q (and K^1 -> H^1 injective) is K-smooth iff K -> A is a quasi-isomorphism."""
    if window is None:
        window = default_window(A)
    for d in range(window.lo, 0):
        if cohomology_dim(A, d):
            raise HypothesisViolated("H^i = 0 for i < 0", degree=d)
    if cohomology_dim(A, 0) != 1:
        raise HypothesisViolated("H^0 = Q", degree=0)
    kdim, _, r, _ = unit_map_in_degree(K, A, 1)
    if r < kdim:
        raise HypothesisViolated("K^1 -> H^1(A) injective", degree=1)
    res = check_quasi_iso_structure(K, A, window)
    if res.ok:
        return SmoothnessVerdict(Verdict.SMOOTH, BASE_CRITERION, details={"window": [window.lo, window.hi]})
    return SmoothnessVerdict(
        Verdict.NOT_SMOOTH,
        BASE_CRITERION,
        witness={"degree": res.degree, "reason": res.reason, "base_dim": res.base_dim, "cohomology_dim": res.cohomology_dim},
        details={"window": [window.lo, window.hi]},
    )


# ---------------------------------------------------------------------------
# perfectness via minimal resolutions


def _as_ring_and_module(R, M):
    """Reduce (algebra, dg module) to (ring, graded module) for resolving."""
    if isinstance(R, GradedCommRing):
        if not isinstance(M, GradedModulePresentation):
            raise HypothesisViolated("module over the given ring", message="expected a graded module over the ring")
        return R, M
    if not R.has_zero_differential():
        raise HypothesisViolated("zero differential on R")
    if not R.is_connected():
        raise HypothesisViolated("R^0 = Q and R^i = 0 for i < 0", degree=0)
    if isinstance(M, DgModulePresentation):
        if not M.has_zero_differential():
            raise HypothesisViolated("zero differential on M")
        if R.is_base_only():
            return R.base, M.module
        return R, M.to_ring_module()
    return R, M


def decide_perfect_via_tor(
    R,
    M,
    max_length: Optional[int] = None,
    window: Optional[DegreeWindow] = None,
    obstruction: bool = False,
) -> PerfectnessVerdict:
    """Perfectness of M over a connected zero-differential R from its minimal resolution.

    A terminating resolution gives PERFECT(pd).  When the bound is hit the
    answer is UNDECIDED, unless ``obstruction`` is set and R is finite
    dimensional over Q, in which case the amplitude bound for perfect
    modules may certify NOT_PERFECT.
    """
    ring, module = _as_ring_and_module(R, M)
    if obstruction and isinstance(R, DgAlgebraPresentation) and isinstance(M, DgModulePresentation) and not R.is_base_only():
        verdict = _obstruction_verdict(R, M, window)
        if verdict is not None:
            return verdict
    res = minimal_resolution(None, module, max_length=max_length, window=window)
    tor = [dict(sorted(c.items())) for c in res.generator_counts()]
    details = {"resolution": res.to_dict(), "tor": [{str(k): v for k, v in t.items()} for t in tor]}
    if res.status is Status.COMPLETE:
        return PerfectnessVerdict(Perfectness.PERFECT, MINIMAL_RESOLUTION, pd=res.pd, details=details)
    return PerfectnessVerdict(Perfectness.UNDECIDED, MINIMAL_RESOLUTION, details=details)


def _obstruction_verdict(R: DgAlgebraPresentation, M: DgModulePresentation, window) -> Optional[PerfectnessVerdict]:
    if R.top_degree() is None:
        return None
    try:
        obs = amplitude_obstruction(R, M, window)
    except HypothesisViolated:
        return None
    if obs.obstructed:
        return PerfectnessVerdict(Perfectness.NOT_PERFECT, AMPLITUDE_BOUND, witness=obs.witness)
    return None


def decide_smooth_via_diagonal(
    A: DgAlgebraPresentation,
    over_field: bool = True,
    max_length: Optional[int] = None,
    window: Optional[DegreeWindow] = None,
    obstruction: bool = False,
) -> SmoothnessVerdict:
    """Smoothness as perfectness of the diagonal bimodule over A (x) A^op."""
    R_M = diagonal_bimodule(A, over_field=over_field)
    pv = decide_perfect_via_tor(R_M.over, R_M, max_length=max_length, window=window, obstruction=obstruction)
    details = {"perfectness": pv.to_dict()}
    if pv.verdict is Perfectness.PERFECT:
        return SmoothnessVerdict(Verdict.SMOOTH, DIAGONAL_TOR, witness={"pd": pv.pd}, details=details)
    if pv.verdict is Perfectness.NOT_PERFECT:
        return SmoothnessVerdict(Verdict.NOT_SMOOTH, DIAGONAL_TOR, witness=pv.witness, details=details)
    return SmoothnessVerdict(Verdict.UNDECIDED, DIAGONAL_TOR, details=details)


# ---------------------------------------------------------------------------
# sweetness and triangular algebras


def _is_rational_point(A: DgAlgebraPresentation) -> bool:
    """A is quasi-isomorphic to Q (checked on its finite support)."""
    try:
        H = check_bounded_connected(A)
    except (HypothesisViolated, DgSmoothError):
        return False
    return H.dims.as_dict() == {0: 1}


def _is_base_quasi_iso(K: GradedPolyRing, A: DgAlgebraPresentation, window: Optional[DegreeWindow]) -> bool:
    w = window or default_window(A)
    if w.hi < required_window_top(K, A):
        w = DegreeWindow(w.lo, required_window_top(K, A))
    return check_quasi_iso_structure(K, A, w).ok


def _perfect_over(C: DgAlgebraPresentation, N: DgModulePresentation, max_length, window) -> PerfectnessVerdict:
    if N.is_zero_module():
        return PerfectnessVerdict(Perfectness.PERFECT, FINITE_COHOMOLOGY, pd=0, details={"reason": "zero module"})
    if C.base.nvars == 0 and _is_rational_point(C):
        if N.unbounded:
            return PerfectnessVerdict(Perfectness.NOT_PERFECT, FINITE_COHOMOLOGY, witness={"reason": "infinite total cohomology"})
        H = full_cohomology(N, window)
        pd = 0 if C.ngens == 1 else None
        return PerfectnessVerdict(
            Perfectness.PERFECT, FINITE_COHOMOLOGY, pd=pd, details={"cohomology": _dims(H), "total": H.dims.total()}
        )
    if C.has_zero_differential() and N.has_zero_differential() and C.is_connected() and not N.unbounded:
        return decide_perfect_via_tor(C, N, max_length=max_length, window=window)
    raise ReductionUnavailable("no perfectness test applies to this restriction")


def decide_sweet_reduced(
    K: GradedPolyRing,
    A: DgAlgebraPresentation,
    B: DgAlgebraPresentation,
    N: DgModulePresentation,
    max_length: Optional[int] = None,
    window: Optional[DegreeWindow] = None,
) -> PerfectnessVerdict:
    """Sweetness of a B-A-bimodule N (a module over B (x) A^op).

    With K -> B a quasi-isomorphism this is perfectness of N restricted to
    A; symmetrically, with K -> A a quasi-isomorphism it is perfectness of
    N restricted to B.
    """
    if N.is_zero_module():
        return PerfectnessVerdict(Perfectness.PERFECT, SWEETNESS_REDUCTION, pd=0, details={"reason": "zero module"})
    if _is_base_quasi_iso(K, B, window):
        side = "right"
    elif _is_base_quasi_iso(K, A, window):
        side = "left"
    else:
        raise ReductionUnavailable("neither side is quasi-isomorphic to the base")
    # the right factor is A^op: a right A-module is a left A^op-module
    restricted = restrict(N, side)
    pv = _perfect_over(restricted.over, restricted, max_length, window)
    details = dict(pv.details)
    details["restricted_to"] = "lower_right" if side == "right" else "upper_left"
    return PerfectnessVerdict(pv.verdict, f"{SWEETNESS_REDUCTION}/{pv.criterion}", pv.pd, pv.witness, details)


def _component_smoothness(A: DgAlgebraPresentation, window) -> SmoothnessVerdict:
    try:
        if A.base.nvars == 0:
            return decide_smooth_over_field(A, window)
        return decide_smooth_over_base(A.base, A, window)
    except HypothesisViolated as exc:
        crit = FIELD_CRITERION if A.base.nvars == 0 else BASE_CRITERION
        return SmoothnessVerdict(Verdict.UNDECIDED, crit, details={"hypothesis_violated": exc.to_dict()})


def _sweetness(E: TriangularPresentation, max_length, window) -> PerfectnessVerdict:
    try:
        return decide_sweet_reduced(E.upper_left.base, E.lower_right, E.upper_left, E.connecting, max_length, window)
    except (ReductionUnavailable, HypothesisViolated) as exc:
        return PerfectnessVerdict(Perfectness.UNDECIDED, SWEETNESS_REDUCTION, details={"reason": exc.to_dict()})


def decide_triangular(
    E: TriangularPresentation,
    max_length: Optional[int] = None,
    window: Optional[DegreeWindow] = None,
    jobs: int = 1,
) -> SmoothnessVerdict:
    """[B 0; N A] is smooth iff B and A are smooth and N is sweet."""
    tasks = [
        lambda: _component_smoothness(E.upper_left, window),
        lambda: _component_smoothness(E.lower_right, window),
        lambda: _sweetness(E, max_length, window),
    ]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=min(jobs, 3)) as pool:
            upper, lower, sweet = [f.result() for f in [pool.submit(t) for t in tasks]]
    else:
        upper, lower, sweet = [t() for t in tasks]
    components = {"upper_left": upper.to_dict(), "lower_right": lower.to_dict(), "connecting": sweet.to_dict()}
    for name, v in (("upper_left", upper), ("lower_right", lower)):
        if v.verdict is Verdict.NOT_SMOOTH:
            return SmoothnessVerdict(
                Verdict.NOT_SMOOTH, TRIANGULAR, witness={"component": name, **(v.witness or {})}, details={"components": components}
            )
    if sweet.verdict is Perfectness.NOT_PERFECT:
        return SmoothnessVerdict(
            Verdict.NOT_SMOOTH, TRIANGULAR, witness={"component": "connecting", **(sweet.witness or {})}, details={"components": components}
        )
    if upper.smooth and lower.smooth and sweet.verdict is Perfectness.PERFECT:
        return SmoothnessVerdict(Verdict.SMOOTH, TRIANGULAR, details={"components": components})
    undecided = [n for n, v in (("upper_left", upper), ("lower_right", lower)) if not v.smooth]
    if sweet.verdict is not Perfectness.PERFECT:
        undecided.append("connecting")
    return SmoothnessVerdict(Verdict.UNDECIDED, TRIANGULAR, details={"components": components, "undecided": undecided})
