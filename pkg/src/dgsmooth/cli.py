"""Command-line front end: ``dgsmooth <command> ...``.

Every command prints one report (JSON by default, ``--format text`` for a
flat rendering of the same data) and exits with a code determined by the
verdict: 0 smooth/perfect, 1 not, 2 undecided, 3 hypothesis violated,
64 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import List, Optional

from . import __version__
from .errors import (
    DgSmoothError,
    HypothesisViolated,
    InconsistentInput,
    NonHomogeneousError,
    ParseError,
    PresentationError,
    ReductionUnavailable,
    UnsupportedEmbedding,
    UnsupportedType,
    WindowTooSmall,
)
from .graded import DegreeWindow

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNDECIDED = 2
EXIT_HYPOTHESIS = 3
EXIT_INPUT = 64

WINDOW_ENV = "DGSMOOTH_DEFAULT_WINDOW"

VERDICT_EXIT = {
    "SMOOTH": EXIT_OK,
    "PERFECT": EXIT_OK,
    "G_SMOOTH": EXIT_OK,
    "COMPLETE": EXIT_OK,
    "NOT_SMOOTH": EXIT_NEGATIVE,
    "NOT_PERFECT": EXIT_NEGATIVE,
    "NOT_G_SMOOTH": EXIT_NEGATIVE,
    "UNDECIDED_WITHIN_BOUND": EXIT_UNDECIDED,
    "TRUNCATED": EXIT_UNDECIDED,
    "REDUCTION_UNAVAILABLE": EXIT_UNDECIDED,
    "HYPOTHESIS_VIOLATED": EXIT_HYPOTHESIS,
    "INPUT_ERROR": EXIT_INPUT,
}

INPUT_ERRORS = (ParseError, NonHomogeneousError, PresentationError, InconsistentInput, UnsupportedType, UnsupportedEmbedding, WindowTooSmall)


def exit_code(verdict: str) -> int:
    return VERDICT_EXIT[verdict]


def _window(args, fallback: Optional[DegreeWindow]) -> Optional[DegreeWindow]:
    if getattr(args, "window", None):
        return DegreeWindow.parse(args.window)
    env = os.environ.get(WINDOW_ENV)
    if env:
        return DegreeWindow.parse(env)
    return fallback


def _window_json(w: Optional[DegreeWindow]):
    return None if w is None else [w.lo, w.hi]


# ---------------------------------------------------------------------------
# commands


def cmd_resolve(args) -> dict:
    from .io import load_json, module_from_json
    from .resolution import Status, default_window, fiber_from_resolution, minimal_resolution

    M = module_from_json(load_json(args.module))
    window = _window(args, default_window(M))
    res = minimal_resolution(M.ring, M, max_length=args.max_length, window=window)
    fiber = fiber_from_resolution(res, window)
    names = M.ring.names
    maps = []
    for i in range(1, len(res.stages)):
        maps.append([[e.format(names) for e in row] for row in res.map_entries(i)])
    return {
        "verdict": res.status.value,
        "criterion": "minimal-resolution",
        "witness": None,
        "window": _window_json(window),
        "details": {
            "generator_degrees": [list(c) for c in res.columns],
            "pd": res.pd if res.status is Status.COMPLETE else "TRUNCATED",
            "certified": res.certified,
            "maps": maps,
            "derived_fiber": {str(d): n for d, n in fiber.dims.as_dict().items()},
            "fiber_status": fiber.status,
        },
    }


def _load_algebra(path, K=None):
    from .io import algebra_from_json, load_json

    return algebra_from_json(load_json(path), K)


def cmd_check_algebra(args) -> dict:
    from .io import load_json, ring_from_json
    from .smoothness import (
        decide_smooth_over_base,
        decide_smooth_over_field,
        decide_smooth_via_diagonal,
        default_window,
    )

    K = ring_from_json(load_json(args.base)) if args.base else None
    A = _load_algebra(args.algebra, K)
    window = _window(args, default_window(A))
    if args.diagonal:
        v = decide_smooth_via_diagonal(A, over_field=args.over_field, max_length=args.max_length, window=window, obstruction=args.obstruction)
    elif args.over_field:
        v = decide_smooth_over_field(A, window)
    else:
        v = decide_smooth_over_base(A.base, A, window)
    return {
        "verdict": v.verdict.value,
        "criterion": v.criterion,
        "witness": v.witness,
        "window": _window_json(window),
        "details": v.details,
    }


def cmd_triangular(args) -> dict:
    from .dg import TriangularPresentation
    from .io import bimodule_from_json, load_json
    from .smoothness import decide_triangular

    B = _load_algebra(args.upper)
    A = _load_algebra(args.lower, B.base)
    N = bimodule_from_json(load_json(args.connecting), B, A)
    window = _window(args, None)
    v = decide_triangular(TriangularPresentation(B, A, N), max_length=args.max_length, window=window, jobs=args.jobs)
    return {
        "verdict": v.verdict.value,
        "criterion": v.criterion,
        "witness": v.witness,
        "window": _window_json(window),
        "details": v.details,
    }


def cmd_equivariant(args) -> dict:
    from .equivariant import check_homogeneous_space
    from .io import group_from_json, load_json

    G = group_from_json(load_json(args.group))
    H = group_from_json(load_json(args.subgroup))
    r = check_homogeneous_space(G, H, args.hint, args.affine_space, args.trivial_cohomology)
    return {
        "verdict": "SMOOTH" if r.smooth else "NOT_SMOOTH",
        "criterion": "compact-subgroup-comparison",
        "witness": None if r.smooth else {"reason": r.reason},
        "window": None,
        "details": r.to_dict(),
    }


def cmd_variety(args) -> dict:
    from .equivariant import check_variety
    from .io import load_json, variety_from_json

    X = variety_from_json(load_json(args.input))
    r = check_variety(X, args.hint, jobs=args.jobs)
    d = r.to_dict()
    return {
        "verdict": d["verdict"],
        "criterion": "orbit-reduction",
        "witness": None if r.smooth else {"orbit": r.first_failure},
        "window": None,
        "details": d,
    }


# ---------------------------------------------------------------------------
# plumbing


def _tristate(value: str) -> Optional[bool]:
    v = value.lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError("expected true or false")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dgsmooth", description="Decide homological smoothness of dg algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, window=True):
        sp.add_argument("--format", choices=("json", "text"), default="json")
        if window:
            sp.add_argument("--window", help="degree window LO:HI")
            sp.add_argument("--max-length", type=int, default=None, help="maximum resolution length")

    r = sub.add_parser("resolve", help="minimal free resolution and derived fiber of a module")
    r.add_argument("--module", required=True)
    common(r)
    r.set_defaults(func=cmd_resolve)

    c = sub.add_parser("check-algebra", help="smoothness of a dg algebra")
    c.add_argument("--algebra", required=True)
    c.add_argument("--base", help="ring JSON for the base (defaults to the algebra's ring)")
    c.add_argument("--over-field", action="store_true", help="decide smoothness over Q")
    c.add_argument("--diagonal", action="store_true", help="resolve the diagonal bimodule")
    c.add_argument("--obstruction", action="store_true", help="allow the amplitude bound to certify non-perfectness")
    common(c)
    c.set_defaults(func=cmd_check_algebra)

    t = sub.add_parser("triangular", help="smoothness of a triangular algebra [B 0; N A]")
    t.add_argument("--upper", required=True, help="algebra B")
    t.add_argument("--lower", required=True, help="algebra A")
    t.add_argument("--connecting", required=True, help="B-A-bimodule N")
    t.add_argument("--jobs", type=int, default=1)
    common(t)
    t.set_defaults(func=cmd_triangular)

    e = sub.add_parser("equivariant", help="G-smoothness of a homogeneous space G/H")
    e.add_argument("--group", required=True)
    e.add_argument("--subgroup", required=True)
    e.add_argument("--hint", default="standard", choices=("standard", "equal-rank"))
    e.add_argument("--affine-space", type=_tristate, default=None)
    e.add_argument("--trivial-cohomology", type=_tristate, default=None)
    common(e, window=False)
    e.set_defaults(func=cmd_equivariant)

    v = sub.add_parser("variety", help="G-smoothness of a variety with finitely many orbits")
    v.add_argument("--input", required=True)
    v.add_argument("--hint", default="standard", choices=("standard", "equal-rank"))
    v.add_argument("--jobs", type=int, default=1)
    common(v, window=False)
    v.set_defaults(func=cmd_variety)
    return p


def render_text(report: dict) -> str:
    lines: List[str] = []

    def walk(prefix: str, value):
        if isinstance(value, dict) and value:
            for k in sorted(value):
                walk(f"{prefix}.{k}" if prefix else str(k), value[k])
        elif isinstance(value, list) and value and any(isinstance(x, (dict, list)) for x in value):
            for i, x in enumerate(value):
                walk(f"{prefix}[{i}]", x)
        else:
            lines.append(f"{prefix}: {json.dumps(value, sort_keys=True)}")

    walk("", report)
    return "\n".join(lines)


def _echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "format", "command")}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    raw = list(sys.argv[1:] if argv is None else argv)
    # "--window -2:8" would otherwise read "-2:8" as an option
    argv = []
    while raw:
        a = raw.pop(0)
        if a == "--window" and raw:
            a = f"--window={raw.pop(0)}"
        argv.append(a)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; that collides with "undecided"
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    started = time.perf_counter()
    try:
        report = args.func(args)
    except HypothesisViolated as exc:
        report = {"verdict": "HYPOTHESIS_VIOLATED", "criterion": None, "witness": exc.to_dict(), "window": None, "details": {}}
    except ReductionUnavailable as exc:
        report = {"verdict": "REDUCTION_UNAVAILABLE", "criterion": None, "witness": exc.to_dict(), "window": None, "details": {}}
    except INPUT_ERRORS as exc:
        print(f"dgsmooth: {exc.code}: {exc}", file=sys.stderr)
        report = {"verdict": "INPUT_ERROR", "criterion": None, "witness": exc.to_dict(), "window": None, "details": {}}
    except DgSmoothError as exc:  # pragma: no cover - every subclass is handled above
        print(f"dgsmooth: {exc}", file=sys.stderr)
        report = {"verdict": "INPUT_ERROR", "criterion": None, "witness": exc.to_dict(), "window": None, "details": {}}
    report = {"command": {"name": args.command, "args": _echo(args)}, **report}
    report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    if args.format == "text":
        print(render_text(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=True, default=str))
    return exit_code(report["verdict"])


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
