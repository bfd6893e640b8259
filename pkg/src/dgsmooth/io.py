"""Parsing of polynomial strings and JSON presentations."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Sequence, Tuple

from .errors import ParseError
from .graded import GradedModulePresentation, GradedPolyRing, KPolynomial


def parse_polynomial(text, names: Sequence[str]) -> KPolynomial:
    """Parse ``text`` (e.g. ``"x^2 - 3/2*x*y"``) as a polynomial in ``names``.

    Integers and Fractions are accepted as constants.
    """
    n = len(names)
    if isinstance(text, (int, Fraction)):
        return KPolynomial.constant(n, text)
    if not isinstance(text, str):
        raise ParseError(f"expected a polynomial string, got {text!r}")
    import sympy
    from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

    syms = [sympy.Symbol(s) for s in names]
    local = {s: sym for s, sym in zip(names, syms)}
    try:
        expr = parse_expr(text, local_dict=local, transformations=standard_transformations + (convert_xor,), evaluate=True)
        expr = sympy.sympify(expr)
    except Exception as exc:  # sympy raises a zoo of types here
        raise ParseError(f"cannot parse polynomial {text!r}: {exc}") from exc
    extra = expr.free_symbols - set(syms)
    if extra:
        raise ParseError(f"unknown symbols {sorted(str(s) for s in extra)} in {text!r}")
    if not syms:
        if not expr.is_Rational:
            raise ParseError(f"expected a rational constant, got {text!r}")
        return KPolynomial.constant(0, Fraction(int(expr.p), int(expr.q)))
    try:
        poly = sympy.Poly(expr, *syms, domain="QQ")
    except Exception as exc:
        raise ParseError(f"{text!r} is not a polynomial with rational coefficients") from exc
    terms = {}
    for mono, c in poly.terms():
        terms[tuple(int(k) for k in mono)] = Fraction(int(c.numerator), int(c.denominator))
    return KPolynomial(n, terms)


# ---------------------------------------------------------------------------
# JSON helpers


def load_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    return data


def _require(obj: Mapping, key: str, where: str):
    if not isinstance(obj, Mapping) or key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    return obj[key]


def _named_degrees(items, where: str) -> List[Tuple[str, int]]:
    if not isinstance(items, list):
        raise ParseError(f"{where}: expected a list")
    out = []
    for it in items:
        name = _require(it, "name", where)
        deg = _require(it, "degree", where)
        if not isinstance(name, str) or not isinstance(deg, int) or isinstance(deg, bool):
            raise ParseError(f"{where}: bad entry {it!r}")
        out.append((name, deg))
    if len({n for n, _ in out}) != len(out):
        raise ParseError(f"{where}: duplicate names")
    return out


def ring_from_json(obj: Mapping) -> GradedPolyRing:
    gens = _named_degrees(obj.get("generators", []) if isinstance(obj, Mapping) else None, "ring")
    try:
        return GradedPolyRing(gens)
    except ValueError as exc:
        raise ParseError(f"ring: {exc}") from exc


def ring_to_json(K: GradedPolyRing) -> dict:
    return {"generators": [{"name": n, "degree": d} for n, d in K.generators]}


def _poly_entry(entry, names) -> KPolynomial:
    if isinstance(entry, Mapping):
        entry = _require(entry, "poly", "relation entry")
    if isinstance(entry, bool):
        raise ParseError("boolean is not a polynomial")
    if isinstance(entry, int):
        return KPolynomial.constant(len(names), entry)
    return parse_polynomial(entry, names)


def module_from_json(obj: Mapping, K: GradedPolyRing | None = None) -> GradedModulePresentation:
    """Module over ``K`` (or over the ring embedded in ``obj``)."""
    if K is None:
        K = ring_from_json(_require(obj, "ring", "module"))
    gens = _named_degrees(obj.get("generators", []), "module generators")
    rels = []
    for r in obj.get("relations", []):
        if not isinstance(r, list):
            raise ParseError("module relations: each relation must be a list")
        rels.append([_poly_entry(e, K.names) for e in r])
    return GradedModulePresentation(K, gens, rels, name=str(obj.get("name", "")))


def module_to_json(M: GradedModulePresentation) -> dict:
    names = M.ring.names
    return {
        "ring": ring_to_json(M.ring),
        "generators": [{"name": n, "degree": d} for n, d in M.generators],
        "relations": [[{"poly": e.format(names)} for e in r] for r in M.relations],
    }


def linear_combination(text, K: GradedPolyRing, gen_names: Sequence[str], unit: int | None = None) -> Dict[int, KPolynomial]:
    """Parse a K-linear combination of generators, e.g. ``"x*u - 2*v"``.

    Returns generator index -> coefficient.  The expression must be linear
    in the generator symbols; when ``unit`` is given, terms free of
    generator symbols are multiples of that generator (so ``"x"`` means
    ``x * 1``).
    """
    if isinstance(text, bool):
        raise ParseError("boolean is not a combination of generators")
    if isinstance(text, (int, Fraction)):
        text = str(text)
    symbolic = [(i, n) for i, n in enumerate(gen_names) if n.isidentifier()]
    clash = set(K.names) & {n for _, n in symbolic}
    if clash:
        raise ParseError(f"names used both as ring and module generators: {sorted(clash)}")
    allnames = list(K.names) + [n for _, n in symbolic]
    p = parse_polynomial(text, allnames)
    s = K.nvars
    out: Dict[int, Dict] = {}
    for mono, c in p.terms.items():
        tail = mono[s:]
        if sum(tail) == 0 and unit is not None:
            g = unit
        elif sum(tail) == 1:
            g = symbolic[tail.index(1)][0]
        else:
            raise ParseError(f"{text!r} is not linear in the generators {list(gen_names)}")
        out.setdefault(g, {})[mono[:s]] = c
    return {g: KPolynomial(s, t) for g, t in out.items()}


def _check_names(gens, allow_unit: str | None = None) -> None:
    for n, _ in gens:
        if n != allow_unit and not n.isidentifier():
            raise ParseError(f"generator name {n!r} must be an identifier")


def _index(names: Sequence[str], name, where: str) -> int:
    try:
        return list(names).index(name)
    except ValueError:
        raise ParseError(f"{where}: unknown generator {name!r}") from None


def algebra_from_json(obj: Mapping, K: GradedPolyRing | None = None):
    """A dg algebra: a module presentation plus ``unit``, ``product`` and ``differential``."""
    from .dg import DgAlgebraPresentation

    M = module_from_json(obj, K)
    K = M.ring
    names = [n for n, _ in M.generators]
    unit_name = obj.get("unit")
    if unit_name is None:
        unit_name = "1" if "1" in names else next((n for n, d in M.generators if d == 0), None)
    if unit_name is None:
        raise ParseError("algebra: no unit generator in degree 0")
    unit = _index(names, unit_name, "unit")
    _check_names(M.generators, allow_unit=unit_name)
    product = {}
    for entry in obj.get("product", []):
        i = _index(names, _require(entry, "left", "product"), "product")
        j = _index(names, _require(entry, "right", "product"), "product")
        product[(i, j)] = linear_combination(_require(entry, "value", "product"), K, names, unit)
    differential = {}
    for entry in obj.get("differential", []):
        g = _index(names, _require(entry, "on", "differential"), "differential")
        differential[g] = linear_combination(_require(entry, "value", "differential"), K, names, unit)
    return DgAlgebraPresentation(K, M, unit, product, differential, name=str(obj.get("name", "")))


def bimodule_from_json(obj: Mapping, upper, lower):
    """A bimodule over (upper, lower), i.e. a left module over upper (x) lower^op."""
    from .dg import bimodule_from_actions

    K = upper.base
    M = module_from_json(obj, K)
    _check_names(M.generators)
    names = [n for n, _ in M.generators]
    bnames = [n for n, _ in upper.module.generators]
    anames = [n for n, _ in lower.module.generators]

    def table(key, by_names, left_side):
        out = {}
        for entry in obj.get(key, []):
            m = _index(names, _require(entry, "on", key), key)
            a = _index(by_names, _require(entry, "by", key), key)
            val = linear_combination(_require(entry, "value", key), K, names)
            out[(a, m) if left_side else (m, a)] = val
        return out

    left = table("left_action", bnames, True)
    right = table("right_action", anames, False)
    diff = {}
    for entry in obj.get("differential", []):
        g = _index(names, _require(entry, "on", "differential"), "differential")
        diff[g] = linear_combination(_require(entry, "value", "differential"), K, names)
    unbounded = obj.get("unbounded", False)
    if not isinstance(unbounded, bool):
        raise ParseError("unbounded must be a boolean")
    return bimodule_from_actions(upper, lower, M, left, right, diff, unbounded, name=str(obj.get("name", "N")))


def group_from_json(obj: Mapping):
    from .equivariant import GroupDescriptor

    if not isinstance(obj, Mapping):
        raise ParseError("group must be an object")
    levi = []
    for f in obj.get("levi", []):
        t = _require(f, "type", "levi factor")
        r = _require(f, "rank", "levi factor")
        if not isinstance(t, str) or not isinstance(r, int) or isinstance(r, bool):
            raise ParseError(f"bad levi factor {f!r}")
        levi.append((t, r))
    ctr = obj.get("central_torus_rank", 0)
    udim = obj.get("unipotent_dim", 0)
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in (ctr, udim)):
        raise ParseError("ranks must be integers")
    try:
        return GroupDescriptor(str(obj.get("name", "")), tuple(levi), ctr, udim)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def variety_from_json(obj: Mapping):
    from .equivariant import OrbitDescriptor, OrbitStratification

    G = group_from_json(_require(obj, "group", "variety"))
    orbits = []
    for o in _require(obj, "orbits", "variety"):
        flags = {}
        for key in ("affine_space", "trivial_cohomology"):
            v = o.get(key)
            if v is not None and not isinstance(v, bool):
                raise ParseError(f"orbit flag {key} must be a boolean")
            flags[key] = v
        orbits.append(OrbitDescriptor(str(_require(o, "name", "orbit")), group_from_json(_require(o, "stabilizer", "orbit")), **flags))
    try:
        return OrbitStratification(G, tuple(orbits))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
