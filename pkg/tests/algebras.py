"""Small dg algebras shared across test modules."""

from __future__ import annotations

from dgsmooth.io import algebra_from_json

X_RING = {"generators": [{"name": "x", "degree": 2}]}
Q_RING = {"generators": []}


def acyclic_pair(ring=X_RING):
    """<u, v> with |u| = 1, |v| = 2, d(u) = v and all products of u, v zero."""
    return algebra_from_json(
        {
            "name": "K<u,v>",
            "ring": ring,
            "generators": [{"name": "1", "degree": 0}, {"name": "u", "degree": 1}, {"name": "v", "degree": 2}],
            "differential": [{"on": "u", "value": "v"}],
        }
    )


def base_quotient(power: int):
    """Q[x]/(x^power) over Q[x]."""
    return algebra_from_json(
        {"name": f"Q[x]/(x^{power})", "ring": X_RING, "generators": [{"name": "1", "degree": 0}], "relations": [[f"x^{power}"]]}
    )


def base_itself():
    return algebra_from_json({"name": "Q[x]", "ring": X_RING, "generators": [{"name": "1", "degree": 0}]})
