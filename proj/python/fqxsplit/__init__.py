"""Explicit isomorphisms of algebras with M_n(F_q(x)).

Thin wrappers over the C++ core. Every file format is the JSON used by the
``fqxsplit`` command line; these functions take and return parsed dicts.
"""

import json

from ._core import (
    FqxError,
    NotSplit,
    NotUnital,
    PromiseViolation,
    ValidationError,
)
from . import _core

__all__ = [
    "FqxError",
    "NotSplit",
    "NotUnital",
    "PromiseViolation",
    "ValidationError",
    "gen",
    "split",
    "maxorder",
    "reduce",
    "verify",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def gen(p, n, max_deg=1, seed=0, e=1):
    """Returns (algebra, ground_truth) for a random change of basis of M_n(F_q(x))."""
    algebra, truth = _core.gen(p, e, n, max_deg, seed)
    return json.loads(algebra), json.loads(truth)


def split(algebra, seed=0, check_associativity=False):
    return json.loads(_core.split(_dump(algebra), seed, check_associativity))


def maxorder(algebra, ring="fx", seed=0):
    return json.loads(_core.maxorder(_dump(algebra), ring, seed))


def reduce(lattice):
    return json.loads(_core.reduce(_dump(lattice)))


def verify(algebra, isomorphism):
    """True iff the images define a unital injective homomorphism."""
    return _core.defect(_dump(algebra), _dump(isomorphism)) == ""
