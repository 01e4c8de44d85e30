"""P_H = {gamma : x + gamma*Tr(H(x)) permutes F_{q^n}}, computed and cross-checked.

Elements are integer indices: the little-endian base-p digits of an index are
the coefficients of the element over the prime field.
"""

import json

from ._core import (
    Field,
    PermtraceError,
    direction_set_size,
    families,
    gamma_map_grids,
    hermite,
    ph_bruteforce,
    ph_directions,
    search,
    trace_table,
    verify_suites,
)
from . import _core

__all__ = [
    "Field",
    "PermtraceError",
    "audit",
    "direction_set_size",
    "error_code",
    "families",
    "gamma_map_grids",
    "hermite",
    "ph_bruteforce",
    "ph_directions",
    "search",
    "trace_table",
    "translators",
    "verify",
    "verify_family",
    "verify_suites",
]


def audit(field, h):
    """Cardinality audit of Tr(H(x)); h is a polynomial string or a trace table."""
    return json.loads(_core._audit(field, h))


def translators(field, h):
    return json.loads(_core._translators(field, h))


def verify(suite, seed=None):
    return json.loads(_core._verify(suite, seed))


def verify_family(name, q, n=2, i=1):
    return json.loads(_core._verify_family(name, q, n, i))


def error_code(exc):
    """The library error code carried by a PermtraceError."""
    return str(exc).split(":", 1)[0]
