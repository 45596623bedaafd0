"""Burnside rings and Mackey functors of finite groups, plus categories with squares.

Documents (groups, Mackey functors, presentations, complexes) are plain
dicts in the same JSON layout the eqsk command line reads and writes.  A
group may also be given by fixture name: "C2", "S3", "D4", ...
"""

import json as _json

from . import _core
from ._core import (
    EqskError,
    IncompletenessError,
    OverflowError,
    PreconditionError,
    SizeCapError,
    StabilizationError,
    StructuralError,
    TruncationError,
    ValidationError,
)

__all__ = [
    "EqskError", "IncompletenessError", "OverflowError", "PreconditionError", "SizeCapError",
    "StabilizationError", "StructuralError", "TruncationError", "ValidationError",
    "group", "subgroups", "table_of_marks", "burnside_mul", "associativity_test",
    "burnside_mackey", "validate_mackey", "check_axioms", "k0", "sk_k0", "k0_mackey",
    "phi_psi_check", "beck_chevalley", "euler_characteristic", "fixed_euler", "smith_normal_form",
]


def _enc(doc):
    return _json.dumps(doc)


def _dec(text):
    return _json.loads(text)


def group(ref):
    """Order, name and Cayley table."""
    return _dec(_core.group(_enc(ref)))


def subgroups(ref):
    return _dec(_core.subgroups(_enc(ref)))


def table_of_marks(ref):
    """M[i][j] = |(G/K_j)^{H_i}| over the subgroup classes in ascending order."""
    return _core.table_of_marks(_enc(ref))


def burnside_mul(ref, a, b):
    return _core.burnside_mul(_enc(ref), list(a), list(b))


def associativity_test(ref, trials=500, max_apex=6, seed=20240601):
    return _dec(_core.associativity_test(_enc(ref), trials, max_apex, seed))


def burnside_mackey(ref):
    return _dec(_core.burnside_mackey(_enc(ref)))


def validate_mackey(doc):
    return _dec(_core.validate_mackey(_enc(doc)))


def check_axioms(presentation):
    return _dec(_core.check_axioms(_enc(presentation)))


def k0(presentation, force=False):
    return _dec(_core.k0(_enc(presentation), force))


def sk_k0(ref, orbit, bound):
    """K0 of the truncated category of finite G-sets over G/K_orbit."""
    return _dec(_core.sk_k0(_enc(ref), orbit, bound))


def k0_mackey(ref, bound=None):
    return _dec(_core.k0_mackey(_enc(ref), bound))


def phi_psi_check(ref, subgroup, bound):
    return _dec(_core.phi_psi_check(_enc(ref), list(subgroup), bound))


def beck_chevalley(ref, bound):
    return _dec(_core.beck_chevalley(_enc(ref), bound))


def euler_characteristic(complex_doc):
    return _dec(_core.euler_characteristic(_enc(complex_doc)))


def fixed_euler(complex_doc, subgroup):
    return _core.fixed_euler(_enc(complex_doc), list(subgroup))


def smith_normal_form(matrix):
    """(S, U, V) with U·A·V = S."""
    return _core.smith_normal_form([list(r) for r in matrix])
