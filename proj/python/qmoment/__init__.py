"""q-moments, determinacy criteria and moment-equal witnesses for q-densities.

Numbers cross the boundary as decimal strings so that nothing is rounded
through a binary double. Functions that produce structured results return
plain dicts.
"""

import json as _json

from . import _core
from ._core import (
    Density,
    DomainError,
    InfeasibleWitness,
    NegativeDensity,
    NonConvergence,
    NotNormalized,
    PoleError,
    PrecisionExhausted,
    QMismatch,
    QMomentError,
    eval_lattice,
    euler_product,
    euler_series,
    m2_pattern_table,
    mass,
    point_mass,
    psi,
    read_table,
    registry_names,
    required_digits,
    theta_table,
    write_table,
)

__all__ = [
    "Density",
    "DomainError",
    "InfeasibleWitness",
    "NegativeDensity",
    "NonConvergence",
    "NotNormalized",
    "PoleError",
    "PrecisionExhausted",
    "QMismatch",
    "QMomentError",
    "condition_B",
    "condition_C",
    "erlang_rule",
    "eval_lattice",
    "euler_product",
    "euler_series",
    "m2_pattern_table",
    "mass",
    "point_mass",
    "prop1",
    "psi",
    "q_moment",
    "qexp_rule",
    "read_table",
    "registry_names",
    "required_digits",
    "theta_table",
    "thm2",
    "thm3_mj",
    "witness",
    "write_table",
    "zoo",
]


def zoo(name, **params):
    """Named distribution, e.g. zoo("q-exponential", lambda_="1", q="0.5")."""
    fixed = {}
    for key, value in params.items():
        fixed[key.rstrip("_")] = str(value)
    return _core.zoo(name, fixed)


def q_moment(density, n, digits=50):
    return _json.loads(_core.q_moment(density, n, digits))


def erlang_rule(lambda_, r, q):
    return _json.loads(_core.erlang_rule(str(lambda_), r, str(q)))


def qexp_rule(lambda_, q):
    return _json.loads(_core.qexp_rule(str(lambda_), str(q)))


def condition_B(density, J=40, digits=50):
    return _json.loads(_core.condition_B(density, J, digits))


def condition_C(density, J=40, digits=50):
    return _json.loads(_core.condition_C(density, J, digits))


def thm3_mj(density, m, J=40, digits=50):
    return _json.loads(_core.thm3_mj(density, m, J, digits))


def prop1(density, n_max=20, digits=50):
    return _json.loads(_core.prop1(density, n_max, digits))


def thm2(density, n_max=20, J=40, digits=50):
    return _json.loads(_core.thm2(density, n_max, J, digits))


def witness(density, m=1, N=8, digits=120, alpha=None, J=40):
    a = None if alpha is None else str(alpha)
    return _json.loads(_core.witness(density, m, N, digits, a, J))
