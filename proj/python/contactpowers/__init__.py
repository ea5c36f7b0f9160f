"""Complex powers, Heisenberg star products and the Rumin complex on S^3."""

import json

from . import _core
from ._core import ConfigError, DomainError, NonEllipticError, config_hash, power_part_value

__all__ = [
    "ConfigError",
    "DomainError",
    "NonEllipticError",
    "config_hash",
    "oracle_compare",
    "power_expansion",
    "power_part_value",
    "rumin_contour_deviation",
    "rumin_spectrum",
    "star_degree",
    "verify",
]

__version__ = "0.1.0"


def power_expansion(expr, dim, depth=4):
    """Homogeneous parts of the symbol of P^s for a full symbol given as a polynomial in x and xi."""
    return json.loads(_core.power_expansion(expr, dim, depth))


def oracle_compare(expr, dim, depth=4):
    return json.loads(_core.oracle_compare(expr, dim, depth))


def rumin_spectrum(slot, lmax, c=2.0, a0=2.0, a2=2.0, jobs=1):
    """{level: eigenvalues} for slot "0", "11", "12" or "2"."""
    return dict(_core.rumin_spectrum(str(slot), lmax, c, a0, a2, jobs))


def rumin_contour_deviation(slot, s, lmax, c=2.0):
    return _core.rumin_contour_deviation(str(slot), complex(s), lmax, c)


def star_degree(m1, m2, L=16.0, n=128, kappa=1.0):
    return json.loads(_core.star_degree(m1, m2, L, n, kappa))


def verify(suite="all", ini="", seed=1):
    """Runs a check suite; returns the parsed report (same bytes as the CLI's --emit)."""
    return json.loads(_core.run_verify(suite, ini, seed))
