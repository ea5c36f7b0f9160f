import math

import pytest

import contactpowers as cp


def test_power_expansion_laplacian():
    e = cp.power_expansion("xi1^2 + 3", 1, depth=2)
    assert e["order"] == 2
    assert e["degree_law"]
    assert len(e["parts"]) == 3
    # principal part of P^s at xi = 2 is 4^s
    v = cp.power_part_value("xi1^2 + 3", 1, 2, 0, [0.0, 2.0], 0.5 + 0j)
    assert abs(v - 2.0) < 1e-12


def test_oracle_match():
    r = cp.oracle_compare("xi1^2 + xi2^2 + 1", 2, depth=3)
    assert r["match"]
    assert r["difference_terms"] == 0


def test_errors():
    with pytest.raises(cp.NonEllipticError):
        cp.power_expansion("x1*xi1^2 + 1", 1)
    with pytest.raises(cp.ConfigError):
        cp.config_hash("[run]\nbogus = 1\n")
    with pytest.raises(cp.DomainError):
        cp.rumin_spectrum("7", 3)


def test_rumin_spectrum_closed_form():
    c = 2.0
    spec = cp.rumin_spectrum("0", 6, c=c)
    for level, values in spec.items():
        j = level / 2
        expect = sorted(2 * c * (j * (j + 1) - m * m) for m in [j - k for k in range(level + 1)])
        assert len(values) == level + 1
        for a, b in zip(sorted(values), expect):
            assert abs(a - b) < 1e-9 * max(1.0, b)
    assert cp.rumin_contour_deviation("0", -0.7, 4) < 1e-8


def test_star_degree_small_grid():
    r = cp.star_degree(-2.0, -1.5, L=16.0, n=64)
    assert math.isfinite(r["fitted"])
    assert r["expected"] == -3.5


def test_verify_oracle_suite_deterministic():
    a = cp.verify("oracle", seed=2)
    b = cp.verify("oracle", seed=2)
    assert a == b
    assert a["header"]["seed"] == 2
    assert all(c["pass"] for c in a["checks"])
    assert a["header"]["config_hash"] == cp.config_hash("[run]\nseed = 2\n")
