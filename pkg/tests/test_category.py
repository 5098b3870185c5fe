import cmath
import math

import pytest

from abinv.category import CategoryZn, PhaseExponent, braiding, gauss_delta, gauss_delta_half, \
    is_modular, s_matrix, twist, verify_ribbon_axioms


def _direct_gauss(n, terms=None):
    terms = n if terms is None else terms
    return sum(cmath.exp(-2j * math.pi * p * p / n) for p in range(terms))


def test_braiding_examples():
    assert braiding(CategoryZn(4), 1, 1).to_complex() == pytest.approx(cmath.exp(2j * math.pi / 4))
    assert all(braiding(CategoryZn(n), 0, q) == 1 for n in range(1, 8) for q in range(n))
    assert braiding(CategoryZn(3), 1, 2) == PhaseExponent(2, 3)


def test_twist_examples():
    for eps in (1, -1):
        assert twist(CategoryZn(5, eps), 0) == 1
    assert twist(CategoryZn(4, 1), 2) == 1
    for n in range(1, 13):
        cat = CategoryZn(n, 1)
        assert all(twist(cat, (n - p) % n) == twist(cat, p) for p in range(n))


def test_s_matrix_examples():
    assert s_matrix(CategoryZn(1)) == [[PhaseExponent(0, 1)]]
    assert s_matrix(CategoryZn(2, 1)) == [[1, 1], [1, 1]]
    assert s_matrix(CategoryZn(3, 1))[1][1] == PhaseExponent(2, 3)


def test_s_matrix_symmetric_and_dimensions():
    for n in range(1, 10):
        for eps in (1, -1):
            cat = CategoryZn(n, eps)
            s = cat.s_matrix()
            assert all(s[p][q] == s[q][p] for p in range(n) for q in range(n))
            assert all(s[p][0] == PhaseExponent(0 if eps == 1 else p, 2) for p in range(n))


def test_is_modular_examples():
    assert is_modular(CategoryZn(3))
    assert not is_modular(CategoryZn(4))
    assert is_modular(CategoryZn(1))


def test_phase_arithmetic():
    c = braiding(CategoryZn(7), 1, 1)
    assert c ** 7 == 1
    assert c * c.inverse() == 1
    assert PhaseExponent(1, 2) * PhaseExponent(1, 2) == 1
    assert PhaseExponent(3, 6) == PhaseExponent(1, 2)
    assert c ** -1 == c.inverse()


def test_gauss_delta_examples():
    assert gauss_delta(1) == 1
    assert gauss_delta(2) == 0
    assert gauss_delta(2) == 0j
    assert gauss_delta(4) == pytest.approx(_direct_gauss(4))
    assert gauss_delta(4) == pytest.approx(2 - 2j)


def test_gauss_delta_half_examples():
    assert gauss_delta_half(1) == pytest.approx(1 - 1j)
    assert gauss_delta_half(2) == pytest.approx(2 * cmath.exp(-1j * math.pi / 4))
    for k in range(1, 13):
        direct = _direct_gauss(4 * k, 2 * k)
        assert abs(direct) ** 2 == pytest.approx(2 * k)
        assert gauss_delta_half(k) == pytest.approx(direct)
        assert 2 * gauss_delta_half(k) == pytest.approx(gauss_delta(4 * k))


def test_ribbon_axioms_bilinearity_n6():
    rep = verify_ribbon_axioms(CategoryZn(6))
    assert all(c.passed for c in rep.checks if "bilinear" in c.name)


def test_ribbon_s_twist_relation_n5():
    rep = verify_ribbon_axioms(CategoryZn(5, 1))
    assert all(c.passed for c in rep.checks if "S-twist" in c.name)


def test_ribbon_report_localizes_odd_sign_failure():
    # with epsilon = -1 and N odd, theta_N = -1 != theta_0, so the twist is not a function on Z_N
    rep = verify_ribbon_axioms(CategoryZn(3, -1))
    failed = {c.name for c in rep.failures}
    assert "twist duality theta_p* = theta_p" in failed
    assert all(c.passed for c in rep.checks if c.name.startswith("braiding"))


def test_category_validation():
    from abinv.errors import BadRange, InvalidModulus
    with pytest.raises(InvalidModulus):
        CategoryZn(0)
    with pytest.raises(BadRange):
        CategoryZn(3, 2)
