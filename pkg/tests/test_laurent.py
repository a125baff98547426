"""Exact Laurent arithmetic, canonical forms, and matrix determinants."""

import random
from fractions import Fraction

import pytest

from knotzeta.laurent import CanonicalPoly, CoefficientError, LaurentPoly, \
    PolyFraction, RingMatrix, canonicalize, det, div_exact, divide_exact, \
    poly_divmod, poly_gcd, rational_det, rational_solve


def P(coeffs, modulus=None):
    return LaurentPoly(coeffs, modulus)


T = P({1: 1})


def test_zero_coefficients_dropped():
    assert P({3: 0, 1: 2}).coeffs == {1: 2}
    assert P({}).is_zero()
    assert not P({})


def test_arithmetic_basics():
    p = P({0: 1, 1: -1})
    q = P({-1: 2})
    assert (p + q).coeffs == {0: 1, 1: -1, -1: 2}
    assert (p - p).is_zero()
    assert (p * q).coeffs == {-1: 2, 0: -2}
    assert (-q).coeffs == {-1: -2}
    assert (p * 0).is_zero()


def test_integer_operands_coerce():
    p = T - 1
    assert p.coeffs == {1: 1, 0: -1}
    assert (1 - T).coeffs == {0: 1, 1: -1}
    assert (2 * p).coeffs == {1: 2, 0: -2}


def test_negative_exponents_multiply():
    tinv = P({-1: 1})
    assert (T * tinv).is_one()
    assert (tinv ** 3).coeffs == {-3: 1}


def test_pow_zero_is_one():
    assert (P({2: 5}) ** 0).is_one()


def test_evaluate_exact():
    p = P({2: 1, 0: -1})
    assert p.evaluate(Fraction(1, 2)) == Fraction(-3, 4)
    assert P({-2: 3}).evaluate(Fraction(2, 3)) == Fraction(27, 4)


def test_evaluate_at_zero_rejected_for_negative_exponents():
    with pytest.raises(ZeroDivisionError):
        P({-1: 1}).evaluate(0)


def test_modular_coefficients_wrap():
    p = P({0: 6, 1: 3}, modulus=7)
    q = P({0: 2, 1: 4}, modulus=7)
    assert (p + q).coeffs == {0: 1}
    assert (p * q).coeffs == {0: 5, 1: 2, 2: 5}


def test_modulus_mismatch_rejected():
    with pytest.raises(CoefficientError):
        P({0: 1}, modulus=5) + P({0: 1}, modulus=7)


def test_fraction_coefficients():
    p = P({0: Fraction(1, 2)})
    assert (p + p).is_one()


def test_json_roundtrip():
    p = P({-2: Fraction(1, 3), 0: -4, 5: 7})
    obj = p.to_json()
    assert obj == {"-2": "1/3", "0": -4, "5": 7}
    assert LaurentPoly.from_json(obj) == p


def test_json_roundtrip_modular():
    p = P({0: 3, 2: 6}, modulus=7)
    assert LaurentPoly.from_json(p.to_json(), modulus=7) == p


def test_str_readable():
    assert str(P({2: 1, 1: -1, 0: 1})) == "t^2 - t + 1"
    assert str(P({})) == "0"
    # terms print in descending exponent order
    assert str(P({-1: 1, 0: -2})) == "-2 + t^-1"
    assert str(P({3: 2, 1: -3})) == "2*t^3 - 3*t"


def test_divmod_and_exact_division():
    a = P({2: 1, 1: -3, 0: 2})
    b = P({1: 1, 0: -1})
    q, r = poly_divmod(a, b)
    assert q * b + r == a
    assert r.is_zero()
    assert div_exact(a, b) == q
    assert div_exact(P({1: 1, 0: 1}), b) is None


def test_div_exact_handles_laurent_shifts():
    a = P({-1: 1, 0: -3, 1: 2})
    b = P({-1: 1, 0: -1})
    q = div_exact(a, b)
    assert q is not None
    assert q * b == a


def test_poly_gcd_normalizes():
    g = poly_gcd(P({2: 1, 0: -1}), P({1: 1, 0: 1}))
    assert g.coeffs == {1: 1, 0: 1}


def test_divide_exact_builds_reduced_fraction():
    num = P({2: 1, 1: -2, 0: 1})
    den = P({1: 1, 0: -1})
    frac = divide_exact(num, den)
    assert frac.is_polynomial
    assert frac.numerator == den
    assert frac.denominator.is_one()
    frac = divide_exact(P({1: 1, 0: 1}), den)
    assert not frac.is_polynomial
    assert isinstance(frac, PolyFraction)
    assert frac.numerator.coeffs == {1: 1, 0: 1}
    assert frac.denominator.coeffs == {1: 1, 0: -1}


def test_canonicalize_over_rationals_keeps_content():
    c = canonicalize(P({-1: -2, 0: 4, 1: -2}))
    assert c.poly.coeffs == {0: 2, 1: -4, 2: 2}
    assert c.unit_coeff == -1 and c.unit_exp == -1
    assert isinstance(c, CanonicalPoly)
    shifted = canonicalize(P({4: -2, 5: 4, 6: -2}))
    assert shifted.poly == c.poly


def test_canonicalize_idempotent():
    c = canonicalize(P({3: 6, 1: -9}))
    assert canonicalize(c.poly).poly == c.poly


def test_canonicalize_monic_over_field():
    c = canonicalize(P({2: 3, 0: 1}, modulus=7))
    assert c.poly.leading() == 1
    assert c.poly.coeffs == {2: 1, 0: 5}
    assert c.unit_coeff == 3


def test_canonical_json_has_unit():
    obj = canonicalize(P({1: -2, 0: 2})).to_json()
    assert set(obj) == {"coeffs", "unit"}
    assert obj["unit"] == "(-1)^1 t^0"


def M(rows, modulus=None):
    return RingMatrix([[P(e, modulus) if isinstance(e, dict) else P({0: e}, modulus)
                        for e in row] for row in rows], modulus)


def test_matrix_shape_and_immutability():
    m = M([[1, 2], [3, 4]])
    assert (m.rows, m.cols) == (2, 2)
    with pytest.raises(AttributeError):
        m.entries = ()


def test_matrix_ragged_rejected():
    with pytest.raises(ValueError):
        M([[1, 2], [3]])


def test_matrix_ring_ops():
    a = M([[1, 2], [3, 4]])
    b = M([[0, 1], [1, 0]])
    assert (a @ b).entries[0][0].coeffs == {0: 2}
    assert (a + b - b) == a
    assert a @ RingMatrix.identity(2) == a
    assert a.power(3) == a @ a @ a
    assert a.trace().coeffs == {0: 5}
    assert a.transpose().entries[0][1].coeffs == {0: 3}


def test_matrix_delete_and_block():
    m = M([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    d = m.delete(rows=(1,), cols=(2,))
    assert [[e.coeff(0) for e in row] for row in d.entries] == [[1, 2], [7, 8]]
    big = RingMatrix.from_blocks([[M([[1]]), M([[2]])], [M([[3]]), M([[4]])]])
    assert big.block(1, 0, 1) == M([[3]])
    assert big.rows == 2 and big.cols == 2


def test_from_blocks_rejects_mixed_sizes():
    with pytest.raises(ValueError):
        RingMatrix.from_blocks([[M([[1]]), M([[1, 0], [0, 1]])]])


def test_det_small_and_empty():
    assert det(RingMatrix([], cols=0)).is_one()
    assert det(M([[5]])).coeffs == {0: 5}
    assert det(M([[1, 2], [3, 4]])).coeffs == {0: -2}


def test_det_laurent_entries():
    m = RingMatrix([[T, P({0: 1})], [P({0: -1}), P({-1: 1})]])
    assert det(m).is_one() is False
    assert det(m).coeffs == {0: 2}


def test_det_methods_agree_on_random_rational_matrices():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 5)
        rows = [[P({0: Fraction(rng.randint(-5, 5), rng.randint(1, 4))})
                 for _ in range(n)] for _ in range(n)]
        m = RingMatrix(rows)
        assert det(m, method="cofactor") == det(m, method="bareiss")


def test_det_methods_agree_on_random_laurent_matrices():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 4)
        rows = [[P({rng.randint(-2, 2): rng.randint(-3, 3)}) for _ in range(n)]
                for _ in range(n)]
        m = RingMatrix(rows)
        assert det(m, method="cofactor") == det(m, method="bareiss")


def test_det_matches_rational_det_after_evaluation():
    rng = random.Random(13)
    for _ in range(15):
        n = rng.randint(1, 4)
        rows = [[P({rng.randint(-1, 1): rng.randint(-2, 2)}) for _ in range(n)]
                for _ in range(n)]
        m = RingMatrix(rows)
        t0 = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        assert det(m).evaluate(t0) == rational_det(m.evaluate(t0))


def test_det_unknown_method_rejected():
    with pytest.raises(ValueError):
        det(M([[1]]), method="laplace")


def test_det_modular():
    m = M([[3, 1], [2, 5]], modulus=7)
    assert det(m).coeffs == {0: 6}


def test_rational_solve_known_system():
    rows = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert rational_solve(rows, [Fraction(5), Fraction(10)]) == [1, 3]


def test_rational_solve_singular_returns_none():
    rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert rational_solve(rows, [Fraction(1), Fraction(1)]) is None


def test_rational_solve_random_roundtrip():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(1, 5)
        a = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        x = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
        b = [sum(a[i][j] * x[j] for j in range(n)) for i in range(n)]
        got = rational_solve(a, b)
        if got is not None:
            assert [sum(a[i][j] * got[j] for j in range(n)) for i in range(n)] == b


def test_evaluate_matrix():
    m = RingMatrix([[T, P({0: 1, 1: -1})]], cols=2)
    assert m.evaluate(Fraction(1, 3)) == [[Fraction(1, 3), Fraction(2, 3)]]
