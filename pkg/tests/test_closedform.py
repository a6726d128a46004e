from math import comb, factorial

import pytest

from varchenko.closedform import formula_A, formula_B, formula_D, formula_I2, zagier
from varchenko.exactalg import (DEFAULT_PRIME, Monomial, PrimeField,
                                factored_eval, factored_specialize_all)
from varchenko.families import FamilyKind, build_family
from varchenko.geometry import factored_determinant_general

F = PrimeField(DEFAULT_PRIME)


def mono(*names):
    return Monomial.from_vars(names)


def q_power(d):
    return Monomial((("q", d),))


# ---------------------------------------------------------------------------
# braid family
# ---------------------------------------------------------------------------


def test_formula_a_rank_one():
    assert formula_A(2).factors == ((mono("q_{1,2}"), 1),)


def test_formula_a_rank_two_instantiated():
    assert formula_A(3).factors == (
        (mono("q_{1,2}"), 2), (mono("q_{1,3}"), 2), (mono("q_{2,3}"), 2),
        (mono("q_{1,2}", "q_{1,3}", "q_{2,3}"), 1),
    )


def test_formula_a_rank_three_pair_exponents():
    f = formula_A(4)
    for m, e in f.factors:
        if m.degree == 1:
            assert e == 6  # 0! * 3!


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_formula_a_matches_geometry(n):
    A = build_family(FamilyKind("A", n))
    assert formula_A(n) == factored_determinant_general(A)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_formula_a_factor_count(n):
    assert len(formula_A(n).factors) == 2**n - n - 1


# ---------------------------------------------------------------------------
# hyperoctahedral family
# ---------------------------------------------------------------------------


def test_formula_b_rank_two_factors():
    expect = {
        (mono("q_{1,2}"), 2),
        (mono("q_{-1,2}"), 2),
        (mono("q_{1}"), 2),
        (mono("q_{2}"), 2),
        (mono("q_{1}", "q_{2}", "q_{1,2}", "q_{-1,2}"), 2),
    }
    assert set(formula_B(2).factors) == expect


def test_formula_b2_specializes_like_i2_4():
    # the two arrangements coincide, so the single-variable shapes must agree
    lhs = factored_specialize_all(formula_B(2), "q")
    rhs = factored_specialize_all(formula_I2(4), "q")
    assert lhs == rhs


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_formula_b_factor_count(n):
    expect = sum(comb(n, k) * 2**(k - 1) for k in range(2, n + 1)) + 2**n - 1
    assert len(formula_B(n).factors) == expect


def test_formula_b_matches_geometry_rank_two():
    assert formula_B(2) == factored_determinant_general(build_family(FamilyKind("B", 2)))


# ---------------------------------------------------------------------------
# demihyperoctahedral family (printed form, documented mismatch)
# ---------------------------------------------------------------------------


def test_formula_d_rank_two_as_printed():
    assert set(formula_D(2).factors) == {
        (mono("q_{1,2}"), 1),
        (mono("q_{-1,2}"), 1),
        (mono("q_{1,2}", "q_{-1,2}"), 2),
    }


def test_formula_d_rank_two_differs_from_tensor_ground_truth():
    truth = factored_determinant_general(build_family(FamilyKind("D", 2)))
    assert set(truth.factors) == {(mono("q_{1,2}"), 2), (mono("q_{-1,2}"), 2)}
    assert formula_D(2) != truth


def test_formula_d_rank_three_triple_exponent_as_printed():
    f = formula_D(3)
    e = dict(f.factors)[mono("q_{1,2}", "q_{1,3}", "q_{2,3}")]
    assert e == 1  # 2^0 * 1! * 1!


# ---------------------------------------------------------------------------
# dihedral family
# ---------------------------------------------------------------------------


def test_formula_i2_smallest_case_drops_origin():
    assert formula_I2(2).factors == ((mono("q_{1}"), 2), (mono("q_{2}"), 2))


def test_formula_i2_three_lines():
    f = formula_I2(3)
    assert (mono("q_{1}", "q_{2}", "q_{3}"), 1) in f.factors
    for j in (1, 2, 3):
        assert (mono(f"q_{{{j}}}"), 2) in f.factors


def test_formula_i2_origin_exponent():
    f = formula_I2(5)
    full = mono(*[f"q_{{{j}}}" for j in range(1, 6)])
    assert dict(f.factors)[full] == 3  # m - 2


# ---------------------------------------------------------------------------
# single-variable specialization
# ---------------------------------------------------------------------------


def test_zagier_smallest():
    assert zagier(2).factors == ((q_power(1), 1),)


def test_zagier_rank_two():
    assert zagier(3).factors == ((q_power(1), 6), (q_power(3), 1))


@pytest.mark.parametrize("n", range(2, 9))
def test_specialized_braid_formula_equals_zagier(n):
    assert factored_specialize_all(formula_A(n), "q") == zagier(n)


def test_zagier_24_exponents_exact():
    f = zagier(24)
    assert len(f.factors) == 23
    for m, e in f.factors:
        assert e > 0
    # spot check the biggest exponent against the direct big-integer quotient
    exps = dict(f.factors)
    assert exps[q_power(1)] == factorial(24) * 23 // 2


@pytest.mark.parametrize("n", range(2, 25))
def test_zagier_exponents_positive_integers(n):
    for m, e in zagier(n).factors:
        assert isinstance(e, int) and e > 0


def test_zagier_value_matches_specialized_eval():
    r = 987654321
    n = 6
    lhs = factored_eval(zagier(n), {"q": r}, F)
    rhs = factored_eval(formula_A(n), {w: r for w in formula_A(n).variables()}, F)
    assert lhs == rhs
