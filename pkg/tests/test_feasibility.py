from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from varchenko.feasibility import DimensionMismatchError, feasible_strict


def check_witness(system, dim, witness):
    assert witness is not None and len(witness) == dim
    for form, rel in system:
        value = sum(Fraction(a) * x for a, x in zip(form, witness)) + Fraction(form[-1])
        if rel == ">":
            assert value > 0
        elif rel == ">=":
            assert value >= 0
        else:
            assert value == 0


def test_contradiction_infeasible():
    assert feasible_strict([((1, 0), ">"), ((-1, 0), ">")], 1) is None


def test_single_strict_feasible():
    system = [((1, 0), ">")]
    check_witness(system, 1, feasible_strict(system, 1))


def test_braid_all_plus_chamber_feasible():
    # x1 > x2 > x3 as the sign-(+,+,+) system of the three difference hyperplanes
    system = [((1, -1, 0, 0), ">"), ((1, 0, -1, 0), ">"), ((0, 1, -1, 0), ">")]
    w = feasible_strict(system, 3)
    check_witness(system, 3, w)
    assert w[0] > w[1] > w[2]


def test_weak_boundary_point():
    system = [((1, 0), ">="), ((-1, 0), ">=")]
    w = feasible_strict(system, 1)
    assert w == (Fraction(0),)


def test_strict_against_weak_infeasible():
    assert feasible_strict([((1, 0), ">"), ((-1, 0), ">=")], 1) is None


def test_equalities_substitute():
    system = [((1, 0, -1), "="), ((0, 1, -2), "="), ((1, 1, -3), ">=")]
    w = feasible_strict(system, 2)
    assert w == (Fraction(1), Fraction(2))


def test_equality_conflict():
    assert feasible_strict([((1, -1), "="), ((1, -2), "=")], 1) is None


def test_equality_with_strict_violation():
    assert feasible_strict([((1, -1), "="), ((-1, 0), ">")], 1) is None


def test_rational_coefficients():
    system = [((Fraction(1, 3), Fraction(-1, 2)), ">")]
    w = feasible_strict(system, 1)
    check_witness(system, 1, w)


def test_unbounded_direction():
    system = [((1, -1, 0), ">"), ((0, 1, -5), ">")]
    check_witness(system, 2, feasible_strict(system, 2))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        feasible_strict([((1, 0, 0), ">")], 1)


def test_bad_relation():
    with pytest.raises(ValueError):
        feasible_strict([((1, 0), "<")], 1)


def test_constant_rows():
    assert feasible_strict([((0, 0, 1), ">")], 2) is not None
    assert feasible_strict([((0, 0, -1), ">=")], 2) is None
    assert feasible_strict([((0, 0, 0), ">")], 2) is None
    assert feasible_strict([((0, 0, 0), ">=")], 2) is not None


points = st.lists(st.fractions(min_value=-5, max_value=5), min_size=2, max_size=4)


@given(points,
       st.lists(st.tuples(
           st.lists(st.integers(-4, 4), min_size=2, max_size=4),
           st.sampled_from([">", ">=", "="])), min_size=1, max_size=8),
       st.data())
@settings(max_examples=150)
def test_systems_built_around_a_point_are_feasible(center, raw, data):
    """Soundness and completeness on constructed-feasible systems: take a
    random point, keep each random form on the side the point satisfies."""
    dim = len(center)
    system = []
    for coefs, rel in raw:
        coefs = (coefs + [0] * dim)[:dim]
        value = sum(Fraction(a) * x for a, x in zip(coefs, center))
        if rel == "=":
            form = tuple(coefs) + (-value,)
        elif value == 0:
            form = tuple(coefs) + (0,)
            rel = ">="
        else:
            sign = 1 if value > 0 else -1
            form = tuple(sign * a for a in coefs) + (0,)
        system.append((form, rel))
    w = feasible_strict(system, dim)
    check_witness(system, dim, w)


@given(st.integers(2, 4), st.data())
@settings(max_examples=60)
def test_infeasible_by_strict_contradiction(dim, data):
    coefs = data.draw(st.lists(st.integers(-4, 4), min_size=dim, max_size=dim)
                      .filter(lambda c: any(c)))
    extra = data.draw(st.lists(st.tuples(
        st.lists(st.integers(-3, 3), min_size=dim, max_size=dim),
        st.sampled_from([">", ">="])), max_size=4))
    system = [(tuple(coefs) + (0,), ">"), (tuple(-a for a in coefs) + (0,), ">=")]
    system += [(tuple(c) + (0,), rel) for c, rel in extra]
    assert feasible_strict(system, dim) is None
