import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from varchenko.closedform import formula_A
from varchenko.exactalg import (DEFAULT_PRIME, MissingVariableError,
                                PrimeField, factored_eval)
from varchenko.families import FamilyKind, build_family
from varchenko.geometry import enumerate_chambers
from varchenko.matrix import (MatrixError, _det_packed, _det_simple,
                              degree_bound, det_bruteforce, det_mod,
                              separating_set, varchenko_matrix_eval)

F = PrimeField(DEFAULT_PRIME)


def kind(s):
    return build_family(FamilyKind.parse(s))


def braid3_chamber(A, order):
    """Chamber of the 3-coordinate braid where coordinates decrease in the
    given order, e.g. (1,2,3) means x1 > x2 > x3."""
    for c in enumerate_chambers(A):
        w = c.witness
        if all(w[order[k] - 1] > w[order[k + 1] - 1] for k in range(2)):
            return c
    raise AssertionError


# ---------------------------------------------------------------------------
# separating sets
# ---------------------------------------------------------------------------


def test_adjacent_transposition_crosses_one_wall():
    A = kind("A:3")
    c1, c2 = braid3_chamber(A, (1, 2, 3)), braid3_chamber(A, (2, 1, 3))
    assert separating_set(c1, c2).indices == frozenset({0})


def test_self_separation_empty():
    A = kind("A:3")
    c = braid3_chamber(A, (1, 2, 3))
    assert separating_set(c, c).indices == frozenset()


def test_full_reversal_crosses_every_wall():
    A = kind("A:3")
    c1, c2 = braid3_chamber(A, (1, 2, 3)), braid3_chamber(A, (3, 2, 1))
    assert separating_set(c1, c2).indices == frozenset({0, 1, 2})


def test_separating_set_length_mismatch():
    A, B = kind("A:3"), kind("B:2")
    with pytest.raises(MatrixError):
        separating_set(enumerate_chambers(A)[0], enumerate_chambers(B)[0])


@given(st.data())
@settings(max_examples=40)
def test_separating_set_symmetric_difference_identity(data):
    ch = enumerate_chambers(kind("B:3"))
    i, j, k = (data.draw(st.integers(0, len(ch) - 1)) for _ in range(3))
    s12 = separating_set(ch[i], ch[j]).indices
    s23 = separating_set(ch[j], ch[k]).indices
    s13 = separating_set(ch[i], ch[k]).indices
    assert s13 == s12 ^ s23
    assert s12 == separating_set(ch[j], ch[i]).indices


def test_antipodal_invariance_of_entries():
    A = kind("D:3")
    ch = enumerate_chambers(A)
    index = {c.signs: n for n, c in enumerate(ch)}
    M = varchenko_matrix_eval(A, ch, {w: 7 + i for i, w in enumerate(A.weight_names())}, F)
    for i in range(0, len(ch), 5):
        for j in range(0, len(ch), 7):
            ai = index[tuple(-s for s in ch[i].signs)]
            aj = index[tuple(-s for s in ch[j].signs)]
            assert M.entries[i][j] == M.entries[ai][aj]


# ---------------------------------------------------------------------------
# matrix build
# ---------------------------------------------------------------------------


def test_single_wall_matrix():
    A = kind("A:2")
    ch = enumerate_chambers(A)
    M = varchenko_matrix_eval(A, ch, {"q_{1,2}": 77}, F)
    assert M.entries == ((1, 77), (77, 1))


def test_zero_weights_give_identity_matrix():
    A = kind("B:2")
    ch = enumerate_chambers(A)
    M = varchenko_matrix_eval(A, ch, {w: 0 for w in A.weight_names()}, F)
    for i, row in enumerate(M.entries):
        assert all(v == (1 if i == j else 0) for j, v in enumerate(row))


def test_matrix_symmetric_with_unit_diagonal():
    A = kind("I2:5")
    ch = enumerate_chambers(A)
    M = varchenko_matrix_eval(A, ch, {w: 3 + i for i, w in enumerate(A.weight_names())}, F)
    n = len(ch)
    assert all(M.entries[i][i] == 1 for i in range(n))
    assert all(M.entries[i][j] == M.entries[j][i] for i in range(n) for j in range(n))


def test_d2_matrix_is_tensor_product():
    # sign-vector coordinates factor: entry(st, uv) = a^[s!=u] * b^[t!=v]
    A = kind("D:2")
    ch = enumerate_chambers(A)
    a, b = 5, 9
    M = varchenko_matrix_eval(A, ch, {"q_{1,2}": a, "q_{-1,2}": b}, F)
    pos = {c.signs: i for i, c in enumerate(ch)}
    for s in (1, -1):
        for t in (1, -1):
            for u in (1, -1):
                for v in (1, -1):
                    expect = (a if s != u else 1) * (b if t != v else 1)
                    assert M.entries[pos[(s, t)]][pos[(u, v)]] == expect


def test_matrix_missing_weight():
    A = kind("A:3")
    with pytest.raises(MissingVariableError):
        varchenko_matrix_eval(A, enumerate_chambers(A), {"q_{1,2}": 1}, F)


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------


def test_det_identity():
    assert det_mod([[1, 0], [0, 1]], 97) == 1
    assert det_mod([], 97) == 1


def test_det_single_wall_closed_form():
    A = kind("A:2")
    ch = enumerate_chambers(A)
    w = 123456789
    M = varchenko_matrix_eval(A, ch, {"q_{1,2}": w}, F)
    assert det_bruteforce(M) == (1 - w * w) % F.p


def test_det_braid3_matches_closed_form_at_random_points():
    A = kind("A:3")
    ch = enumerate_chambers(A)
    f = formula_A(3)
    for salt in range(5):
        assignment = {w: (hash((w, salt)) % (F.p - 1)) + 1 for w in A.weight_names()}
        M = varchenko_matrix_eval(A, ch, assignment, F)
        assert det_bruteforce(M) == factored_eval(f, assignment, F)


def test_det_singular_matrix_is_zero():
    assert det_mod([[1, 2], [2, 4]], 10007) == 0
    assert det_mod([[5, 0], [5, 0]], 10007) == 0


def test_det_not_square():
    with pytest.raises(MatrixError):
        det_mod([[1, 2, 3], [4, 5, 6]], 97)


@given(st.integers(1, 7), st.sampled_from([10007, 2**31 - 1, DEFAULT_PRIME]), st.data())
@settings(max_examples=60)
def test_packed_det_agrees_with_simple(n, p, data):
    rows = [[data.draw(st.integers(0, p - 1)) for _ in range(n)] for _ in range(n)]
    simple = _det_simple([row[:] for row in rows], p)
    packed = _det_packed([row[:] for row in rows], p)
    assert simple == packed


def test_packed_det_on_structured_matrix():
    # permanent-free check on a matrix big enough to exercise the packed path
    n = 60
    p = DEFAULT_PRIME
    rows = [[(i * n + j + 1) ** 2 % p for j in range(n)] for i in range(n)]
    for i in range(n):
        rows[i][i] = 1
    assert det_mod(rows, p) == _det_simple([r[:] for r in rows], p)


# ---------------------------------------------------------------------------
# degree bound
# ---------------------------------------------------------------------------


def test_degree_bound_values():
    from varchenko.exactalg import FactoredProduct, Monomial
    single = FactoredProduct(((Monomial.from_vars(["q_{1,2}"]), 1),))
    assert degree_bound(single) == 2
    assert degree_bound(formula_A(3)) == 18
    assert degree_bound(FactoredProduct(())) == 0
