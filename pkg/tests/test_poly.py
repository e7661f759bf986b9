from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepder.linalg import SparseEchelon, integer_row, rational_rank, sparse_nullspace
from sepder.poly import (
    MultiPoly,
    UniPolyOverS,
    det_bareiss,
    det_cofactor,
    det_poly_matrix,
    exact_div,
    monomial_transversals,
    parse_poly,
    poly_arith,
    substitute_equal,
)

N = 3


def x(i, n=N):
    return MultiPoly.var(n, i)


def const(c, n=N):
    return MultiPoly.constant(n, c)


@st.composite
def polys(draw, n=N, max_terms=4, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        terms[exp] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
    return MultiPoly(n, terms)


def test_difference_of_squares():
    assert poly_arith(x(1) - x(2), x(1) + x(2), "mul") == x(1) ** 2 - x(2) ** 2


def test_add_zero_is_identity():
    p = x(1) * x(3) - const(2) * x(2)
    assert poly_arith(p, MultiPoly.zero(N), "add") == p


def test_vandermonde_product_has_six_terms():
    p = (x(1) - x(2)) * (x(1) - x(3)) * (x(2) - x(3))
    assert len(p.terms) == 6


def test_arith_rejects_mismatched_rings():
    with pytest.raises(ValueError):
        poly_arith(x(1, 2), x(1, 3), "add")


def test_no_zero_coefficients_stored():
    p = x(1) - x(1)
    assert p.is_zero() and p.terms == {}
    q = MultiPoly(2, {(1, 0): 0, (0, 1): 2})
    assert list(q.terms) == [(0, 1)]


def test_canonical_rendering():
    p = x(1) ** 2 * x(3) - const(2) * x(2)
    assert str(p) == "x1^2*x3 - 2*x2"
    assert str(const(Fraction(1, 2)) * x(1) - const(3)) == "1/2*x1 - 3"
    assert str(MultiPoly.zero(N)) == "0"


@given(polys())
def test_parse_inverts_rendering(p):
    assert parse_poly(str(p), N) == p


def test_parse_factored_forms():
    assert parse_poly("(x1-x2)*(x1+x2)", 2) == x(1, 2) ** 2 - x(2, 2) ** 2
    assert parse_poly("-(x1 - 1/2)^2", 1) == -((x(1, 1) - const(Fraction(1, 2), 1)) ** 2)
    with pytest.raises(ValueError):
        parse_poly("x4", 3)
    with pytest.raises(ValueError):
        parse_poly("x1 +", 3)


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.zero(N)


@given(polys())
def test_hash_consistent_with_equality(p):
    q = MultiPoly(N, dict(p.terms))
    assert p == q and hash(p) == hash(q)


def test_substitute_equal_examples():
    assert substitute_equal(x(1) - x(2), 1, 2).is_zero()
    assert substitute_equal(x(1) ** 2, 1, 2) == x(2) ** 2
    assert substitute_equal((x(1) - x(3)) * (x(2) - x(3)), 1, 2) == (x(2) - x(3)) ** 2


def test_substitute_equal_errors():
    with pytest.raises(IndexError):
        substitute_equal(x(1), 1, 4)
    with pytest.raises(ValueError):
        substitute_equal(x(1), 2, 2)


@given(polys(), st.sampled_from(list(combinations(range(1, N + 1), 2))))
def test_substitution_detects_divisibility(p, edge):
    i, j = edge
    assert substitute_equal(p * (x(i) - x(j)), i, j).is_zero()
    if not p.is_zero():
        assert exact_div(p * (x(i) - x(j)), x(i) - x(j)) == p


def test_exact_div_rejects_non_divisor():
    with pytest.raises(ValueError):
        exact_div(x(1) ** 2 + const(1), x(1) - x(2))


def test_homogeneity_and_degree():
    p = x(1) * x(2) - x(3) ** 2
    assert p.is_homogeneous() and p.degree() == 2
    assert not (p + x(1)).is_homogeneous()


def test_shift_and_set_zero():
    p = x(1) * x(2)
    assert p.set_zero(2).is_zero()
    assert p.shift(3) == (x(1) - x(3)) * (x(2) - x(3))


def test_det_identity_and_vandermonde():
    one, zero = const(1), MultiPoly.zero(N)
    ident = [[one if i == j else zero for j in range(3)] for i in range(3)]
    assert det_poly_matrix(ident) == one
    vdm = [[one, x(i), x(i) ** 2] for i in (1, 2, 3)]
    target = (x(1) - x(2)) * (x(1) - x(3)) * (x(2) - x(3))
    d = det_poly_matrix(vdm)
    assert d == target or d == -target


def test_det_paw_matrix():
    n = 4
    X = [MultiPoly.var(n, i) for i in range(1, 5)]
    zero, one = MultiPoly.zero(n), MultiPoly.constant(n, 1)
    rows = [
        [one, X[0] - X[3], zero, zero],
        [one, zero, X[1] - X[3], (X[1] - X[3]) * (X[1] - X[2])],
        [one, zero, X[2] - X[3], zero],
        [one, zero, zero, zero],
    ]
    q = (X[0] - X[3]) * (X[1] - X[3]) * (X[2] - X[3]) * (X[1] - X[2])
    d = det_poly_matrix(rows)
    assert d == q or d == -q


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det_poly_matrix([[const(1), const(2)]])


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 4).flatmap(
    lambda k: st.lists(st.lists(polys(max_terms=2, max_deg=2), min_size=k, max_size=k), min_size=k, max_size=k)))
def test_bareiss_agrees_with_cofactor(m):
    assert det_bareiss(m) == det_cofactor(m)


def test_transversal_examples():
    assert monomial_transversals([{"a"}, {"b"}]) == [frozenset("ab")]
    assert monomial_transversals([{"a", "b"}, {"b", "c"}]) == [frozenset("b"), frozenset("ac")]
    assert monomial_transversals([{"a"}]) == [frozenset("a")]
    with pytest.raises(ValueError):
        monomial_transversals([{"a"}, set()])


def _divides(y, monomial_support):
    return y <= monomial_support


@settings(max_examples=60)
@given(st.lists(st.sets(st.sampled_from("abc"), min_size=1, max_size=3), min_size=1, max_size=4))
def test_transversals_generate_intersection(sets):
    out = monomial_transversals(sets)
    # every output meets all sets, and no output contains another
    assert all(all(y & s for s in sets) for y in out)
    assert not any(a < b for a in out for b in out)
    # every product with one variable per set is divisible by some output
    for pick in product(*[sorted(s) for s in sets]):
        assert any(_divides(y, set(pick)) for y in out)


def test_unipoly_evaluation():
    n = 3
    p = UniPolyOverS.from_roots(n, [2, 3])
    assert p.degree() == 2
    assert p.evaluate_at_var(1, n) == (x(1) - x(2)) * (x(1) - x(3))
    assert (UniPolyOverS.y_power(n, 2) * UniPolyOverS.y_power(n, 1)).evaluate_at_var(2, n) == x(2) ** 3


def test_rational_rank_examples():
    assert rational_rank([[0, 0], [0, 0]]) == 0
    assert rational_rank([[1 if i == j else 0 for j in range(4)] for i in range(4)]) == 4
    assert rational_rank([[1, 2], [2, 4], [3, 6]]) == 1
    assert rational_rank([[Fraction(1, 2), 1], [1, 2]]) == 1


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6))
def test_sparse_echelon_rank_matches_dense(rows):
    ech = SparseEchelon()
    for r in rows:
        ech.add({k: v for k, v in enumerate(r) if v})
    assert ech.rank == rational_rank(rows)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=4))
def test_nullspace_is_kernel_of_right_size(rows):
    sparse = [{k: v for k, v in enumerate(r) if v} for r in rows]
    basis = sparse_nullspace(sparse, range(5))
    assert len(basis) == 5 - rational_rank(rows)
    for vec in basis:
        for r in rows:
            assert sum(Fraction(r[k]) * vec.get(k, 0) for k in range(5)) == 0
    if basis:
        dense = [[vec.get(k, Fraction(0)) for k in range(5)] for vec in basis]
        assert rational_rank(dense) == len(basis)


def test_integer_row_is_primitive():
    assert integer_row({0: Fraction(1, 2), 3: Fraction(1, 3)}) == {0: 3, 3: 2}
    assert integer_row({1: 4, 2: 6}) == {1: 2, 2: 3}
