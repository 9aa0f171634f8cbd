from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dowling_kl.algebra import QPoly, qpoly_eval, qpoly_shift_to_u, scale_t_by_qsquared, tq_eval_at_q
from dowling_kl.errors import DegreeMismatch, TooLarge
from dowling_kl.klengine import dowling_pz
from dowling_kl.rootcheck import (
    Certificate,
    SymMatrix,
    all_minors_positive_in_u,
    bareiss_leading_minors,
    bezout_closed_form,
    bezout_matrix,
    det,
    interlaces,
    is_positive_definite_at,
    leading_minors_positive_in_u,
    sampled_minors_positive,
    sturm_real_rooted,
)

q = QPoly.q()


def scaled_P(n):
    return list(scale_t_by_qsquared(dowling_pz(n).P))


def Z(n):
    return list(dowling_pz(n).Z)


B65 = [[QPoly([10, 10, 5, 1]), QPoly([85, 75])], [QPoly([85, 75]), QPoly([700, 1025, 385, 60])]]
DET65 = QPoly([-225, 4500, 11975, 10275, 3550, 685, 60])
DET65_U = QPoly([30820, 77260, 71850, 32525, 7875, 1045, 60])


def test_bezout_worked_example():
    M = bezout_matrix(scaled_P(6), scaled_P(5))
    assert M == B65
    assert det(M.entries) == DET65
    assert qpoly_shift_to_u(DET65) == DET65_U
    r = all_minors_positive_in_u(M)
    assert r.certified and r.minors_checked == 4  # three 1x1 up to transpose, one 2x2


def test_bezout_small_cases():
    assert bezout_matrix([1, 1], [1]) == [[1]]
    with pytest.raises(DegreeMismatch):
        bezout_matrix([1], [1])
    with pytest.raises(DegreeMismatch):
        bezout_matrix([1, 0, 1], [1, 0, 0, 1])
    with pytest.raises(DegreeMismatch):
        bezout_matrix([1, 0, 1], [1])


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=7), st.data())
@settings(max_examples=60)
def test_bezout_division_matches_closed_form(f, data):
    if f[-1] == 0:
        f[-1] = 1
    d = len(f) - 1
    g = data.draw(st.lists(st.integers(-9, 9), min_size=d + 1, max_size=d + 1))
    if g[-1] == 0 and g[-2:-1] == [0]:
        g[-2] = 1
    M = bezout_matrix(f, g)
    assert M == bezout_closed_form(f, g)
    assert all(M[i, j] == M[j, i] for i in range(d) for j in range(d))


def test_symmatrix_rejects_asymmetric():
    with pytest.raises(ValueError):
        SymMatrix([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        SymMatrix([[1, 2]])


def test_minor_sweep_examples():
    assert all_minors_positive_in_u(SymMatrix([[QPoly(1)]])).certified
    r = all_minors_positive_in_u(SymMatrix([[q - 2]]))
    assert not r.certified and r.witness == ((0,), (0,)) and r.witness_poly == QPoly([-1, 1])
    # zero coefficient in u is not strictly positive
    assert not all_minors_positive_in_u(SymMatrix([[q * q - 2 * q + 2]])).certified
    with pytest.raises(TooLarge):
        all_minors_positive_in_u(SymMatrix([[QPoly(1) if i == j else QPoly() for j in range(11)]
                                            for i in range(11)]))


def test_minor_sweep_catches_off_diagonal_minor():
    # leading minors 1 and 1 are positive, but the minor on rows {0}, cols {1} is -1
    M = SymMatrix([[QPoly(1), QPoly(-1)], [QPoly(-1), QPoly(2)]])
    r = all_minors_positive_in_u(M)
    assert not r.certified and r.witness == ((0,), (1,))
    ok, polys = leading_minors_positive_in_u(M)
    assert ok and polys == [QPoly(1), QPoly(1)]


def test_sweep_agrees_with_brute_force_at_samples():
    # every minor of B(Z_6, Z_5) at q = 1..4 computed directly
    from itertools import combinations

    M = bezout_matrix(Z(6), Z(5))
    assert all_minors_positive_in_u(M).certified
    for q0 in range(1, 5):
        ent = [[qpoly_eval(x, q0) for x in row] for row in M.entries]
        for k in range(1, M.dim + 1):
            for R in combinations(range(M.dim), k):
                for C in combinations(range(M.dim), k):
                    assert det([[ent[i][j] for j in C] for i in R]) > 0


def test_positive_definite_examples():
    M = bezout_matrix(scaled_P(6), scaled_P(5))
    assert is_positive_definite_at(M, 1)
    assert qpoly_eval(M[0, 0], 1) == 26 and qpoly_eval(DET65, 1) == DET65_U[0] == 30820
    assert not is_positive_definite_at(SymMatrix([[1, 2], [2, 1]]))
    assert is_positive_definite_at(SymMatrix([[2, 0], [0, 3]]))
    assert is_positive_definite_at(SymMatrix([[Fraction(1, 2), 0], [0, Fraction(1, 3)]]))
    assert bareiss_leading_minors([[0, 1], [1, 0]]) == [0]


def test_sturm_examples():
    assert not sturm_real_rooted([1, 35, 385, 735]).real_rooted
    r = sturm_real_rooted([1, 2, 1])
    assert r.real_rooted and r.distinct_real_roots == 1 and r.squarefree_degree == 1
    assert sturm_real_rooted(tq_eval_at_q(dowling_pz(10).Z, 2)).real_rooted
    assert sturm_real_rooted([5]).real_rooted
    assert not sturm_real_rooted([1, 0, 1]).real_rooted
    with pytest.raises(ValueError):
        sturm_real_rooted([0])


def test_interlacing_examples():
    f, g = scaled_P(6), scaled_P(5)
    assert interlaces([qpoly_eval(c, 2) for c in f], [qpoly_eval(c, 2) for c in g])
    assert not interlaces([1, 0, 1], [0, 1])
    assert interlaces([3, 4, 1], [2, 1])
    # same roots do not strictly interlace
    assert not interlaces([2, 3, 1], [1, 1])
    with pytest.raises(DegreeMismatch):
        interlaces([1, 0, 1], [1])


roots = st.lists(st.integers(-20, 20), min_size=3, max_size=3)


def _from_roots(rs):
    p = [Fraction(1)]
    for r in rs:
        p = [Fraction(0)] + p
        for i in range(len(p) - 1):
            p[i] -= r * p[i + 1]
    return p


@given(roots)
@settings(max_examples=80)
def test_hermite_form_on_real_rooted_cubics(rs):
    f = _from_roots(rs)
    fp = [i * f[i] for i in range(1, len(f))]
    distinct = len(set(rs)) == 3
    assert is_positive_definite_at(bezout_matrix(f, fp)) == distinct
    assert sturm_real_rooted(f).real_rooted
    assert sturm_real_rooted(f).distinct_real_roots == len(set(rs))


@given(st.integers(-20, 20), st.integers(1, 20), st.integers(-20, 20))
@settings(max_examples=40)
def test_hermite_form_rejects_complex_roots(re, im, r):
    # (x - r)((x - re)^2 + im^2)
    f = _from_roots([r])
    quad = [Fraction(re * re + im * im), Fraction(-2 * re), Fraction(1)]
    prod = [Fraction(0)] * 4
    for i, a in enumerate(f):
        for j, b in enumerate(quad):
            prod[i + j] += a * b
    fp = [i * prod[i] for i in range(1, 4)]
    assert not is_positive_definite_at(bezout_matrix(prod, fp))
    assert not sturm_real_rooted(prod).real_rooted


@pytest.mark.parametrize("n", range(2, 15))
def test_kl_interlacing(n):
    for q0 in range(1, 6):
        ev = lambda p: [qpoly_eval(c, q0) for c in p]
        assert interlaces(ev(scaled_P(n + 1)), ev(scaled_P(n)))
        assert interlaces(ev(Z(n + 1)), ev(Z(n)))


@pytest.mark.parametrize("n", range(2, 15))
def test_kl_bezoutian_totally_positive(n):
    assert all_minors_positive_in_u(bezout_matrix(scaled_P(n + 1), scaled_P(n))).certified


@pytest.mark.parametrize("n", range(1, 8))
def test_z_bezoutian_totally_positive(n):
    assert all_minors_positive_in_u(bezout_matrix(Z(n + 1), Z(n))).certified


def test_substitute_certificate_for_large_z():
    M = bezout_matrix(Z(12), Z(11))
    ok, polys = leading_minors_positive_in_u(M)
    assert ok and len(polys) == 12
    assert sampled_minors_positive(M, [1, 3], samples=30, seed=1) == (True, None)
    assert sampled_minors_positive(SymMatrix([[q - 2]]), [1], samples=5) == (False, (1, (0,), (0,)))


def test_certificate_json():
    c = Certificate("sturm", 3, 2, True)
    assert c.to_json() == '{"kind":"sturm","n":3,"q":2,"verdict":true}'
    c = Certificate("total_positivity", 5, "symbolic", False, {"rows": [0]}, "all_minors", {"dim": 2})
    assert c.to_dict() == {"kind": "total_positivity", "n": 5, "q": "symbolic", "verdict": False,
                           "witness": {"rows": [0]}, "level": "all_minors", "dim": 2}
