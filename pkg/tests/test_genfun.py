from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dowling_kl.algebra import qpoly_eval
from dowling_kl.errors import BadConstantTerm, NotInvertible
from dowling_kl.genfun import (
    BiSeries,
    comp_inverse_x,
    compose_x,
    exp_series,
    integrate_x,
    inverse_kernel,
    labeled_counts,
    log1p_x,
    log_series,
    nth_root,
    power,
    scale_x,
    series_A,
    series_AG,
    series_arith,
    series_C,
    series_S,
    series_SG,
)
from dowling_kl.klengine import dowling_pz
from dowling_kl.qsp import connected_sp, qsp_all, qsp_simple, weighted_counts

N = 8


def one_plus_x(N):
    return BiSeries(N, [[1], [1]])


def test_exp_log_examples():
    assert exp_series(log1p_x(N)) == one_plus_x(N)
    e = exp_series(BiSeries(N, [[], [1, 1]]))
    assert e.coeff(2) == [Fraction(1, 2), Fraction(1), Fraction(1, 2)]
    with pytest.raises(BadConstantTerm):
        log_series(BiSeries(N, [[], [1]]))
    with pytest.raises(BadConstantTerm):
        exp_series(one_plus_x(N))


def test_arith_and_integrate():
    a, b = one_plus_x(4), BiSeries(4, [[], [0, 1]])
    assert series_arith(a, b, "add") == BiSeries(4, [[1], [1, 1]])
    assert series_arith(a, b, "mul") == BiSeries(4, [[], [0, 1], [0, 1]])
    with pytest.raises(ValueError):
        series_arith(a, b, "div")
    # integrating 1 + x gives x + x^2/2, and the x^N term of the integrand is dropped
    assert integrate_x(a) == BiSeries(4, [[], [1], [Fraction(1, 2)]])
    assert integrate_x(BiSeries(2, [[], [], [1]])) == BiSeries(2, [])


def test_compositional_inverse_examples():
    x = BiSeries.x(N)
    assert comp_inverse_x(x) == x
    f = inverse_kernel(N)
    assert f.coeff(1) == [1] and f.coeff(2) == [Fraction(-1, 2), Fraction(-1, 2)]
    g = comp_inverse_x(f)
    assert g.coeff(1) == [1] and g.coeff(2) == [Fraction(1, 2), Fraction(1, 2)]
    assert compose_x(f, g) == x and compose_x(g, f) == x
    with pytest.raises(NotInvertible):
        comp_inverse_x(BiSeries(N, [[], [2]]))
    with pytest.raises(NotInvertible):
        comp_inverse_x(one_plus_x(N))
    with pytest.raises(BadConstantTerm):
        compose_x(x, one_plus_x(N))


small = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@given(st.lists(st.lists(small, max_size=4), min_size=7, max_size=7))
@settings(max_examples=15, deadline=None)
def test_inverse_roundtrip(tail):
    f = BiSeries(N, [[], [1]] + tail)
    g = comp_inverse_x(f)
    assert compose_x(f, g) == BiSeries.x(N)
    assert compose_x(g, f) == BiSeries.x(N)


@given(st.lists(st.lists(small, max_size=3), min_size=N, max_size=N), st.integers(1, 4))
@settings(max_examples=15, deadline=None)
def test_nth_root_roundtrip(tail, r):
    a = BiSeries(N, [[1]] + tail)
    assert power(nth_root(a, r), r) == a
    assert exp_series(log_series(a)) == a


def test_nth_root_examples():
    assert nth_root(BiSeries.constant(N), 3) == BiSeries.constant(N)
    assert nth_root(power(one_plus_x(N), 2), 2) == one_plus_x(N)
    with pytest.raises(BadConstantTerm):
        nth_root(BiSeries(N, [[2]]), 2)
    # labeled counts stay integral under the square root
    half = nth_root(scale_x(series_A(6), 2), 2)
    assert all(isinstance(v, int) for v in labeled_counts(half).values())


def test_named_series_examples():
    C = series_C(N)
    assert C.coeff(1) == [1, 1]
    A = series_A(4)
    assert [A.scaled_coeff(2, k) for k in range(3)] == [1, 3, 1]
    assert A == exp_series(series_C(4))
    S = series_S(4)
    assert S.coeff(0) == [1]  # the empty matroid is counted
    assert series_SG(3, 2).scaled_coeff(3, 2) == 4
    with pytest.raises(ValueError):
        series_C(21)
    with pytest.raises(ValueError):
        series_AG(3, 0)


def test_y_degree_bound():
    for s in (series_C(10), series_A(10), series_S(10), series_AG(8, 3)):
        for i, d in enumerate(s.y_degrees()):
            assert d is None or d <= i


def _census(ms):
    out = {}
    for M in ms:
        out[(M.n, M.rank)] = out.get((M.n, M.rank), 0) + 1
    return out


def test_series_match_enumeration():
    C, A, S = (labeled_counts(f(7)) for f in (series_C, series_A, series_S))
    for n in range(1, 8):
        assert {k: v for k, v in C.items() if k[0] == n} == _census(connected_sp(n))
        assert {k: v for k, v in S.items() if k[0] == n} == _census(qsp_simple(n))
    for n in range(1, 7):
        assert {k: v for k, v in A.items() if k[0] == n} == _census(qsp_all(n))


def test_trivial_group_series():
    assert series_AG(7, 1) == series_A(7)
    assert series_SG(7, 1) == series_S(7)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_weighted_series_match_enumeration(q):
    AG, SG = labeled_counts(series_AG(7, q)), labeled_counts(series_SG(7, q))
    for n in range(1, 8):
        c = weighted_counts(n)
        for k in range(n + 1):
            assert AG.get((n, k), 0) == qpoly_eval(c.all_at(k), q)
            assert SG.get((n, k), 0) == qpoly_eval(c.simple_at(k), q)
            # duality of quasi series-parallel matroids swaps rank k and n - k
            assert AG.get((n, k), 0) == AG.get((n, n - k), 0)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_simple_series_give_kl_coefficients(q):
    SG = series_SG(10, q)
    for n in range(0, 11):
        P = dowling_pz(n).P
        for i in range(n + 1):
            want = qpoly_eval(P[i], q) if i <= P.degree else 0
            assert SG.scaled_coeff(n, n - i) == want


def test_labeled_counts_are_integers():
    counts = labeled_counts(series_S(12))
    assert counts[(3, 2)] == 1 and counts[(0, 0)] == 1
    assert all(v > 0 for v in counts.values())
