from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dowling_kl.algebra import (
    DEG_ZERO,
    QPoly,
    QRat,
    TQPoly,
    palindromic_complete,
    qpoly_arith,
    qpoly_eval,
    qpoly_interpolate,
    qpoly_shift_from_u,
    qpoly_shift_to_u,
    scale_t_by_qsquared,
    tq_eval_at_q,
    unscale_t_by_qsquared,
)
from dowling_kl.errors import InconsistentSamples, NonIntegerCoefficients, NotCompletable, NotDivisible

ints = st.integers(min_value=-50, max_value=50)
qpolys = st.lists(ints, max_size=6).map(QPoly)
tqpolys = st.lists(qpolys, max_size=4).map(TQPoly)
q = QPoly.q()


def test_arith_examples():
    assert qpoly_arith(q + 1, q - 1, "mul") == QPoly([-1, 0, 1])
    assert qpoly_arith(QPoly(), q + 3, "add") == q + 3
    assert qpoly_arith(QPoly([3, 3]), q, "mul") == QPoly([0, 3, 3])
    assert qpoly_arith(q, q, "sub").is_zero()


def test_canonical_form():
    assert QPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert QPoly([0, 0]).coeffs == ()
    assert QPoly().degree == DEG_ZERO
    assert QPoly([5]).degree == 0
    assert TQPoly([QPoly([1]), QPoly()]).coeffs == (QPoly([1]),)
    with pytest.raises(TypeError):
        QPoly([Fraction(1, 2)])


def test_qrat_is_reduced():
    r = QRat(6, -4)
    assert (r.numerator, r.denominator) == (-3, 2)


def test_eval_examples():
    assert qpoly_eval(QPoly([10, 5, 1]), 1) == 16
    assert qpoly_eval(QPoly(), 7) == 0
    assert qpoly_eval(QPoly([0, 0, 4, 1]), 2) == 24
    assert qpoly_eval(QPoly([3, 1]), 0) == 3


def test_shift_examples():
    assert qpoly_shift_to_u(q**2) == QPoly([1, 2, 1])
    det = QPoly([-225, 4500, 11975, 10275, 3550, 685, 60])
    assert qpoly_shift_to_u(det) == QPoly([30820, 77260, 71850, 32525, 7875, 1045, 60])
    assert qpoly_shift_to_u(QPoly([7])) == QPoly([7])


def test_interpolate_examples():
    assert qpoly_interpolate([(1, 5), (2, 24), (3, 63), (4, 128)], 3) == QPoly([0, 0, 4, 1])
    assert qpoly_interpolate([(1, 9), (2, 9)], 0) == QPoly([9])
    with pytest.raises(InconsistentSamples):
        qpoly_interpolate([(1, 1), (2, 2), (3, 4)], 1)
    with pytest.raises(InconsistentSamples):
        qpoly_interpolate([(1, 1)], 1)
    with pytest.raises(NonIntegerCoefficients):
        qpoly_interpolate([(0, 0), (1, 0), (2, 1)], 2)  # q(q-1)/2


def test_palindromic_examples():
    t = TQPoly([0, 1])
    assert palindromic_complete(t, 1) == TQPoly([1])
    known = TQPoly([QPoly(), QPoly([3, 3]), QPoly([3, 3, 1]), QPoly(1)])
    assert palindromic_complete(known, 3) == TQPoly([QPoly(1), QPoly([0, 0, 1])])
    with pytest.raises(NotCompletable):
        palindromic_complete(TQPoly([0, 1, 2]), 2)
    with pytest.raises(NotCompletable):
        palindromic_complete(TQPoly([1, 1]), 1)
    assert palindromic_complete(TQPoly(), 0) == TQPoly([1])


def test_palindromic_rejects_bad_known_parts():
    # Boolean lattice of rank 2: known = 2t + t^2
    assert palindromic_complete(TQPoly([0, 2, 1]), 2) == TQPoly([1])
    with pytest.raises(NotCompletable):
        palindromic_complete(TQPoly([0, 2, 1, 1]), 2)  # degree above d
    with pytest.raises(NotCompletable):
        palindromic_complete(TQPoly([1, 2, 1]), 2)  # nonzero constant term
    with pytest.raises(NotCompletable):
        palindromic_complete(TQPoly([0, 1]), 0)


def test_scale_examples():
    p = TQPoly([QPoly(1), QPoly([0, 0, 4, 1])])
    assert scale_t_by_qsquared(p) == TQPoly([QPoly(1), QPoly([4, 1])])
    assert scale_t_by_qsquared(TQPoly([1])) == TQPoly([1])
    with pytest.raises(NotDivisible):
        scale_t_by_qsquared(TQPoly([QPoly(1), q]))


def test_tq_eval_examples():
    assert tq_eval_at_q(TQPoly([QPoly(1), QPoly([0, 0, 1])]), 1) == [1, 1]
    assert tq_eval_at_q(TQPoly([QPoly(1), QPoly([0, 0, 4, 1])]), 2) == [1, 24]


@given(qpolys, qpolys, qpolys)
def test_ring_laws_qpoly(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == QPoly()


@given(tqpolys, tqpolys, tqpolys)
@settings(max_examples=50)
def test_ring_laws_tqpoly(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(qpolys, st.integers(-5, 5))
def test_eval_is_a_ring_map(a, q0):
    b = a * a + QPoly([1, 1])
    assert qpoly_eval(a * b, q0) == qpoly_eval(a, q0) * qpoly_eval(b, q0)
    assert qpoly_eval(a + b, q0) == qpoly_eval(a, q0) + qpoly_eval(b, q0)


@given(qpolys)
def test_shift_roundtrip(p):
    assert qpoly_shift_from_u(qpoly_shift_to_u(p)) == p
    assert qpoly_eval(qpoly_shift_to_u(p), 3) == qpoly_eval(p, 4)


@given(qpolys)
def test_interpolate_roundtrip(p):
    d = max(p.degree, 0)
    samples = [(x, qpoly_eval(p, x)) for x in range(1, d + 4)]
    assert qpoly_interpolate(samples, d) == p


@given(tqpolys)
def test_scale_roundtrip(p):
    up = unscale_t_by_qsquared(p)
    assert scale_t_by_qsquared(up) == p
    for i, c in enumerate(up):
        assert c == p[i] * q ** (2 * i)


@given(st.integers(1, 9), st.lists(qpolys, min_size=5, max_size=5))
def test_palindromic_property(d, pieces):
    # any known part whose completion exists: build Z palindromic, then split
    half = (d + 1) // 2
    P = [QPoly(1)] + pieces[: half - 1]
    P += [QPoly()] * (half - len(P))
    mid = pieces[half - 1:] + [QPoly()] * d
    Z = [QPoly()] * (d + 1)
    Z[0] = Z[d] = QPoly(1)
    for i in range(1, (d + 1) // 2 + (d % 2 == 0)):
        Z[i] = Z[d - i] = mid[i]
    known = TQPoly([Z[i] - (P[i] if i < half else QPoly()) for i in range(d + 1)])
    out = palindromic_complete(known, d)
    assert out == TQPoly(P)
    assert out[0] == QPoly(1)
    assert 2 * out.degree < d
    assert (out + known).is_palindromic(d)
