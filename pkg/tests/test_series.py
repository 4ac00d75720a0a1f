from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qchar.partitions import partitions_of
from qchar.series import (
    NonPolynomialError,
    QPoly,
    QRat,
    QSeries,
    inv_qpoch,
    qpoch,
    qrat_reduce_to_poly,
    series_inverse,
)


def count_partitions_max_part(k: int, n: int) -> int:
    return sum(1 for p in partitions_of(k, k) if not p or p[0] <= n)


def test_qpoch_examples():
    assert qpoch(0) == QPoly([1])
    assert qpoch(1) == QPoly([1, -1])
    assert qpoch(2) == QPoly([1, -1, -1, 1])


def test_inv_qpoch_examples():
    assert inv_qpoch(1, 3) == QSeries([1, 1, 1, 1], 3)
    assert inv_qpoch(0, 5) == QSeries.one(5)
    # partitions of k into parts <= 2, k = 0..4: brute-force counted
    expected = [count_partitions_max_part(k, 2) for k in range(5)]
    assert expected == [1, 1, 2, 2, 3]
    assert inv_qpoch(2, 4) == QSeries(expected, 4)


def test_series_inverse_examples():
    assert series_inverse(QSeries([1, -1], 3)) == QSeries([1, 1, 1, 1], 3)
    assert series_inverse(QSeries([1], 5)) == QSeries.one(5)
    assert series_inverse(qpoch(2).to_series(4)) == inv_qpoch(2, 4)
    with pytest.raises(ZeroDivisionError):
        series_inverse(QSeries([0, 1], 3))


def test_qrat_reduce_examples():
    assert qrat_reduce_to_poly(QRat(QPoly([1, 0, -1]), QPoly([1, -1]))) == QPoly([1, 1])
    p = QPoly([3, 0, 2])
    assert qrat_reduce_to_poly(QRat(p, 1)) == p
    with pytest.raises(NonPolynomialError):
        qrat_reduce_to_poly(QRat(QPoly([1, -1]), QPoly([1, 0, -1])))


def test_qrat_canonical_form():
    a = QRat(QPoly([2, -2]), QPoly([-2, 0, 2]))
    b = QRat(QPoly([-1]), QPoly([1, 1]))
    assert a == b
    assert a.den.leading() == 1
    assert QRat(QPoly([1]), QPoly([2])) == Fraction(1, 2)


def test_qpoch_times_inverse_is_one():
    for n in range(13):
        for Q in (0, 7, 30):
            assert qpoch(n).to_series(Q) * inv_qpoch(n, Q) == QSeries.one(Q)


def test_inv_qpoch_counts_partitions():
    for n in range(7):
        series = inv_qpoch(n, 20)
        for k in range(21):
            assert series.coeff(k) == count_partitions_max_part(k, n)


def test_truncation_takes_minimum():
    a = QSeries([1, 2, 3, 4], 3)
    b = QSeries([1, 1], 1)
    assert (a + b).order == 1
    assert (a * b).order == 1
    with pytest.raises(IndexError):
        (a * b).coeff(2)


def test_json_round_trip():
    p = QPoly([1, Fraction(-1, 2), 3])
    assert p.to_json() == ["1", "-1/2", "3"]
    assert QPoly.from_json(p.to_json()) == p
    s = QSeries([1, Fraction(2, 3)], 4)
    assert QSeries.from_json(s.to_json()) == s
    assert s.to_json()["order"] == 4


ORDER = 6
coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
series = st.lists(coeff, min_size=0, max_size=ORDER + 1).map(lambda cs: QSeries(cs, ORDER))


@settings(max_examples=60, deadline=None)
@given(series, series, series)
def test_series_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == QSeries.zero(ORDER)


polys = st.lists(st.integers(-4, 4), max_size=5).map(QPoly)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b:
        quot, rem = a.divmod(b)
        assert quot * b + rem == a
        assert rem.degree < b.degree


@settings(max_examples=40, deadline=None)
@given(polys, polys.filter(bool), polys.filter(bool))
def test_qrat_field_ops(a, b, c):
    x, y = QRat(a, b), QRat(c, b * b + QPoly([1]))
    assert (x + y) - y == x
    if y:
        assert (x * y) / y == x
