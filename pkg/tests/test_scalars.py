"""Exact scalar field: arithmetic laws, canonicity, evaluation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qiso2.errors import EvaluationPoleError, ScalarDivisionError
from qiso2.scalars import (
    GaussianRational,
    IUNIT,
    ONE,
    QHALF,
    RVAR,
    SVAR,
    ZERO,
    from_fraction,
    gauss,
    integer,
    qhpow,
    qpow,
)

# a pool of structurally varied exact scalars; hypothesis draws combinations
POOL = [
    ZERO,
    ONE,
    -ONE,
    integer(3),
    IUNIT,
    ONE + IUNIT,
    from_fraction(Fraction(-2, 3)),
    qpow(1),
    qpow(-2),
    QHALF,
    qhpow(-3),
    SVAR,
    SVAR ** -1,
    RVAR,
    qpow(1) - qpow(-1),
    SVAR + SVAR ** -1,
    IUNIT * QHALF + RVAR,
]

scalars = st.sampled_from(POOL)


@settings(max_examples=60, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    assert (a * ONE) == a
    assert (a + ZERO) == a


@settings(max_examples=60, deadline=None)
@given(scalars, st.sampled_from([x for x in POOL if not x.is_zero()]))
def test_division_inverts(a, b):
    assert (a / b) * b == a


@settings(max_examples=60, deadline=None)
@given(scalars, scalars)
def test_eval_is_a_homomorphism(a, b):
    q, s, r = 1.7, 0.8 + 0.3j, 2.1
    va = a.eval_numeric(q, s, r)
    vb = b.eval_numeric(q, s, r)
    assert abs((a + b).eval_numeric(q, s, r) - (va + vb)) < 1e-9
    assert abs((a * b).eval_numeric(q, s, r) - (va * vb)) < 1e-9


def test_half_powers_compose():
    assert QHALF ** 2 == qpow(1)
    assert QHALF * qhpow(-1) == ONE
    assert qhpow(5) == QHALF ** 5
    assert qpow(-3) * qpow(3) == ONE


def test_equality_crosses_representations():
    # same value reached along different arithmetic routes
    a = (qpow(2) - qpow(-2)) / (qpow(1) - qpow(-1))
    b = qpow(1) + qpow(-1)
    assert a == b
    x = ONE / (SVAR + SVAR ** -1)
    y = SVAR / (SVAR ** 2 + ONE)
    assert x == y


def test_frozen_evaluation_oracle():
    # hand computed: at q=2, s=3 the combination s q + 1/(s q) restricted
    # here to (s q + s^-1 q^-1) is 6 + 1/6 = 37/6, so the inverse is 6/37
    x = ONE / (SVAR * qpow(1) + SVAR ** -1 * qpow(-1))
    v = x.eval_numeric(2.0, 3.0, 1.0)
    assert abs(v - 6.0 / 37.0) < 1e-12
    y = from_fraction(Fraction(-2, 3))
    assert abs(y.eval_numeric(1.3) - (-2.0 / 3.0)) < 1e-15


def test_evaluation_pole():
    x = ONE / (qpow(1) - qpow(-1))
    with pytest.raises(EvaluationPoleError):
        x.eval_numeric(1.0)
    # the same denominator is fine away from the pole
    assert abs(x.eval_numeric(2.0) - 1.0 / 1.5) < 1e-12


def test_negative_powers():
    assert SVAR ** -2 * SVAR ** 2 == ONE
    assert (qpow(1) + ONE) ** -1 * (qpow(1) + ONE) == ONE
    x = (SVAR + SVAR ** -1) ** -1
    assert x * (SVAR + SVAR ** -1) == ONE
    with pytest.raises(TypeError):
        SVAR ** 0.5  # only integer exponents exist


def test_monomial_recognition():
    assert qpow(3).as_monomial() == (GaussianRational(1), (6, 0, 0))
    c, exps = (IUNIT * QHALF ** -1 * SVAR).as_monomial()
    assert exps == (-1, 1, 0) and c.re == 0 and c.im == 1
    assert (qpow(1) + ONE).as_monomial() is None


def test_gaussian_rational_sqrt():
    assert GaussianRational(4).sqrt() == GaussianRational(2)
    assert GaussianRational(-9).sqrt() == GaussianRational(0, 3)
    assert GaussianRational(Fraction(1, 4)).sqrt() == GaussianRational(Fraction(1, 2))
    assert GaussianRational(0, 2).sqrt() == GaussianRational(1, 1)  # (1+i)^2 = 2i
    assert GaussianRational(2).sqrt() is None  # sqrt(2) is not in Q(i)
    assert gauss(4) * gauss(Fraction(1, 4)) == ONE


def test_division_by_zero_refused():
    with pytest.raises(ScalarDivisionError):
        ONE / ZERO
