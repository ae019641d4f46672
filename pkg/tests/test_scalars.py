from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from uqsl2.errors import ConfigError
from uqsl2.scalars import (
    Ident,
    QContext,
    ThetaMode,
    format_rational,
    parse_rational,
    q_binomial2,
    q_fact,
    q_half_power,
    q_int,
    rational_sqrt,
)


def test_parse_and_format_roundtrip():
    assert parse_rational("4/1") == 4
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational("7") == 7
    assert format_rational(Fraction(1, 4)) == "1/4"
    assert format_rational(4) == "4/1"


@pytest.mark.parametrize("bad", ["", "1/0", "a/2", "1.5", "2/-3"])
def test_parse_rejects(bad):
    with pytest.raises(ConfigError):
        parse_rational(bad)


@given(st.fractions())
def test_format_parse_property(x):
    assert parse_rational(format_rational(x)) == x


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-4)) is None


@pytest.mark.parametrize("q", [0, 1, -1])
def test_context_rejects_roots_of_unity(q):
    with pytest.raises(ConfigError):
        QContext(q, 1, theta_mode=None)


def test_context_rejects_theta_mismatch():
    # theta^2 must equal q in sq-q mode
    with pytest.raises(ConfigError):
        QContext(4, 3, ThetaMode.SQ_Q)
    with pytest.raises(ConfigError):
        QContext(4, 2, ThetaMode.SQ_QINV)
    with pytest.raises(ConfigError):
        QContext(4, 0, theta_mode=None)


def test_standard_contexts():
    ctx = QContext.standard(4)
    assert ctx.theta == -2 and ctx.q_half == 2
    inv = QContext.standard(4, ThetaMode.SQ_QINV)
    assert inv.theta == Fraction(1, 2) and inv.q_half == 2
    neg = QContext.standard(9, ThetaMode.SQ_Q, sign=-1)
    assert neg.q_half == -3 and neg.theta == 3
    with pytest.raises(ConfigError):
        QContext.standard(2)


def test_generic_context_has_no_half_power():
    ctx = QContext(4, Fraction(5, 7), theta_mode=None)
    assert ctx.q_half is None
    with pytest.raises(ConfigError):
        q_half_power(1, ctx)


def test_json_roundtrip():
    ctx = QContext.standard(9, ThetaMode.SQ_QINV, t=-2, ident=Ident.SECONDARY)
    data = ctx.to_json()
    assert data == {"q": "9/1", "theta": "1/3", "theta_mode": "sq-qinv", "t": -2, "ident": "secondary"}
    assert QContext.from_json(data) == ctx
    with pytest.raises(ConfigError):
        QContext.from_json({"q": "4/1"})


def test_q_integers_at_q4():
    ctx = QContext.standard(4)
    # [DERIVED] [2]_4 = 4 + 1/4, [3]_4 = 16 + 1 + 1/16
    assert q_int(0, ctx) == 0
    assert q_int(1, ctx) == 1
    assert q_int(2, ctx) == Fraction(17, 4)
    assert q_int(3, ctx) == Fraction(273, 16)
    assert q_int(-2, ctx) == -Fraction(17, 4)
    assert q_fact(3, ctx) == Fraction(17, 4) * Fraction(273, 16)
    assert q_fact(0, ctx) == 1
    with pytest.raises(ValueError):
        q_fact(-1, ctx)


@given(st.integers(min_value=1, max_value=12))
def test_q_int_is_symmetric_sum(n):
    # [n]_q = sum_{i=0}^{n-1} q^(n-1-2i), computed independently
    ctx = QContext.standard(9)
    q = ctx.q
    assert q_int(n, ctx) == sum(q ** (n - 1 - 2 * i) for i in range(n))


def test_half_powers_follow_theta_sign():
    pos = QContext.standard(4)
    neg = QContext.standard(4, sign=-1)
    assert q_half_power(3, pos) == 8
    assert q_half_power(3, neg) == -8
    assert q_half_power(-2, neg) == Fraction(1, 4)


def test_binomial2():
    assert [q_binomial2(i) for i in range(5)] == [0, 0, 1, 3, 6]
