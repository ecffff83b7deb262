from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from mckay_dt.errors import (
    ConstantTermError,
    ContextMismatchError,
    DimensionError,
    NegativeExponentError,
    SubstitutionDomainError,
    TruncationError,
)
from mckay_dt.series import (
    FactorSpec,
    MultiSeries,
    SeriesContext,
    binomial_power_coefficient,
    exp_series,
    expand_factor,
    expand_power,
    log_series,
    macmahon_power,
    normalize,
    product_of_factors,
    substitute,
)

CTX = SeriesContext.q_variables(3, 5)


def series_strategy(ctx=CTX, constant=None, coef=st.integers(-4, 4)):
    exps = st.tuples(*[st.integers(0, ctx.order)] * ctx.num_vars).filter(
        lambda e: sum(e) <= ctx.order
    )

    @st.composite
    def build(draw):
        terms = draw(st.dictionaries(exps, coef, max_size=8))
        if constant is not None:
            terms[(0,) * ctx.num_vars] = constant
        return MultiSeries(ctx, terms)

    return build()


# -- construction --------------------------------------------------------------


def test_truncation_on_construction():
    s = MultiSeries(CTX, {(6, 0, 0): 1, (1, 1, 0): 2, (0, 0, 0): 0})
    assert s.terms() == [((1, 1, 0), 2)]


def test_negative_exponent_rejected():
    with pytest.raises(NegativeExponentError):
        MultiSeries(CTX, {(-1, 0, 0): 1})


def test_wrong_length_rejected():
    with pytest.raises(DimensionError):
        MultiSeries(CTX, {(1, 0): 1})


def test_coefficient_access():
    s = MultiSeries(CTX, {(1, 0, 0): 3})
    assert s.coefficient((1, 0, 0)) == 3
    assert s.coefficient((0, 2, 0)) == 0
    with pytest.raises(TruncationError):
        s.coefficient((3, 3, 0))
    assert isinstance(TruncationError("x"), KeyError)


def test_weighted_context():
    ctx = SeriesContext(("u", "t"), 4, (3, -1))
    assert ctx.degree((1, 2)) == 1
    assert SeriesContext(("a", "b"), 2, (1, 1)).weights is None
    with pytest.raises(DimensionError):
        SeriesContext(("a",), 2, (1, 2))
    with pytest.raises(ValueError):
        SeriesContext(("a",), -1)


def test_context_mismatch():
    other = SeriesContext.q_variables(3, 4)
    with pytest.raises(ContextMismatchError):
        MultiSeries.one(CTX) + MultiSeries.one(other)


def test_terms_sorted():
    s = MultiSeries(CTX, {(0, 2, 0): 1, (1, 0, 0): 1, (0, 0, 1): 1, (0, 0, 0): 1})
    assert [e for e, _ in s.terms()] == [(0, 0, 0), (0, 0, 1), (1, 0, 0), (0, 2, 0)]


# -- ring axioms against naive dict arithmetic ------------------------------------


@settings(max_examples=120, deadline=None)
@given(series_strategy(), series_strategy(), series_strategy())
def test_ring_axioms(a, b, c):
    zero, one = MultiSeries.zero(CTX), MultiSeries.one(CTX)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a
    assert a - a == zero
    ab = dict((a * b).terms())
    assert ab == oracles.poly_mul(dict(a.terms()), dict(b.terms()), CTX.order)


@settings(max_examples=100, deadline=None)
@given(series_strategy(), st.integers(0, 4))
def test_power_matches_repeated_product(a, k):
    assert dict((a ** k).terms()) == oracles.naive_power(dict(a.terms()), k, 3, CTX.order)


@settings(max_examples=120, deadline=None)
@given(series_strategy(constant=1), st.sampled_from([1, -1]))
def test_inverse(a, unit):
    a = a * unit
    inv = a.inverse()
    assert a * inv == MultiSeries.one(CTX)


def test_inverse_needs_unit_constant():
    with pytest.raises(ConstantTermError):
        MultiSeries.constant(CTX, 2).inverse()


@settings(max_examples=120, deadline=None)
@given(
    st.tuples(*[st.integers(0, 3)] * 3).filter(any),
    st.sampled_from([1, -1]),
    st.integers(-4, 4),
)
def test_factor_times_inverse_is_one(exponent, sign, power):
    f = expand_power(CTX, exponent, sign, power)
    g = expand_power(CTX, exponent, sign, -power)
    assert f * g == MultiSeries.one(CTX)


@settings(max_examples=100, deadline=None)
@given(st.tuples(*[st.integers(0, 3)] * 3).filter(any), st.sampled_from([1, -1]), st.integers(0, 4))
def test_expand_power_matches_geometric_oracle(exponent, sign, power):
    want = oracles.naive_factor_product(3, [(exponent, sign, power)], CTX.order)
    assert dict(expand_power(CTX, exponent, sign, power).terms()) == want


def test_binomial_power_coefficient():
    assert [binomial_power_coefficient(2, j) for j in range(4)] == [1, 2, 3, 4]
    assert [binomial_power_coefficient(-2, j) for j in range(4)] == [1, -2, 1, 0]
    assert [binomial_power_coefficient(0, j) for j in range(3)] == [1, 0, 0]


def test_expand_factor_power_zero():
    assert expand_factor(CTX, FactorSpec((1, 0, 0), 1, 0)) == MultiSeries.one(CTX)


def test_factor_spec_validation_and_render():
    f = FactorSpec((1, 0, 2), -1, 1)
    assert f.render(("q_0", "q_1", "q_2")) == "(1+q_0q_2^{2})^{-1}"
    with pytest.raises(ValueError):
        FactorSpec((0, 0, 0), 1, 1)
    with pytest.raises(ValueError):
        FactorSpec((1, 0, 0), 2, 1)
    with pytest.raises(ValueError):
        FactorSpec((1, 0, 0), 1, -1)


def test_product_skips_out_of_range_factors():
    ctx = SeriesContext.q_variables(2, 2)
    out = product_of_factors(ctx, [FactorSpec((3, 0), 1, 1), FactorSpec((1, 0), 1, 1)])
    assert out == MultiSeries(ctx, {(0, 0): 1, (1, 0): 1, (2, 0): 1})


# -- MacMahon -------------------------------------------------------------------


def test_macmahon_matches_plane_partitions():
    ctx = SeriesContext(("q",), 6)
    # M(-q) at q -> -q gives M(q); compare coefficients up to sign
    mac = macmahon_power(ctx, (1,), 1)
    counts = oracles.plane_partition_counts(6)
    assert [(-1) ** n * mac.coefficient((n,)) for n in range(7)] == counts


def test_macmahon_power_zero_and_negative():
    ctx = SeriesContext(("q",), 6)
    assert macmahon_power(ctx, (1,), 0) == MultiSeries.one(ctx)
    assert macmahon_power(ctx, (1,), 2) * macmahon_power(ctx, (1,), -2) == MultiSeries.one(ctx)
    with pytest.raises(ValueError):
        macmahon_power(ctx, (0,), 1)


# -- log / exp ----------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(series_strategy(constant=1))
def test_exp_log_roundtrip(a):
    assert normalize(exp_series(log_series(a))) == a


@settings(max_examples=100, deadline=None)
@given(series_strategy(constant=0, coef=st.fractions(max_denominator=5).filter(lambda f: abs(f) < 5)))
def test_log_exp_roundtrip(a):
    assert log_series(exp_series(a)) == a


def test_log_of_geometric():
    ctx = SeriesContext(("x",), 5)
    log = log_series(expand_power(ctx, (1,), 1, 1))
    assert log.terms() == [((k,), Fraction(1, k)) for k in range(1, 6)]


def test_log_exp_need_right_constant():
    with pytest.raises(ConstantTermError):
        log_series(MultiSeries.constant(CTX, 2))
    with pytest.raises(ConstantTermError):
        exp_series(MultiSeries.one(CTX))


# -- substitution ------------------------------------------------------------------


def test_substitute_monomial_map():
    src = SeriesContext(("u", "t"), 3)
    dst = SeriesContext.q_variables(2, 6)
    s = MultiSeries(src, {(1, 1): 1, (2, 0): 5})
    out = substitute(s, dst, [(1, 1), (0, -1)], [-1, 1])
    assert out == MultiSeries(dst, {(1, 0): -1, (2, 2): 5})


def test_substitute_negative_image_rejected():
    src = SeriesContext(("u", "t"), 3)
    dst = SeriesContext.q_variables(2, 6)
    with pytest.raises(SubstitutionDomainError):
        substitute(MultiSeries(src, {(0, 1): 1}), dst, [(1, 1), (0, -1)])


# -- serialization ---------------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(series_strategy(coef=st.fractions(max_denominator=7)))
def test_json_roundtrip(a):
    back = MultiSeries.from_json(a.to_json())
    assert back == a
    assert back.context == a.context


def test_json_keeps_weights():
    ctx = SeriesContext(("u", "t"), 4, (3, -1))
    s = MultiSeries(ctx, {(1, 1): 2})
    assert MultiSeries.from_dict(s.to_dict()).context.weights == (3, -1)


def test_plain_format():
    s = MultiSeries(CTX, {(0, 0, 0): 1, (2, 1, 0): -3})
    assert s.to_plain() == "1\n-3 * q_0^2 q_1"
    assert MultiSeries.zero(CTX).to_plain() == "0"


def test_is_integral():
    assert MultiSeries(CTX, {(1, 0, 0): Fraction(4, 2)}).is_integral()
    assert not MultiSeries(CTX, {(1, 0, 0): Fraction(1, 2)}).is_integral()
