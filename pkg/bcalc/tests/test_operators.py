"""Test bcalc.operators."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcalc.frames import belief, disbelief, prob_expectation
from bcalc.errors import (
    OutOfRangeError,
    ClippingWarning,
    PreconditionError,
    NotDivisibleError,
    EqualBaseRatesError,
    NotCodivisibleError,
    DivisionByFalseError,
    BaseRateOverflowError,
    CodivisionByTrueError,
    MissingLimitParamError,
    DegenerateBaseRateError,
)
from bcalc.oracle import random_opinion
from bcalc.opinion import Opinion, negate, expectation
from bcalc.operators import (
    LimitParams,
    TrianglePoint,
    add,
    divide,
    codivide,
    multiply,
    subtract,
    comultiply,
    divisibility_check,
    cartesian_product_bba,
    codivisibility_check,
    product_range_contains,
    product_range_vertices,
    division_range_contains,
    division_range_vertices,
    coproduct_range_contains,
    codivision_range_contains,
)

WX = Opinion(0.7, 0.1, 0.2, 0.5)
WY = Opinion(0.5, 0.3, 0.2, 0.4)
PRODUCT = Opinion(0.4225, 0.37, 0.2075, 0.2)

unit = st.floats(min_value=0, max_value=1)
base_rates = st.floats(min_value=0.05, max_value=0.95)


@st.composite
def opinions(draw, a=base_rates):
    u = draw(unit)
    share = draw(unit)
    return Opinion(share * (1 - u), (1 - share) * (1 - u), u, draw(a))


def close(w: Opinion, expected: Opinion, abs=1e-12) -> bool:  # noqa: A002
    return w.astuple() == pytest.approx(expected.astuple(), abs=abs)


class TestLimitParams:
    @staticmethod
    def test_defaults():
        lp = LimitParams()
        assert (lp.eta, lp.zeta, lp.gamma, lp.delta) == (None,) * 4

    @staticmethod
    @pytest.mark.parametrize(
        "kwargs",
        [{"eta": -1}, {"zeta": float("inf")}, {"gamma": 1.5}, {"delta": -0.1}],
    )
    def test_invalid(kwargs):
        with pytest.raises(OutOfRangeError):
            LimitParams(**kwargs)


class TestAdd:
    @staticmethod
    def test_example():
        wx = Opinion(0.2, 0.5, 0.3, 0.25)
        wy = Opinion(0.1, 0.6, 0.3, 0.25)
        w = add(wx, wy)
        assert w.astuple() == pytest.approx((0.3, 0.4, 0.3, 0.5))
        assert expectation(w) == pytest.approx(
            expectation(wx) + expectation(wy)
        )
        assert add(wy, wx) == w

    @staticmethod
    def test_zero_addend():
        wy = Opinion(0.3, 0.4, 0.3, 0.5)
        w = add(Opinion(0, 1, 0, 0.2), wy)
        assert w.b == pytest.approx(wy.b)
        assert w.a == pytest.approx(0.7)
        assert expectation(w) == pytest.approx(expectation(wy))
        assert close(add(Opinion(0, 1, 0, 0), wy), wy)

    @staticmethod
    def test_base_rate_overflow():
        with pytest.raises(BaseRateOverflowError) as exc_info:
            add(Opinion(0.2, 0.5, 0.3, 0.6), Opinion(0.1, 0.6, 0.3, 0.5))
        assert exc_info.value.failed == ("a_x + a_y <= 1",)
        assert isinstance(exc_info.value, PreconditionError)

    @staticmethod
    def test_degenerate_base_rates():
        with pytest.raises(DegenerateBaseRateError):
            add(Opinion(0.2, 0.5, 0.3, 0), Opinion(0.1, 0.6, 0.3, 0))

    @staticmethod
    def test_excess_belief():
        with pytest.raises(PreconditionError) as exc_info:
            add(Opinion(0.6, 0.4, 0, 0.2), Opinion(0.6, 0.4, 0, 0.2))
        assert "b_x + b_y <= 1" in exc_info.value.failed

    @staticmethod
    def test_clipping():
        wx = Opinion(0.5, 0, 0.5, 0.1)
        wy = Opinion(0.4, 0, 0.6, 0.05)
        with pytest.warns(ClippingWarning):
            w = add(wx, wy)
        assert w.a == pytest.approx(0.15)
        assert expectation(w) == pytest.approx(0.98)


class TestSubtract:
    @staticmethod
    def test_example():
        w = subtract(Opinion(0.3, 0.4, 0.3, 0.5), Opinion(0.1, 0.6, 0.3, 0.25))
        assert close(w, Opinion(0.2, 0.5, 0.3, 0.25))

    @staticmethod
    def test_equal_base_rates():
        with pytest.raises(EqualBaseRatesError):
            subtract(Opinion(0.3, 0.4, 0.3, 0.5), Opinion(0.1, 0.6, 0.3, 0.5))

    @staticmethod
    def test_failed_conditions():
        with pytest.raises(PreconditionError) as exc_info:
            subtract(
                Opinion(0.2, 0.5, 0.3, 0.25), Opinion(0.3, 0.4, 0.3, 0.5)
            )
        failed = exc_info.value.failed
        assert "a_y < a_x" in failed
        assert "b_y <= b_x" in failed
        assert "d_x <= d_y" in failed


class TestMultiply:
    @staticmethod
    def test_example():
        w = multiply(WX, WY)
        assert close(w, PRODUCT)
        assert expectation(w) == pytest.approx(0.464)

    @staticmethod
    @given(opinions(), opinions())
    def test_homomorphism(wx, wy):
        w = multiply(wx, wy)
        assert expectation(w) == pytest.approx(
            expectation(wx) * expectation(wy), abs=1e-9
        )
        assert w.a == pytest.approx(wx.a * wy.a)

    @staticmethod
    @given(opinions(), opinions())
    def test_commutative(wx, wy):
        assert multiply(wx, wy) == multiply(wy, wx)

    @staticmethod
    def test_limit_parameter():
        wx = Opinion(0.5, 0.3, 0.2, 1)
        wy = Opinion(0.4, 0.4, 0.2, 1)
        with pytest.raises(MissingLimitParamError):
            multiply(wx, wy)
        w = multiply(wx, wy, LimitParams(eta=1))
        assert close(w, Opinion(0.29, 0.58, 0.13, 1))
        assert expectation(w) == pytest.approx(0.42)

    @staticmethod
    def test_absolute_opinions():
        w = multiply(Opinion(1, 0, 0, 0.5), Opinion(0, 1, 0, 0.5))
        assert close(w, Opinion(0, 1, 0, 0.25))


class TestComultiply:
    @staticmethod
    def test_de_morgan():
        w = comultiply(negate(WX), negate(WY))
        assert close(w, negate(PRODUCT))

    @staticmethod
    @given(opinions(), opinions())
    def test_homomorphism(wx, wy):
        ex = expectation(wx)
        ey = expectation(wy)
        w = comultiply(wx, wy)
        assert expectation(w) == pytest.approx(ex + ey - ex * ey, abs=1e-9)
        assert comultiply(wy, wx) == w

    @staticmethod
    def test_limit_parameter():
        wx = Opinion(0.3, 0.5, 0.2, 0)
        wy = Opinion(0.4, 0.4, 0.2, 0)
        with pytest.raises(MissingLimitParamError):
            comultiply(wx, wy)
        w = comultiply(wx, wy, LimitParams(zeta=1))
        assert close(w, Opinion(0.58, 0.29, 0.13, 0))


class TestDivide:
    @staticmethod
    def test_inverse_example():
        assert close(divide(PRODUCT, WY), WX, abs=1e-9)

    @staticmethod
    @pytest.mark.parametrize("seed", range(50))
    def test_inverse(seed):
        rng = np.random.default_rng(seed)
        wx = random_opinion(rng)
        wy = random_opinion(rng)
        w = multiply(wx, wy)
        assert divisibility_check(w, wy)
        assert close(divide(w, wy), wx, abs=1e-9)

    @staticmethod
    def test_not_divisible():
        wx = Opinion(0.5, 0.1, 0.4, 0.2)
        check = divisibility_check(wx, WY)
        assert not check
        assert check.failed == ("d_x >= d_y",)
        with pytest.raises(NotDivisibleError) as exc_info:
            divide(wx, WY)
        assert exc_info.value.failed == ("d_x >= d_y",)

    @staticmethod
    def test_base_rate_condition():
        check = divisibility_check(Opinion(0.5, 0.3, 0.2, 0.5), WY)
        assert "a_x <= a_y" in check.failed

    @staticmethod
    def test_non_strict():
        wx = Opinion(0.5, 0.1, 0.4, 0.2)
        with pytest.warns(ClippingWarning):
            w = divide(wx, WY, strict=False)
        assert close(w, Opinion(1, 0, 0, 0.5), abs=1e-9)

    @staticmethod
    def test_division_by_false():
        with pytest.raises(DivisionByFalseError):
            divide(Opinion(0, 1, 0, 0.2), Opinion(0, 1, 0, 0.5))

    @staticmethod
    def test_equal_base_rates():
        wx = Opinion(0.4, 0.44, 0.16, 0.4)
        w = divide(wx, WY)
        assert w.a == 1
        assert w.d == pytest.approx(0.2)
        assert expectation(w) == pytest.approx(0.8)
        assert w.b == pytest.approx(0.8 * 0.5 / 0.58)

        w = divide(wx, WY, LimitParams(gamma=0.75))
        assert close(w, Opinion(0.6, 0.2, 0.2, 1))

    @staticmethod
    def test_equal_base_rates_not_divisible():
        with pytest.raises(NotDivisibleError) as exc_info:
            divide(Opinion(0.5, 0.3, 0.2, 0.4), Opinion(0.3, 0.3, 0.4, 0.4))
        assert "b_x = (1-d_x)*b_y/(1-d_y)" in exc_info.value.failed

    @staticmethod
    def test_equal_base_rates_non_strict():
        wx = Opinion(0.3, 0.2, 0.5, 0.5)
        wy = Opinion(0.5, 0.1, 0.4, 0.5)
        assert not divisibility_check(wx, wy)
        with pytest.warns(ClippingWarning, match="operands violate"):
            w = divide(wx, wy, strict=False)
        assert w.a == 1
        assert expectation(w) == pytest.approx(0.55 / 0.7, abs=1e-12)
        assert w.u == pytest.approx(0.2 / 0.7 * 0.8 / 0.9, abs=1e-12)


class TestCodivide:
    @staticmethod
    def test_inverse_example():
        w = codivide(negate(PRODUCT), negate(WY))
        assert close(w, negate(WX), abs=1e-9)

    @staticmethod
    @pytest.mark.parametrize("seed", range(50))
    def test_inverse(seed):
        rng = np.random.default_rng(seed)
        wx = random_opinion(rng)
        wy = random_opinion(rng)
        w = comultiply(wx, wy)
        assert codivisibility_check(w, wy)
        assert close(codivide(w, wy), wx, abs=1e-9)

    @staticmethod
    def test_codivision_by_true():
        with pytest.raises(CodivisionByTrueError):
            codivide(Opinion(1, 0, 0, 0.7), Opinion(1, 0, 0, 0.5))

    @staticmethod
    def test_not_codivisible():
        with pytest.raises(NotCodivisibleError) as exc_info:
            codivide(Opinion(0.1, 0.5, 0.4, 0.7), Opinion(0.3, 0.5, 0.2, 0.5))
        assert "b_x >= b_y" in exc_info.value.failed

    @staticmethod
    def test_equal_base_rates():
        wx = Opinion(0.44, 0.4, 0.16, 0.6)
        wy = Opinion(0.3, 0.5, 0.2, 0.6)
        w = codivide(wx, wy, LimitParams(delta=0.75))
        assert close(w, Opinion(0.2, 0.6, 0.2, 0))
        w = codivide(wx, wy)
        assert w.a == 0
        assert expectation(w) == pytest.approx(0.2)

    @staticmethod
    def test_equal_base_rates_non_strict():
        wx = Opinion(0.2, 0.3, 0.5, 0.5)
        wy = Opinion(0.1, 0.5, 0.4, 0.5)
        assert not codivisibility_check(wx, wy)
        with pytest.warns(ClippingWarning, match="operands violate"):
            w = codivide(wx, wy, strict=False)
        assert w.a == 0
        assert expectation(w) == pytest.approx(0.15 / 0.7, abs=1e-12)


def test_cartesian_product_bba():
    bba = cartesian_product_bba(WX, WY)
    assert belief(bba, bba.conjunction) == pytest.approx(WX.b * WY.b)
    assert disbelief(bba, bba.conjunction) == pytest.approx(
        multiply(WX, WY).d
    )
    assert belief(bba, bba.disjunction) == pytest.approx(
        comultiply(WX, WY).b
    )
    wx = Opinion(0.7, 0.1, 0.2, 0.5)
    wy = Opinion(0.5, 0.3, 0.2, 0.5)
    bba = cartesian_product_bba(wx, wy)
    assert prob_expectation(bba, bba.conjunction) == pytest.approx(
        expectation(wx) * expectation(wy)
    )


class TestRanges:
    @staticmethod
    def test_product_vertices():
        point_d, point_e, vertex = product_range_vertices(
            Opinion(0.3, 0.3, 0.4, 0.6), 0.4
        )
        assert point_d == pytest.approx((0.0631578947, 0.3, 0.6368421053))
        assert point_e == pytest.approx((0.4894736842, 0.3, 0.2105263158))
        assert vertex == TrianglePoint(0, 1, 0)

    @staticmethod
    @pytest.mark.parametrize("seed", range(50))
    def test_products_in_range(seed):
        rng = np.random.default_rng(seed)
        wx = random_opinion(rng)
        wy = random_opinion(rng)
        assert product_range_contains(wx, wy.a, multiply(wx, wy))
        assert coproduct_range_contains(wx, wy.a, comultiply(wx, wy))

    @staticmethod
    def test_outside_product_range():
        wx = Opinion(0.3, 0.3, 0.4, 0.6)
        # lower disbelief than the factor
        assert not product_range_contains(wx, 0.4, Opinion(0.3, 0.2, 0.5, 0))
        assert not product_range_contains(wx, 0.4, Opinion(0.6, 0.3, 0.1, 0))

    @staticmethod
    def test_division_vertices():
        point_d, point_e, _ = division_range_vertices(WY, 0.2)
        assert point_d == pytest.approx((0.1875, 0.3, 0.5125))
        assert point_e == pytest.approx((0.55, 0.3, 0.15))

    @staticmethod
    def test_division_range():
        assert division_range_contains(WY, PRODUCT.a, PRODUCT)
        assert not division_range_contains(
            WY, 0.2, Opinion(0.5, 0.1, 0.4, 0.2)
        )
        assert not division_range_contains(WY, 0.5, WY)

    @staticmethod
    def test_division_range_equal_base_rates():
        wx = Opinion(0.4, 0.44, 0.16, 0.4)
        assert division_range_contains(WY, WY.a, wx)
        assert not division_range_contains(
            WY, WY.a, Opinion(0.3, 0.5, 0.2, 0.4)
        )

    @staticmethod
    @pytest.mark.parametrize("seed", range(100))
    def test_division_range_matches_check(seed):
        rng = np.random.default_rng(seed)
        wy = random_opinion(rng)
        wx = random_opinion(rng, a=wy.a * rng.uniform(0.1, 0.9))
        assert division_range_contains(wy, wx.a, wx) == bool(
            divisibility_check(wx, wy)
        )
        nx, ny = negate(wx), negate(wy)
        assert codivision_range_contains(ny, nx.a, nx) == bool(
            codivisibility_check(nx, ny)
        )
