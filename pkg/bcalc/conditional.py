"""Conditional deduction and abduction."""

import logging
import warnings
import dataclasses

from .errors import (
    ClippingWarning,
    ZeroDenominatorError,
    DegenerateBaseRateError,
)
from .opinion import Opinion, negate, vacuous, expectation
from .operators import NO_LIMITS, LimitParams, add, divide, multiply

__all__ = ["ConditionalPair", "deduce", "reverse_conditionals", "abduce"]

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ConditionalPair:
    """Positive and negative conditional opinions.

    *pos* is the opinion about the consequent given the antecedent,
    *neg* the one given the negated antecedent.  *diagnostics* collects
    the clipping events occurred while deriving the pair.
    """

    pos: Opinion
    neg: Opinion
    diagnostics: tuple[str, ...] = dataclasses.field(
        default=(), compare=False
    )


def deduce(
    wx: Opinion, cond: ConditionalPair, lp: LimitParams = NO_LIMITS
) -> Opinion:
    """Deduce the opinion about the consequent from the antecedent *wx*."""
    return add(
        multiply(wx, cond.pos, lp), multiply(negate(wx), cond.neg, lp)
    )


def _bayes_quotient(
    wy: Opinion, c_y: Opinion, c_ny: Opinion, lp: LimitParams
) -> Opinion:
    numerator = multiply(wy, c_y, lp)
    denominator = add(numerator, multiply(negate(wy), c_ny, lp))
    if expectation(denominator) <= 0:
        raise ZeroDenominatorError(
            "reverse conditional undefined: the denominator opinion "
            "has zero expectation"
        )
    return divide(numerator, denominator, lp, strict=False)


def reverse_conditionals(
    cx_pos: Opinion,
    cx_neg: Opinion,
    a_y: float,
    lp: LimitParams = NO_LIMITS,
) -> ConditionalPair:
    """Derive the conditionals of *y* given *x* from those of *x* given *y*.

    *cx_pos* and *cx_neg* are the opinions about *x* given *y* and
    given not *y*, *a_y* is the base rate of *y*.  Quotients that do
    not satisfy the divisibility conditions are clipped; the events are
    reported in the ``diagnostics`` of the result and not re-emitted as
    warnings, so that the pair is returned whatever the warning filters.
    """
    if not 0 < a_y < 1:
        raise DegenerateBaseRateError(
            f"invalid consequent base rate: {a_y!r} (must be in (0, 1))"
        )
    wy = vacuous(a_y)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        pos = _bayes_quotient(wy, cx_pos, cx_neg, lp)
        neg = _bayes_quotient(wy, negate(cx_pos), negate(cx_neg), lp)

    diagnostics = tuple(str(item.message) for item in caught)
    if diagnostics:
        logger.debug("reverse conditionals clipped: %s", diagnostics)
    return ConditionalPair(pos, neg, diagnostics)


def abduce(
    wx: Opinion,
    cx_pos: Opinion,
    cx_neg: Opinion,
    a_y: float,
    lp: LimitParams = NO_LIMITS,
) -> Opinion:
    """Infer the opinion about *y* from *wx* and the conditionals of *x*.

    A single :class:`ClippingWarning` summarizes the clipping events of
    the conditional reversal, if any.
    """
    cond = reverse_conditionals(cx_pos, cx_neg, a_y, lp)
    if cond.diagnostics:
        warnings.warn(
            "abduce: reversed conditionals clipped ("
            + "; ".join(cond.diagnostics)
            + ")",
            ClippingWarning,
            stacklevel=2,
        )
    return deduce(wx, cond, lp)
