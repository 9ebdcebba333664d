"""Binomial opinions: value type, expectation, negation and clipping."""

import dataclasses
from typing import NamedTuple, Optional, Union

from .utils import EPS_ADD, ratio, median3, unit_clamp, in_unit_interval
from .errors import OutOfRangeError, AdditivityError, InvalidVectorError

__all__ = [
    "Opinion",
    "BasicProbabilityVector",
    "ProbabilityExpectation",
    "BelPl",
    "make_opinion",
    "vacuous",
    "expectation",
    "negate",
    "to_pv",
    "from_pv",
    "bel_pl",
    "clip",
]


def _check_unit(name: str, value: float, tol: float = EPS_ADD):
    if not in_unit_interval(value, tol):
        raise OutOfRangeError(
            f"invalid {name}: {value!r} (must be in the [0, 1] interval)"
        )


@dataclasses.dataclass(frozen=True, order=True)
class Opinion:
    """Opinion about a binary frame ``{x, not x}``.

    Belief, disbelief and uncertainty masses sum to one, the base rate
    is the prior probability of ``x`` in absence of evidence.
    Instances are validated at construction and never renormalized.
    """

    b: float
    d: float
    u: float
    a: float
    # opinion this one is the negation of
    _negation_of: Optional["Opinion"] = dataclasses.field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        for name in ("b", "d", "u", "a"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            _check_unit(name, value)
        total = self.b + self.d + self.u
        if abs(total - 1) > EPS_ADD:
            raise AdditivityError(
                f"b + d + u = {total!r} (must be 1 within {EPS_ADD})"
            )

    def astuple(self) -> tuple[float, float, float, float]:
        """Return the (b, d, u, a) tuple."""
        return (self.b, self.d, self.u, self.a)


class ProbabilityExpectation(float):
    """Probability expectation value of an opinion, in [0, 1]."""

    def __new__(cls, value: float):
        _check_unit("expectation", value)
        return super().__new__(cls, unit_clamp(value))


@dataclasses.dataclass(frozen=True)
class BasicProbabilityVector:
    """Expectation-forward parametrization ``(e, u, a)`` of an opinion."""

    e: float
    u: float
    a: float

    def __post_init__(self):
        for name in ("e", "u", "a"):
            _check_unit(name, getattr(self, name))
        b = self.e - self.a * self.u
        d = 1 - self.e - self.u * (1 - self.a)
        if b < -EPS_ADD or d < -EPS_ADD:
            raise InvalidVectorError(
                f"{self!r} does not correspond to a valid opinion "
                f"(derived b={b!r}, d={d!r})"
            )


class BelPl(NamedTuple):
    """Belief and plausibility of an opinion."""

    bel: float
    pl: float


def make_opinion(b: float, d: float, u: float, a: float) -> Opinion:
    """Build a validated opinion.

    :raises OutOfRangeError: if a component is outside [0, 1]
    :raises AdditivityError: if ``b + d + u`` differs from 1
    """
    return Opinion(b, d, u, a)


def vacuous(a: float) -> Opinion:
    """Return the opinion expressing total ignorance with base rate *a*."""
    return Opinion(0.0, 0.0, 1.0, a)


def expectation(w: Opinion) -> ProbabilityExpectation:
    """Return the probability expectation ``b + a * u``."""
    return ProbabilityExpectation(w.b + w.a * w.u)


def negate(w: Opinion) -> Opinion:
    """Return the opinion about the complement.

    Negating twice returns the original opinion, base rate included,
    although ``1 - (1 - a)`` may differ from ``a`` in floating point.

    >>> negate(Opinion(0.7, 0.1, 0.2, 0.5))
    Opinion(b=0.1, d=0.7, u=0.2, a=0.5)
    """
    if w._negation_of is not None:
        return w._negation_of
    result = Opinion(w.d, w.b, w.u, 1 - w.a)
    object.__setattr__(result, "_negation_of", w)
    return result


def to_pv(w: Opinion) -> BasicProbabilityVector:
    """Convert an opinion into a basic probability vector."""
    return BasicProbabilityVector(float(expectation(w)), w.u, w.a)


def from_pv(
    p: Union[BasicProbabilityVector, tuple[float, float, float]],
) -> Opinion:
    """Convert a basic probability vector into an opinion.

    :raises InvalidVectorError: if the vector maps outside the opinion
        triangle
    """
    if not isinstance(p, BasicProbabilityVector):
        p = BasicProbabilityVector(*p)
    b = max(p.e - p.a * p.u, 0.0)
    d = max(1 - p.e - p.u * (1 - p.a), 0.0)
    return Opinion(b, d, p.u, p.a)


def bel_pl(w: Opinion) -> BelPl:
    """Return belief and plausibility (``b + u``) of an opinion."""
    return BelPl(w.b, w.b + w.u)


def clip(e: float, a: float, u_raw: float) -> Opinion:
    """Project onto the opinion triangle keeping expectation and base rate.

    The result lies on the constant-expectation line for *e* at base
    rate *a*; its uncertainty is the legal value closest to *u_raw*.
    """
    _check_unit("expectation", e)
    _check_unit("base rate", a)
    e = unit_clamp(e)
    a = unit_clamp(a)
    u_max = min(ratio(e, a), ratio(1 - e, 1 - a), 1.0)
    u = median3(0.0, u_raw, u_max)
    b = max(e - a * u, 0.0)
    d = max(1 - b - u, 0.0)
    return Opinion(b, d, u, a)
