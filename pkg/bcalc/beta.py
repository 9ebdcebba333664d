"""Augmented Beta PDFs and their bijection with opinions."""

import dataclasses
from typing import NamedTuple, Optional, Union

import numpy as np
from scipy import special

from .utils import PRIOR_WEIGHT, EPS_DOGMATIC, in_unit_interval
from .errors import (
    OutOfRangeError,
    PreconditionError,
    DogmaticOpinionError,
    SingularEndpointError,
    ZeroShapeParameterError,
)
from .opinion import Opinion

__all__ = [
    "AugmentedBeta",
    "BetaShape",
    "GridPoint",
    "to_shape",
    "beta_expectation",
    "opinion_to_beta",
    "beta_to_opinion",
    "pdf_eval",
    "pdf_grid",
    "sample",
]

RngType = Union[np.random.Generator, int, None]


@dataclasses.dataclass(frozen=True)
class AugmentedBeta:
    """Beta PDF parametrized by evidence counts and prior base rate."""

    r: float
    s: float
    a: float

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise OutOfRangeError(
                f"invalid evidence ({self.r!r}, {self.s!r}) "
                f"(must be non-negative)"
            )
        if not in_unit_interval(self.a):
            raise OutOfRangeError(
                f"invalid base rate: {self.a!r} (must be in [0, 1])"
            )


@dataclasses.dataclass(frozen=True)
class BetaShape:
    """Standard ``beta(alpha, beta)`` shape parameters."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise ZeroShapeParameterError(
                f"invalid shape ({self.alpha!r}, {self.beta!r}) "
                f"(parameters must be strictly positive)"
            )

    @property
    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    @property
    def variance(self) -> float:
        total = self.alpha + self.beta
        return self.alpha * self.beta / (total * total * (total + 1))


class GridPoint(NamedTuple):
    """Density sample; *singular* marks a replaced endpoint value."""

    p: float
    density: float
    singular: bool = False


def to_shape(ab: AugmentedBeta) -> BetaShape:
    """Return the standard shape parameters of an augmented Beta PDF."""
    return BetaShape(
        ab.r + PRIOR_WEIGHT * ab.a, ab.s + PRIOR_WEIGHT * (1 - ab.a)
    )


def beta_expectation(ab: AugmentedBeta) -> float:
    """Probability expectation ``(r + 2a) / (r + s + 2)``."""
    return (ab.r + PRIOR_WEIGHT * ab.a) / (ab.r + ab.s + PRIOR_WEIGHT)


def opinion_to_beta(w: Opinion) -> AugmentedBeta:
    """Map a non-dogmatic opinion onto the equivalent augmented Beta PDF.

    :raises DogmaticOpinionError: if the uncertainty is (close to) zero
    """
    if w.u <= EPS_DOGMATIC:
        raise DogmaticOpinionError(
            f"no Beta PDF corresponds to the dogmatic opinion {w.astuple()}"
        )
    return AugmentedBeta(
        PRIOR_WEIGHT * w.b / w.u, PRIOR_WEIGHT * w.d / w.u, w.a
    )


def beta_to_opinion(ab: AugmentedBeta) -> Opinion:
    """Map an augmented Beta PDF onto the equivalent opinion."""
    k = ab.r + ab.s + PRIOR_WEIGHT
    return Opinion(ab.r / k, ab.s / k, PRIOR_WEIGHT / k, ab.a)


def _log_pdf(shape: BetaShape, p):
    log_norm = (
        special.gammaln(shape.alpha + shape.beta)
        - special.gammaln(shape.alpha)
        - special.gammaln(shape.beta)
    )
    return (
        log_norm
        + special.xlogy(shape.alpha - 1, p)
        + special.xlog1py(shape.beta - 1, -p)
    )


def _singular(shape: BetaShape, p):
    p = np.asarray(p)
    return ((p == 0) & (shape.alpha < 1)) | ((p == 1) & (shape.beta < 1))


def pdf_eval(shape: BetaShape, p: float) -> float:
    """Evaluate the Beta density at *p* (computed in log space).

    :raises SingularEndpointError: for ``p = 0`` with ``alpha < 1`` or
        ``p = 1`` with ``beta < 1``
    """
    if not in_unit_interval(p):
        raise OutOfRangeError(f"invalid probability: {p!r}")
    if _singular(shape, p):
        raise SingularEndpointError(
            f"beta({shape.alpha!r}, {shape.beta!r}) diverges at p={p!r}"
        )
    return float(np.exp(_log_pdf(shape, p)))


def pdf_grid(shape: BetaShape, n: int) -> list[GridPoint]:
    """Evaluate the density on *n* evenly spaced points of [0, 1].

    Values at singular endpoints are replaced by the value at the
    nearest regular grid point and flagged.
    """
    if n < 2:
        raise PreconditionError(
            f"invalid number of grid points: {n!r} (must be at least 2)",
            ["n >= 2"],
        )
    p = np.linspace(0.0, 1.0, n)
    singular = _singular(shape, p)
    with np.errstate(divide="ignore"):
        density = np.exp(_log_pdf(shape, np.where(singular, 0.5, p)))
    if singular[0]:
        density[0] = density[1] if not singular[1] else density[0]
    if singular[-1]:
        density[-1] = density[-2] if not singular[-2] else density[-1]
    return [
        GridPoint(float(p_), float(d_), bool(s_))
        for p_, d_, s_ in zip(p, density, singular)
    ]


def sample(
    shape: BetaShape, rng: RngType = None, size: Optional[int] = None
):
    """Draw from ``beta(alpha, beta)`` as ``g1 / (g1 + g2)``.

    *g1* and *g2* are gamma variates; *rng* is a
    :class:`numpy.random.Generator` or a seed.  A float is returned if
    *size* is None, an array otherwise.
    """
    rng = np.random.default_rng(rng)
    g1 = rng.standard_gamma(shape.alpha, size)
    g2 = rng.standard_gamma(shape.beta, size)
    draws = g1 / (g1 + g2)
    return float(draws) if size is None else draws
