"""Binary operators of the opinion algebra.

All the operators act on :class:`bcalc.opinion.Opinion` values and
are homomorphic to the corresponding probability operators with
respect to the probability expectation.
"""

import math
import logging
import warnings
import dataclasses
from typing import NamedTuple, Optional

from .utils import EPS_PRE, EPS_ADD, unit_clamp, in_unit_interval
from .errors import (
    OutOfRangeError,
    ClippingWarning,
    PreconditionError,
    NotDivisibleError,
    InternalRangeError,
    EqualBaseRatesError,
    NotCodivisibleError,
    DivisionByFalseError,
    BaseRateOverflowError,
    CodivisionByTrueError,
    MissingLimitParamError,
    DegenerateBaseRateError,
)
from .frames import Bba, FrameOfDiscernment
from .opinion import Opinion, clip, negate, expectation

__all__ = [
    "LimitParams",
    "ProductBba",
    "Divisibility",
    "TrianglePoint",
    "add",
    "subtract",
    "multiply",
    "comultiply",
    "divide",
    "codivide",
    "cartesian_product_bba",
    "divisibility_check",
    "codivisibility_check",
    "product_range_vertices",
    "product_range_contains",
    "coproduct_range_contains",
    "division_range_vertices",
    "division_range_contains",
    "codivision_range_contains",
]

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class LimitParams:
    """Limit parameters for the degenerate base rate cases.

    :param eta: limit of ``(1 - a_x) / (1 - a_y)``, used by
        multiplication when ``a_x = a_y = 1``
    :param zeta: limit of ``a_x / a_y``, used by comultiplication when
        ``a_x = a_y = 0``
    :param gamma: belief share of division with equal base rates
    :param delta: disbelief share of codivision with equal base rates
    """

    eta: Optional[float] = None
    zeta: Optional[float] = None
    gamma: Optional[float] = None
    delta: Optional[float] = None

    def __post_init__(self):
        for name in ("eta", "zeta"):
            value = getattr(self, name)
            if value is not None and not (0 <= value < math.inf):
                raise OutOfRangeError(
                    f"invalid {name}: {value!r} "
                    f"(must be a non-negative real number)"
                )
        for name in ("gamma", "delta"):
            value = getattr(self, name)
            if value is not None and not in_unit_interval(value):
                raise OutOfRangeError(
                    f"invalid {name}: {value!r} (must be in [0, 1])"
                )


NO_LIMITS = LimitParams()


def _canonical(wx: Opinion, wy: Opinion) -> tuple[Opinion, Opinion]:
    return (wx, wy) if wx <= wy else (wy, wx)


def _finalize(
    name: str,
    b: float,
    d: float,
    u: float,
    a: float,
    e: float,
    *,
    clip_outliers: bool = False,
    failed: tuple[str, ...] = (),
) -> Opinion:
    """Build the operator result, clipping it if necessary.

    Values within the precondition slack are silently projected back
    onto the opinion triangle; values outside of it are either clipped
    with a :class:`ClippingWarning` or rejected.

    A non-empty *failed* lists the preconditions violated by the
    operands: the closed form no longer has expectation *e* then, so the
    result is always clipped onto the constant-expectation line.
    """
    raw = (b, d, u, a)
    legal = all(0.0 <= v <= 1.0 for v in raw)
    if failed:
        warnings.warn(
            f"{name}: operands violate {', '.join(failed)}; "
            f"result {raw!r} clipped onto the opinion triangle",
            ClippingWarning,
            stacklevel=3,
        )
    elif legal and abs(b + d + u - 1) <= EPS_ADD:
        return Opinion(b, d, u, a)
    elif not all(in_unit_interval(v, EPS_PRE) for v in raw):
        if not clip_outliers:
            raise InternalRangeError(
                f"{name}: result components {raw!r} out of range"
            )
        warnings.warn(
            f"{name}: result {raw!r} clipped onto the opinion triangle",
            ClippingWarning,
            stacklevel=3,
        )
    logger.debug("%s: clipping %r (E=%r)", name, raw, e)
    return clip(unit_clamp(e), unit_clamp(a), u)


def add(wx: Opinion, wy: Opinion) -> Opinion:
    """Opinion about the union of two disjoint subsets.

    :raises BaseRateOverflowError: if ``a_x + a_y > 1``
    :raises DegenerateBaseRateError: if both base rates are zero
    :raises PreconditionError: if the two opinions cannot be about
        disjoint subsets (total belief or expectation above 1)
    """
    wx, wy = _canonical(wx, wy)
    a = wx.a + wy.a
    if a > 1 + EPS_PRE:
        raise BaseRateOverflowError(
            f"a_x + a_y = {a!r} (must not exceed 1)", ["a_x + a_y <= 1"]
        )
    if a == 0:
        raise DegenerateBaseRateError(
            "addition undefined for a_x = a_y = 0"
        )
    e = float(expectation(wx)) + float(expectation(wy))
    failed = []
    if wx.b + wy.b > 1 + EPS_PRE:
        failed.append("b_x + b_y <= 1")
    if e > 1 + EPS_PRE:
        failed.append("E(x) + E(y) <= 1")
    if failed:
        raise PreconditionError(
            "addition not applicable: " + ", ".join(failed), failed
        )

    b = wx.b + wy.b
    d = (wx.a * (wx.d - wy.b) + wy.a * (wy.d - wx.b)) / a
    u = (wx.a * wx.u + wy.a * wy.u) / a
    return _finalize("add", b, d, u, a, e, clip_outliers=True)


def subtract(wx: Opinion, wy: Opinion) -> Opinion:
    """Opinion about ``x \\ y`` for ``y`` subset of ``x``.

    :raises EqualBaseRatesError: if ``a_x = a_y``
    :raises PreconditionError: listing the violated inequalities
    """
    if abs(wx.a - wy.a) <= EPS_PRE:
        raise EqualBaseRatesError(
            f"subtraction undefined for equal base rates ({wx.a!r})"
        )
    conditions = [
        ("a_y < a_x", wy.a < wx.a),
        ("b_y <= b_x", wy.b <= wx.b + EPS_PRE),
        ("d_x <= d_y", wx.d <= wy.d + EPS_PRE),
        ("a_y*u_y <= a_x*u_x", wy.a * wy.u <= wx.a * wx.u + EPS_PRE),
        (
            "a_x*(d_x + b_y) >= a_y*(1 + b_y - b_x - u_y)",
            wx.a * (wx.d + wy.b)
            >= wy.a * (1 + wy.b - wx.b - wy.u) - EPS_PRE,
        ),
    ]
    failed = [text for text, ok in conditions if not ok]
    if failed:
        raise PreconditionError(
            "subtraction not applicable: " + ", ".join(failed), failed
        )

    a = wx.a - wy.a
    b = wx.b - wy.b
    d = (
        wx.a * (wx.d + wy.b) - wy.a * (1 + wy.b - wx.b - wy.u)
    ) / a
    u = (wx.a * wx.u - wy.a * wy.u) / a
    e = float(expectation(wx)) - float(expectation(wy))
    return _finalize("subtract", b, d, u, a, e, clip_outliers=True)


def multiply(
    wx: Opinion, wy: Opinion, lp: LimitParams = NO_LIMITS
) -> Opinion:
    """Opinion about the conjunction ``x AND y`` (normal product).

    :raises MissingLimitParamError: if ``a_x = a_y = 1`` and *lp* does
        not provide ``eta``
    """
    e = float(expectation(wx)) * float(expectation(wy))
    if wx.a == 1 and wy.a == 1:
        if lp.eta is None:
            raise MissingLimitParamError(
                "multiplication with a_x = a_y = 1 requires eta"
            )
        eta = lp.eta
        b = wx.b * wy.b + (eta * wx.b * wy.u + wx.u * wy.b) / (eta + 1)
        d = wx.d + wy.d - wx.d * wy.d
        u = wx.u * wy.u + (wx.b * wy.u + eta * wx.u * wy.b) / (eta + 1)
        return _finalize("multiply", b, d, u, 1.0, e)

    wx, wy = _canonical(wx, wy)
    k = 1 - wx.a * wy.a
    b = (
        wx.b * wy.b
        + (
            (1 - wx.a) * wy.a * wx.b * wy.u
            + wx.a * (1 - wy.a) * wx.u * wy.b
        )
        / k
    )
    d = wx.d + wy.d - wx.d * wy.d
    u = (
        wx.u * wy.u
        + ((1 - wy.a) * wx.b * wy.u + (1 - wx.a) * wx.u * wy.b) / k
    )
    return _finalize("multiply", b, d, u, wx.a * wy.a, e)


def comultiply(
    wx: Opinion, wy: Opinion, lp: LimitParams = NO_LIMITS
) -> Opinion:
    """Opinion about the disjunction ``x OR y`` (normal coproduct).

    :raises MissingLimitParamError: if ``a_x = a_y = 0`` and *lp* does
        not provide ``zeta``
    """
    ex = float(expectation(wx))
    ey = float(expectation(wy))
    e = ex + ey - ex * ey
    if wx.a == 0 and wy.a == 0:
        if lp.zeta is None:
            raise MissingLimitParamError(
                "comultiplication with a_x = a_y = 0 requires zeta"
            )
        zeta = lp.zeta
        b = wx.b + wy.b - wx.b * wy.b
        d = wx.d * wy.d + (zeta * wx.d * wy.u + wx.u * wy.d) / (zeta + 1)
        u = wx.u * wy.u + (wx.d * wy.u + zeta * wx.u * wy.d) / (zeta + 1)
        return _finalize("comultiply", b, d, u, 0.0, e)

    wx, wy = _canonical(wx, wy)
    k = wx.a + wy.a - wx.a * wy.a
    b = wx.b + wy.b - wx.b * wy.b
    d = (
        wx.d * wy.d
        + (
            wx.a * (1 - wy.a) * wx.d * wy.u
            + (1 - wx.a) * wy.a * wx.u * wy.d
        )
        / k
    )
    u = wx.u * wy.u + (wy.a * wx.d * wy.u + wx.a * wx.u * wy.d) / k
    return _finalize("comultiply", b, d, u, k, e)


class Divisibility(NamedTuple):
    """Outcome of a (co)divisibility check."""

    ok: bool
    failed: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def divisibility_check(wx: Opinion, wy: Opinion) -> Divisibility:
    """Check whether *wx* can be divided by *wy*.

    The returned :class:`Divisibility` lists the violated conditions.
    """
    failed = []
    if wy.a <= 0:
        failed.append("a_y > 0")
    if wx.a > wy.a + EPS_PRE:
        failed.append("a_x <= a_y")
    if wy.d >= 1:
        failed.append("d_y < 1")
    if wx.d < wy.d - EPS_PRE:
        failed.append("d_x >= d_y")
    if failed:
        return Divisibility(False, tuple(failed))

    r = (1 - wx.d) / (1 - wy.d)
    if abs(wx.a - wy.a) <= EPS_PRE:
        if abs(wx.b - r * wy.b) > EPS_PRE:
            failed.append("b_x = (1-d_x)*b_y/(1-d_y)")
        if abs(wx.u - r * wy.u) > EPS_PRE:
            failed.append("u_x = (1-d_x)*u_y/(1-d_y)")
    else:
        b_min = wx.a * (1 - wy.a) * r * wy.b / ((1 - wx.a) * wy.a)
        if wx.b < b_min - EPS_PRE:
            failed.append(
                "b_x >= a_x*(1-a_y)*(1-d_x)*b_y/((1-a_x)*a_y*(1-d_y))"
            )
        u_min = (1 - wy.a) * r * wy.u / (1 - wx.a)
        if wx.u < u_min - EPS_PRE:
            failed.append("u_x >= (1-a_y)*(1-d_x)*u_y/((1-a_x)*(1-d_y))")
    return Divisibility(not failed, tuple(failed))


def codivisibility_check(wx: Opinion, wy: Opinion) -> Divisibility:
    """Check whether *wx* can be codivided by *wy*."""
    failed = []
    if wy.a >= 1:
        failed.append("a_y < 1")
    if wx.a < wy.a - EPS_PRE:
        failed.append("a_x >= a_y")
    if wy.b >= 1:
        failed.append("b_y < 1")
    if wx.b < wy.b - EPS_PRE:
        failed.append("b_x >= b_y")
    if failed:
        return Divisibility(False, tuple(failed))

    r = (1 - wx.b) / (1 - wy.b)
    if abs(wx.a - wy.a) <= EPS_PRE:
        if abs(wx.d - r * wy.d) > EPS_PRE:
            failed.append("d_x = (1-b_x)*d_y/(1-b_y)")
        if abs(wx.u - r * wy.u) > EPS_PRE:
            failed.append("u_x = (1-b_x)*u_y/(1-b_y)")
    else:
        d_min = (1 - wx.a) * wy.a * r * wy.d / (wx.a * (1 - wy.a))
        if wx.d < d_min - EPS_PRE:
            failed.append(
                "d_x >= (1-a_x)*a_y*(1-b_x)*d_y/(a_x*(1-a_y)*(1-b_y))"
            )
        u_min = wy.a * r * wy.u / wx.a
        if wx.u < u_min - EPS_PRE:
            failed.append("u_x >= a_y*(1-b_x)*u_y/(a_x*(1-b_y))")
    return Divisibility(not failed, tuple(failed))


def divide(
    wx: Opinion,
    wy: Opinion,
    lp: LimitParams = NO_LIMITS,
    *,
    strict: bool = True,
) -> Opinion:
    """Opinion about ``x`` UN-AND ``y``, the inverse of multiplication.

    With *strict* set to False the divisibility conditions are not
    enforced: a non-divisible *wx* yields the opinion with expectation
    ``E(x) / E(y)`` closest to the closed form, with a
    :class:`ClippingWarning`.

    :raises DivisionByFalseError: if ``d_y = 1``
    :raises NotDivisibleError: if *wx* is not divisible by *wy*
    """
    if wy.d >= 1:
        raise DivisionByFalseError("division by an absolutely false opinion")
    check = divisibility_check(wx, wy)
    if not check.ok and (strict or "a_y > 0" in check.failed):
        raise NotDivisibleError(
            "not divisible: " + ", ".join(check.failed), check.failed
        )

    ex = float(expectation(wx))
    ey = float(expectation(wy))
    e = ex / ey
    d = (wx.d - wy.d) / (1 - wy.d)
    r = (1 - wx.d) / (1 - wy.d)
    if abs(wx.a - wy.a) <= EPS_PRE:
        gamma = lp.gamma if lp.gamma is not None else wy.b / ey
        b = gamma * r
        u = (1 - gamma) * r
        a = 1.0
    else:
        k = wy.a - wx.a
        t_e = wy.a * ex / (k * ey)
        b = t_e - wx.a * r / k
        u = wy.a * r / k - t_e
        a = wx.a / wy.a
    return _finalize(
        "divide",
        b,
        d,
        u,
        a,
        e,
        clip_outliers=not strict,
        failed=check.failed,
    )


def codivide(
    wx: Opinion,
    wy: Opinion,
    lp: LimitParams = NO_LIMITS,
    *,
    strict: bool = True,
) -> Opinion:
    """Opinion about ``x`` UN-OR ``y``, the inverse of comultiplication.

    :raises CodivisionByTrueError: if ``b_y = 1``
    :raises NotCodivisibleError: if *wx* is not codivisible by *wy*
    """
    if wy.b >= 1:
        raise CodivisionByTrueError(
            "codivision by an absolutely true opinion"
        )
    check = codivisibility_check(wx, wy)
    if not check.ok and (strict or "a_y < 1" in check.failed):
        raise NotCodivisibleError(
            "not codivisible: " + ", ".join(check.failed), check.failed
        )

    ex = float(expectation(wx))
    ey = float(expectation(wy))
    e = (ex - ey) / (1 - ey)
    b = (wx.b - wy.b) / (1 - wy.b)
    r = (1 - wx.b) / (1 - wy.b)
    if abs(wx.a - wy.a) <= EPS_PRE:
        if lp.delta is not None:
            delta = lp.delta
        else:
            delta = wy.d / (wy.d + (1 - wy.a) * wy.u)
        d = delta * r
        u = (1 - delta) * r
        a = 0.0
    else:
        k = wx.a - wy.a
        t_e = (1 - wy.a) * (1 - ex) / (k * (1 - ey))
        d = t_e - (1 - wx.a) * r / k
        u = (1 - wy.a) * r / k - t_e
        a = k / (1 - wy.a)
    return _finalize(
        "codivide",
        b,
        d,
        u,
        a,
        e,
        clip_outliers=not strict,
        failed=check.failed,
    )


PRODUCT_FRAME = FrameOfDiscernment(("xy", "x~y", "~xy", "~x~y"))


class ProductBba(Bba):
    """Bba over the Cartesian product of two binary frames."""

    @property
    def conjunction(self):
        """Subset ``{(x, y)}``."""
        return self.frame.subset(["xy"])

    @property
    def disjunction(self):
        """Subset ``{(x, y), (x, ~y), (~x, y)}``."""
        return self.frame.subset(["xy", "x~y", "~xy"])


def cartesian_product_bba(wx: Opinion, wy: Opinion) -> ProductBba:
    """Combine two opinions into a bba over the product frame."""
    x = {"b": ["xy", "x~y"], "d": ["~xy", "~x~y"]}
    y = {"b": ["xy", "~xy"], "d": ["x~y", "~x~y"]}
    frame = PRODUCT_FRAME
    masses = {}
    for kx, mx in (("b", wx.b), ("d", wx.d), ("u", wx.u)):
        for ky, my in (("b", wy.b), ("d", wy.d), ("u", wy.u)):
            atoms = set(x.get(kx, frame.atoms)).intersection(
                y.get(ky, frame.atoms)
            )
            masses[frame.subset(atoms)] = mx * my
    return ProductBba(frame, masses)


class TrianglePoint(NamedTuple):
    """Point of the opinion triangle in (b, d, u) coordinates."""

    b: float
    d: float
    u: float


DISBELIEF_VERTEX = TrianglePoint(0.0, 1.0, 0.0)


def _cross(o, p, q) -> float:
    return (p.b - o.b) * (q.u - o.u) - (p.u - o.u) * (q.b - o.b)


def _near_segment(p, s0, s1, tol: float) -> bool:
    db, du = s1.b - s0.b, s1.u - s0.u
    length2 = db * db + du * du
    t = 0.0
    if length2 > 0:
        t = ((p.b - s0.b) * db + (p.u - s0.u) * du) / length2
        t = min(max(t, 0.0), 1.0)
    return math.hypot(p.b - s0.b - t * db, p.u - s0.u - t * du) <= tol


def _in_triangle(p, v1, v2, v3, tol: float = 1e-9) -> bool:
    # barycentric coordinates in the (b, u) plane
    det = _cross(v3, v1, v2)
    if abs(det) < 1e-15:
        return any(
            _near_segment(p, s0, s1, tol)
            for s0, s1 in ((v1, v2), (v2, v3), (v1, v3))
        )
    l1 = _cross(v3, p, v2) / det
    l2 = _cross(v3, v1, p) / det
    return min(l1, l2, 1 - l1 - l2) >= -tol


def _point_on_projector(e: float, a: float, d: float) -> TrianglePoint:
    """Point of the line ``d = const`` with expectation *e* at rate *a*."""
    rest = 1 - d
    u = min(max((rest - e) / (1 - a), 0.0), rest)
    return TrianglePoint(rest - u, d, u)


def product_range_vertices(wx: Opinion, a_y: float):
    """Vertices of the triangle of the possible products ``wx * wy``.

    Point A is the expectation of *wx* on the probability axis and
    point C lies on the same axis at ``a_y`` times the distance of A
    from the disbelief vertex.  The line through C with the direction
    of the projector for the base rate ``a_x * a_y`` (line BC) and its
    parallel through A cut the line ``d = d_x`` in D and E.
    """
    e_x = float(expectation(wx))
    alpha = wx.a * a_y
    if alpha >= 1:
        rest = 1 - wx.d
        return (
            TrianglePoint(0.0, wx.d, rest),
            TrianglePoint(rest, wx.d, 0.0),
            DISBELIEF_VERTEX,
        )
    point_d = _point_on_projector(a_y * e_x, alpha, wx.d)
    point_e = _point_on_projector(e_x, alpha, wx.d)
    return point_d, point_e, DISBELIEF_VERTEX


def product_range_contains(
    wx: Opinion, a_y: float, candidate: Opinion
) -> bool:
    """Return True if *candidate* is a possible product of *wx*.

    The range contains the products of *wx* with any opinion having
    base rate *a_y*.
    """
    p = TrianglePoint(candidate.b, candidate.d, candidate.u)
    return _in_triangle(p, *product_range_vertices(wx, a_y))


def coproduct_range_contains(
    wx: Opinion, a_y: float, candidate: Opinion
) -> bool:
    """Return True if *candidate* is a possible coproduct of *wx*."""
    return product_range_contains(negate(wx), 1 - a_y, negate(candidate))


def _shift_to_disbelief(p: TrianglePoint, a: float, d: float):
    # move p along the projector direction (a, 1 - a, -1) up to d
    s = (d - p.d) / (1 - a)
    return TrianglePoint(p.b + s * a, d, p.u - s)


def division_range_vertices(wy: Opinion, a_x: float):
    """Vertices of the triangle of the dividends of *wy* with rate *a_x*.

    A and B are the intersections of the projector of *wy* with the
    probability axis and with the zero belief line; the lines through
    them parallel to the projector for *a_x* cut ``d = d_y`` in D and E.
    Requires ``a_x < a_y``.
    """
    e_y = float(expectation(wy))
    point_a = TrianglePoint(e_y, 1 - e_y, 0.0)
    point_b = TrianglePoint(
        0.0, wy.d - (1 - wy.a) * wy.b / wy.a, wy.u + wy.b / wy.a
    )
    point_d = _shift_to_disbelief(point_b, a_x, wy.d)
    point_e = _shift_to_disbelief(point_a, a_x, wy.d)
    return point_d, point_e, DISBELIEF_VERTEX


def division_range_contains(
    wy: Opinion, a_x: float, candidate: Opinion
) -> bool:
    """Return True if *candidate* (with base rate *a_x*) is divisible by *wy*.

    The check is geometric and independent from
    :func:`divisibility_check`.
    """
    p = TrianglePoint(candidate.b, candidate.d, candidate.u)
    if wy.d >= 1:
        return False
    if abs(a_x - wy.a) <= EPS_PRE:
        # the triangle collapses onto the segment joining wy and the vertex
        point_y = TrianglePoint(wy.b, wy.d, wy.u)
        return _near_segment(p, point_y, DISBELIEF_VERTEX, 1e-9)
    if a_x > wy.a:
        return False
    return _in_triangle(p, *division_range_vertices(wy, a_x))


def codivision_range_contains(
    wy: Opinion, a_x: float, candidate: Opinion
) -> bool:
    """Return True if *candidate* (with base rate *a_x*) is codivisible."""
    return division_range_contains(negate(wy), 1 - a_x, negate(candidate))
