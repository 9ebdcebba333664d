"""Independent verification machinery and fuzz generators.

The oracles recompute at the probability level what the belief
operators compute at the opinion level: the expectation of the result
of a belief expression must match the value of the same expression
evaluated on the expectations of its leaves.
"""

import math
import logging
import itertools
import dataclasses
from typing import Union, Optional, NamedTuple
from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .enums import EOperator
from .utils import json_number
from .beta import (
    AugmentedBeta,
    to_shape,
    sample,
    opinion_to_beta,
    beta_expectation,
)
from .expr import (
    Let,
    Var,
    Call,
    Node,
    PvLit,
    Unary,
    Binary,
    BetaLit,
    OpinionLit,
    parse,
    evaluate,
)
from .expr import format as format_expr
from .errors import EmptyTargetError, ScalarDomainError, PreconditionError
from .frames import Bba, Subset, LABEL_SEP, FrameOfDiscernment, make_bba
from .opinion import Opinion, expectation
from .operators import NO_LIMITS, LimitParams, multiply, comultiply

__all__ = [
    "HomomorphismReport",
    "MonteCarloReport",
    "FrameReadout",
    "scalar_eval",
    "check_homomorphism",
    "mc_check_beta",
    "brute_force_frame",
    "random_opinion",
    "random_bba",
    "random_disjoint_pair",
    "random_expression",
    "non_distributivity_gap",
]

logger = logging.getLogger(__name__)

#: tolerance for single operators
TOL_SINGLE = 1e-9

#: tolerance for composite expressions
TOL_COMPOSITE = 1e-6

#: pass band of the Monte-Carlo check (in standard errors)
MC_SIGMAS = 4

#: largest frame handled by the brute force enumeration
MAX_BRUTE_FORCE_ATOMS = 16

RngType = Union[np.random.Generator, int, None]
ExprType = Union[str, Node]


# --- scalar evaluation -------------------------------------------------------
def _quotient(num: float, den: float, what: str) -> float:
    if den == 0:
        raise ScalarDomainError(f"{what}: division by zero")
    return num / den


def _scalar_binary(op: EOperator, p: float, q: float) -> float:
    if op is EOperator.ADD:
        return p + q
    elif op is EOperator.SUB:
        return p - q
    elif op is EOperator.MULT:
        return p * q
    elif op is EOperator.DIV:
        return _quotient(p, q, "division")
    elif op is EOperator.COMULT:
        return p + q - p * q
    elif op is EOperator.CODIV:
        return _quotient(p - q, 1 - q, "codivision")
    raise ValueError(f"invalid binary operator: {op!r}")


def _total_probability(p: float, p_pos: float, p_neg: float) -> float:
    return p * p_pos + (1 - p) * p_neg


def _scalar(node: Node, env: Mapping[str, float]) -> float:
    if isinstance(node, OpinionLit):
        return node.b + node.a * node.u
    elif isinstance(node, BetaLit):
        return beta_expectation(AugmentedBeta(node.r, node.s, node.a))
    elif isinstance(node, PvLit):
        return node.e
    elif isinstance(node, Var):
        return env[node.name]
    elif isinstance(node, Unary):
        return 1 - _scalar(node.operand, env)
    elif isinstance(node, Binary):
        p = _scalar(node.lhs, env)
        q = _scalar(node.rhs, env)
        return _scalar_binary(node.op, p, q)
    elif isinstance(node, Call):
        p, p1, p2 = (_scalar(arg, env) for arg in node.args)
        if node.name == "deduce":
            return _total_probability(p, p1, p2)
        # Bayes' theorem, then total probability
        a_y = node.scalar
        pos = _quotient(
            a_y * p1, a_y * p1 + (1 - a_y) * p2, "reverse conditional"
        )
        neg = _quotient(
            a_y * (1 - p1),
            a_y * (1 - p1) + (1 - a_y) * (1 - p2),
            "reverse conditional",
        )
        return _total_probability(p, pos, neg)
    elif isinstance(node, Let):
        value = _scalar(node.value, env)
        return _scalar(node.body, {**env, node.name: value})
    raise TypeError(f"unexpected expression node: {node!r}")


def scalar_eval(
    expr: ExprType, env: Optional[Mapping[str, Opinion]] = None
) -> float:
    """Evaluate *expr* with probability operators on leaf expectations.

    :raises ScalarDomainError: on divisions by zero
    """
    if isinstance(expr, str):
        expr = parse(expr)
    penv = {name: float(expectation(w)) for name, w in (env or {}).items()}
    return _scalar(expr, penv)


@dataclasses.dataclass(frozen=True)
class HomomorphismReport:
    """Belief-level versus probability-level evaluation."""

    expression: str
    belief_expectation: float
    probability_value: float
    difference: float
    tolerance: float
    passed: bool

    def asdict(self) -> dict:
        """Return a JSON-ready mapping."""
        data = dataclasses.asdict(self)
        for key in (
            "belief_expectation",
            "probability_value",
            "difference",
            "tolerance",
        ):
            data[key] = json_number(data[key])
        return data


def check_homomorphism(
    expr: ExprType,
    env: Optional[Mapping[str, Opinion]] = None,
    lp: LimitParams = NO_LIMITS,
    tol: float = TOL_SINGLE,
    *,
    result: Optional[Opinion] = None,
) -> HomomorphismReport:
    """Compare ``E(evaluate(expr))`` with ``scalar_eval(expr)``.

    A mismatch is reported, not raised; evaluation errors propagate.
    *result* is the already evaluated belief-level value of *expr*, if
    available: the expression is then not evaluated again.
    """
    if isinstance(expr, str):
        expr = parse(expr)
    if result is None:
        result = evaluate(expr, env, lp)
    belief_side = float(expectation(result))
    probability_side = scalar_eval(expr, env)
    difference = abs(belief_side - probability_side)
    return HomomorphismReport(
        expression=format_expr(expr),
        belief_expectation=belief_side,
        probability_value=probability_side,
        difference=difference,
        tolerance=tol,
        passed=difference <= tol,
    )


# --- Monte-Carlo -------------------------------------------------------------
@dataclasses.dataclass(frozen=True)
class MonteCarloReport:
    """Sample mean of the Beta PDF of an opinion versus its expectation."""

    n: int
    streams: int
    expectation: float
    mean: float
    stderr: float
    passed: bool

    def asdict(self) -> dict:
        """Return a JSON-ready mapping."""
        data = dataclasses.asdict(self)
        for key in ("expectation", "mean", "stderr"):
            data[key] = json_number(data[key])
        return data


def _stream_sizes(n: int, streams: int) -> list[int]:
    size, extra = divmod(n, streams)
    return [size + (idx < extra) for idx in range(streams)]


def mc_check_beta(
    w: Opinion,
    n: int,
    seed: Optional[int] = None,
    *,
    streams: int = 1,
    workers: Optional[int] = None,
) -> MonteCarloReport:
    """Check the mean of the Beta PDF of *w* against ``E(w)``.

    The *n* draws are split over *streams* independent generators
    spawned from *seed*; streams may be run on *workers* threads.
    The result depends on ``(seed, streams)`` only.

    :raises DogmaticOpinionError: if *w* has no Beta PDF
    """
    if n < 1:
        raise PreconditionError(
            f"invalid number of draws: {n!r} (must be positive)", ["n >= 1"]
        )
    if streams < 1:
        raise PreconditionError(
            f"invalid number of streams: {streams!r} (must be positive)",
            ["streams >= 1"],
        )
    shape = to_shape(opinion_to_beta(w))
    children = np.random.SeedSequence(seed).spawn(streams)
    sizes = _stream_sizes(n, streams)
    logger.debug("monte carlo: %d draws over streams %r", n, sizes)

    def draw(job) -> float:
        child, size = job
        rng = np.random.default_rng(child)
        return float(np.sum(sample(shape, rng, size)))

    jobs = list(zip(children, sizes))
    if workers is None or workers <= 1:
        sums = [draw(job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            sums = list(executor.map(draw, jobs))

    mean = math.fsum(sums) / n
    stderr = math.sqrt(shape.variance / n)
    e = float(expectation(w))
    return MonteCarloReport(
        n=n,
        streams=streams,
        expectation=e,
        mean=mean,
        stderr=stderr,
        passed=abs(mean - e) <= MC_SIGMAS * stderr,
    )


# --- frames ------------------------------------------------------------------
class FrameReadout(NamedTuple):
    """Binary readout of a bba onto a subset."""

    b: float
    d: float
    u: float
    a: float
    e: float


def brute_force_frame(bba: Bba, x) -> FrameReadout:
    """Compute the opinion functions of *x* by power set enumeration.

    *x* is a subset of the bba frame or an iterable of atom labels.
    """
    frame = bba.frame
    if len(frame) > MAX_BRUTE_FORCE_ATOMS:
        raise PreconditionError(
            f"frame too large for enumeration: {len(frame)} atoms",
            [f"|theta| <= {MAX_BRUTE_FORCE_ATOMS}"],
        )
    if not isinstance(x, Subset):
        x = frame.subset(x)
    x = frozenset(frame.labels(x))
    if not x:
        raise EmptyTargetError("the target subset is empty")
    masses = {
        frozenset(frame.labels(subset)): mass
        for subset, mass in bba.masses.items()
    }

    b = d = u = e = 0.0
    for size in range(1, len(frame) + 1):
        for atoms in itertools.combinations(frame.atoms, size):
            y = frozenset(atoms)
            m = masses.get(y, 0.0)
            if not m:
                continue
            common = len(x & y)
            if y <= x:
                b += m
            elif common == 0:
                d += m
            else:
                u += m
            e += m * common / len(y)
    return FrameReadout(b, d, u, len(x) / len(frame.atoms), e)


# --- fuzz generators ---------------------------------------------------------
def random_opinion(
    rng: RngType = None, a: Optional[float] = None
) -> Opinion:
    """Draw an opinion uniformly on the triangle.

    The base rate is uniform on [0.05, 0.95] unless given.
    """
    rng = np.random.default_rng(rng)
    v1, v2 = rng.random(2)
    u = 1 - math.sqrt(v1)
    b = v2 * (1 - u)
    d = (1 - v2) * (1 - u)
    if a is None:
        a = rng.uniform(0.05, 0.95)
    return Opinion(b, d, u, float(a))


def random_bba(
    rng: RngType = None, n_atoms: int = 3, n_focal: Optional[int] = None
) -> Bba:
    """Draw a bba with random focal sets and Dirichlet distributed masses."""
    rng = np.random.default_rng(rng)
    frame = FrameOfDiscernment(
        tuple(f"t{idx + 1}" for idx in range(n_atoms))
    )
    n_subsets = 2**n_atoms - 1
    if n_focal is None:
        n_focal = int(rng.integers(1, min(n_subsets, 8) + 1))
    masks = rng.choice(n_subsets, size=n_focal, replace=False) + 1
    masses = rng.dirichlet(np.ones(n_focal))
    data = {}
    for mask, mass in zip(masks, masses):
        labels = [
            atom
            for idx, atom in enumerate(frame.atoms)
            if int(mask) >> idx & 1
        ]
        data[LABEL_SEP.join(labels)] = float(mass)
    return make_bba(frame, data)


def random_disjoint_pair(
    rng: RngType = None, max_tries: int = 10_000
) -> tuple[Opinion, Opinion]:
    """Draw opinions about two disjoint subsets of a common frame.

    The pair is a valid input of the union whose result can be reduced
    back by the difference.
    """
    rng = np.random.default_rng(rng)
    for _ in range(max_tries):
        a_x, a_y = rng.uniform(0.05, 0.45, 2)
        wx = random_opinion(rng, a_x)
        wy = random_opinion(rng, a_y)
        if (
            wy.b <= wx.d
            and wx.b <= wy.d
            and wx.d <= wy.b + wy.d
            and wx.b + wy.b <= 1
            and expectation(wx) + expectation(wy) <= 1
        ):
            return wx, wy
    raise RuntimeError(f"no disjoint pair found in {max_tries} tries")


_FUZZ_OPERATORS = (
    EOperator.ADD,
    EOperator.SUB,
    EOperator.MULT,
    EOperator.DIV,
    EOperator.COMULT,
    EOperator.CODIV,
    EOperator.NOT,
)


def random_expression(rng: RngType = None, depth: int = 3) -> Node:
    """Draw an expression tree with opinion literal leaves.

    Domain errors are likely on evaluation; callers skip those cases.
    """
    rng = np.random.default_rng(rng)
    if depth <= 0:
        return OpinionLit(*random_opinion(rng).astuple())
    op = _FUZZ_OPERATORS[int(rng.integers(len(_FUZZ_OPERATORS)))]
    if op is EOperator.NOT:
        return Unary(op, random_expression(rng, depth - 1))
    return Binary(
        op,
        random_expression(rng, depth - 1),
        random_expression(rng, depth - 1),
    )


def non_distributivity_gap(x: Opinion, y: Opinion, z: Opinion) -> float:
    """Largest component difference of ``x*(y|z)`` and ``(x*y)|(x*z)``."""
    lhs = multiply(x, comultiply(y, z))
    rhs = comultiply(multiply(x, y), multiply(x, z))
    return max(abs(p - q) for p, q in zip(lhs.astuple(), rhs.astuple()))
