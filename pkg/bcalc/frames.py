"""Frames of discernment, basic belief assignments and coarsening.

Subsets of a frame are encoded as :class:`bitarray.frozenbitarray`
masks over the atom indices.
"""

import types
import logging
import dataclasses
from typing import Union
from collections.abc import Mapping, Iterable, Iterator

from bitarray import frozenbitarray

from .enums import EBbaClass, ECoarsening
from .utils import EPS_ADD, MAX_ATOMS, in_unit_interval
from .errors import (
    FrameError,
    OutOfRangeError,
    AdditivityError,
    EmptyTargetError,
    PreconditionError,
    ForeignSubsetError,
)
from .opinion import Opinion, clip

__all__ = [
    "Subset",
    "FrameOfDiscernment",
    "Bba",
    "make_bba",
    "belief",
    "disbelief",
    "uncertainty",
    "base_rate",
    "prob_expectation",
    "classify",
    "smooth_coarsen",
    "stable_coarsen",
    "coarsen",
]

logger = logging.getLogger(__name__)

Subset = frozenbitarray

THETA_KEY = "*"
LABEL_SEP = ","


def _indices(subset: Subset) -> tuple[int, ...]:
    return tuple(idx for idx, bit in enumerate(subset) if bit)


def _subset_key(subset: Subset):
    return (subset.count(), _indices(subset))


@dataclasses.dataclass(frozen=True)
class FrameOfDiscernment:
    """Exhaustive set of mutually exclusive atomic states."""

    atoms: tuple[str, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if len(atoms) < 2:
            raise FrameError(
                f"invalid frame size: {len(atoms)} (at least 2 atoms needed)"
            )
        if len(atoms) > MAX_ATOMS:
            raise FrameError(
                f"invalid frame size: {len(atoms)} "
                f"(at most {MAX_ATOMS} atoms are supported)"
            )
        if len(set(atoms)) != len(atoms):
            raise FrameError(f"duplicate atom labels in {atoms!r}")
        for label in atoms:
            if not label or LABEL_SEP in label or label == THETA_KEY:
                raise FrameError(f"invalid atom label: {label!r}")

    def __len__(self):
        return len(self.atoms)

    @property
    def theta(self) -> Subset:
        """The whole frame."""
        return frozenbitarray([True] * len(self))

    @property
    def empty(self) -> Subset:
        """The empty subset."""
        return frozenbitarray([False] * len(self))

    def subset(self, labels: Union[str, Iterable[str]]) -> Subset:
        """Return the subset containing the specified atoms.

        A string is interpreted as comma separated labels, ``"*"``
        denotes the whole frame.
        """
        if isinstance(labels, str):
            if labels.strip() == THETA_KEY:
                return self.theta
            labels = [item.strip() for item in labels.split(LABEL_SEP)]
        labels = set(labels)
        unknown = labels.difference(self.atoms)
        if unknown:
            raise ForeignSubsetError(
                f"unknown atoms {sorted(unknown)!r} for frame {self.atoms!r}"
            )
        return frozenbitarray([atom in labels for atom in self.atoms])

    def labels(self, subset: Subset) -> tuple[str, ...]:
        """Return the labels of the atoms in *subset*."""
        self.check(subset)
        return tuple(self.atoms[idx] for idx in _indices(subset))

    def format_subset(self, subset: Subset) -> str:
        """Return the textual key of *subset* (as in frame files)."""
        if subset == self.theta:
            return THETA_KEY
        return LABEL_SEP.join(self.labels(subset))

    def complement(self, subset: Subset) -> Subset:
        """Return the complement of *subset* in the frame."""
        self.check(subset)
        return frozenbitarray(~subset)

    def check(self, subset: Subset):
        """Raise :exc:`ForeignSubsetError` if *subset* is not in the frame."""
        if not isinstance(subset, frozenbitarray) or len(subset) != len(
            self
        ):
            raise ForeignSubsetError(
                f"{subset!r} is not a subset of the frame {self.atoms!r}"
            )

    def subsets(self) -> Iterator[Subset]:
        """Iterate over the non-empty subsets of the frame."""
        n = len(self)
        for mask in range(1, 2**n):
            yield frozenbitarray([bool(mask >> idx & 1) for idx in range(n)])


@dataclasses.dataclass(frozen=True)
class Bba:
    """Basic belief assignment over a frame of discernment.

    Masses are stored in a read-only mapping sorted by cardinality and
    atom indices.
    """

    frame: FrameOfDiscernment
    masses: Mapping[Subset, float]

    def __post_init__(self):
        for subset, mass in self.masses.items():
            self.frame.check(subset)
            if not subset.any():
                raise EmptyTargetError("the empty set cannot carry mass")
            if not in_unit_interval(mass, EPS_ADD):
                raise OutOfRangeError(
                    f"invalid mass for {self.frame.format_subset(subset)!r}: "
                    f"{mass!r} (must be in the [0, 1] interval)"
                )
        total = sum(self.masses.values())
        if abs(total - 1) > EPS_ADD:
            raise AdditivityError(
                f"masses sum to {total!r} (must be 1 within {EPS_ADD})"
            )
        items = sorted(self.masses.items(), key=lambda kv: _subset_key(kv[0]))
        masses = types.MappingProxyType({k: float(v) for k, v in items})
        object.__setattr__(self, "masses", masses)

    def mass(self, subset: Subset) -> float:
        """Return the mass assigned to *subset* (0 if absent)."""
        return self.masses.get(subset, 0.0)

    def focal_elements(self) -> tuple[Subset, ...]:
        """Return the subsets with strictly positive mass."""
        return tuple(k for k, v in self.masses.items() if v > 0)


def make_bba(
    frame: FrameOfDiscernment,
    masses: Mapping[Union[str, Iterable[str], Subset], float],
) -> Bba:
    """Build a :class:`Bba` from masses keyed by labels or subsets."""
    data = {}
    for key, mass in masses.items():
        subset = key if isinstance(key, frozenbitarray) else frame.subset(key)
        if subset in data:
            raise FrameError(f"duplicate mass for {key!r}")
        data[subset] = mass
    return Bba(frame, data)


def _check_target(bba: Bba, x: Subset):
    bba.frame.check(x)
    if not x.any():
        raise EmptyTargetError("the target subset is empty")


def belief(bba: Bba, x: Subset) -> float:
    """Sum of the masses of the non-empty subsets of *x*."""
    _check_target(bba, x)
    return sum(m for y, m in bba.masses.items() if not (y & ~x).any())


def disbelief(bba: Bba, x: Subset) -> float:
    """Sum of the masses of the subsets disjoint from *x*."""
    _check_target(bba, x)
    return sum(m for y, m in bba.masses.items() if not (y & x).any())


def uncertainty(bba: Bba, x: Subset) -> float:
    """Sum of the masses of subsets overlapping, but not contained in, *x*."""
    _check_target(bba, x)
    return sum(
        m
        for y, m in bba.masses.items()
        if (y & x).any() and (y & ~x).any()
    )


def base_rate(frame: FrameOfDiscernment, x: Subset) -> float:
    """Relative cardinality of *x*."""
    frame.check(x)
    return x.count() / len(frame)


def prob_expectation(bba: Bba, x: Subset) -> float:
    """Pignistic probability expectation of *x*."""
    bba.frame.check(x)
    return sum(m * (y & x).count() / y.count() for y, m in bba.masses.items())


def classify(bba: Bba) -> EBbaClass:
    """Return the structural classes the bba belongs to."""
    theta = bba.frame.theta
    focal = bba.focal_elements()
    proper = [y for y in focal if y != theta]

    flags = EBbaClass(0)
    if not proper:
        flags |= EBbaClass.VACUOUS
    if all(y.count() == 1 for y in focal):
        flags |= EBbaClass.BAYESIAN
    if theta not in focal:
        flags |= EBbaClass.DOGMATIC
    if all(y.count() == 1 for y in proper):
        flags |= EBbaClass.DIRICHLET

    disjoint = all(
        not (y & z).any()
        for idx, y in enumerate(proper)
        for z in proper[idx + 1 :]
    )
    if disjoint:
        flags |= EBbaClass.CLUSTER_DIRICHLET
    else:
        flags |= EBbaClass.GENERAL
    return flags


def _check_proper(bba: Bba, x: Subset):
    _check_target(bba, x)
    if x.all():
        raise PreconditionError(
            "cannot coarsen onto the whole frame", ["x != theta"]
        )


def smooth_coarsen(bba: Bba, x: Subset) -> Opinion:
    """Coarsen *bba* into an opinion about *x* preserving its expectation.

    The belief functions of *x* are moved along the constant-expectation
    line until the opinion expectation matches the pignistic one.
    """
    _check_proper(bba, x)
    b = belief(bba, x)
    d = disbelief(bba, x)
    u = uncertainty(bba, x)
    a = base_rate(bba.frame, x)
    e = prob_expectation(bba, x)

    k = b + a * u
    if e <= k:
        logger.debug("smooth coarsening: E=%r <= b+au=%r", e, k)
        if k == 0:
            return Opinion(0.0, 1.0, 0.0, a)
        u_x = e * u / k
    else:
        k = 1 - k
        logger.debug("smooth coarsening: E=%r > b+au=%r", e, 1 - k)
        if k == 0:
            return Opinion(1.0, 0.0, 0.0, a)
        u_x = (1 - e) * u / k
    return clip(e, a, u_x)


def stable_coarsen(bba: Bba, x: Subset) -> Opinion:
    """Coarsen a (cluster) Dirichlet bba onto one of its focal elements.

    :raises PreconditionError: if the bba is not cluster Dirichlet or
        *x* is not a focal element
    """
    _check_proper(bba, x)
    failed = []
    if EBbaClass.CLUSTER_DIRICHLET not in classify(bba):
        failed.append("bba is (cluster) Dirichlet")
    if bba.mass(x) <= 0:
        failed.append("x is a focal element")
    if failed:
        raise PreconditionError(
            "stable coarsening not applicable: " + ", ".join(failed), failed
        )
    return Opinion(
        belief(bba, x),
        disbelief(bba, x),
        uncertainty(bba, x),
        base_rate(bba.frame, x),
    )


def coarsen(
    bba: Bba, x: Subset, method: ECoarsening = ECoarsening.SMOOTH
) -> Opinion:
    """Coarsen *bba* onto *x* with the specified method."""
    method = ECoarsening(method)
    if method is ECoarsening.STABLE:
        return stable_coarsen(bba, x)
    return smooth_coarsen(bba, x)
