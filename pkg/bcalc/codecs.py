"""JSON interchange codecs.

Codecs convert domain values to and from JSON-ready mappings; numbers
are rounded to :data:`bcalc.utils.SIGNIFICANT_DIGITS` on encoding.
"""

import os
import abc
import json
import types
import logging
from typing import Any, Union, Optional, NamedTuple
from collections.abc import Mapping

from .enums import ERepresentation
from .utils import json_number
from .beta import AugmentedBeta, to_shape, opinion_to_beta
from .expr import parse, evaluate, make_env
from .errors import FormatError
from .frames import Bba, THETA_KEY, FrameOfDiscernment, make_bba
from .opinion import Opinion, BasicProbabilityVector, to_pv

__all__ = [
    "Codec",
    "Encoder",
    "Decoder",
    "OpinionCodec",
    "BetaCodec",
    "PvCodec",
    "BbaCodec",
    "LoadedEnv",
    "get_codec",
    "decode_env",
    "load_env",
]

logger = logging.getLogger(__name__)

JsonDict = dict[str, Any]
PathType = Union[str, os.PathLike]


def _fields(data: Mapping, keys, what: str) -> list:
    if not isinstance(data, Mapping):
        raise FormatError(f"invalid {what} record: {data!r} (not an object)")
    missing = [key for key in keys if key not in data]
    if missing:
        raise FormatError(f"invalid {what} record: missing {missing!r}")
    values = [data[key] for key in keys]
    for key, value in zip(keys, values):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise FormatError(
                f"invalid {what} record: {key!r} = {value!r} (not a number)"
            )
    return values


class BaseCodec:
    """Base class for codecs, encoders and decoders."""

    representation: Optional[ERepresentation] = None

    @property
    def name(self) -> str:
        """Return the name of the handled representation."""
        if self.representation is None:
            return type(self).__name__
        return self.representation.value


class Decoder(BaseCodec, abc.ABC):
    """Base class for decoders."""

    @abc.abstractmethod
    def decode(self, data: Mapping):
        """Decode a JSON mapping and return the domain value."""
        pass


class Encoder(BaseCodec, abc.ABC):
    """Base class for encoders."""

    @abc.abstractmethod
    def encode(self, value) -> JsonDict:
        """Encode a domain value into a JSON-ready mapping."""
        pass


class Codec(Decoder, Encoder, abc.ABC):
    """Base class for codecs."""

    pass


class OpinionCodec(Codec):
    """``{"b": .., "d": .., "u": .., "a": ..}``."""

    representation = ERepresentation.OPINION
    keys = ("b", "d", "u", "a")

    def encode(self, value: Opinion) -> JsonDict:
        return {k: json_number(v) for k, v in zip(self.keys, value.astuple())}

    def decode(self, data: Mapping) -> Opinion:
        return Opinion(*_fields(data, self.keys, self.name))


class BetaCodec(Codec):
    """Augmented Beta PDF with its standard shape parameters.

    Opinions are accepted by :meth:`encode` and mapped first.  The
    ``alpha`` and ``beta`` members are derived and ignored on decoding.
    """

    representation = ERepresentation.BETA
    keys = ("r", "s", "a")

    def encode(self, value: Union[AugmentedBeta, Opinion]) -> JsonDict:
        if isinstance(value, Opinion):
            value = opinion_to_beta(value)
        shape = to_shape(value)
        return {
            "r": json_number(value.r),
            "s": json_number(value.s),
            "a": json_number(value.a),
            "alpha": json_number(shape.alpha),
            "beta": json_number(shape.beta),
        }

    def decode(self, data: Mapping) -> AugmentedBeta:
        return AugmentedBeta(*_fields(data, self.keys, self.name))


class PvCodec(Codec):
    """``{"e": .., "u": .., "a": ..}``; opinions are converted first."""

    representation = ERepresentation.PV
    keys = ("e", "u", "a")

    def encode(
        self, value: Union[BasicProbabilityVector, Opinion]
    ) -> JsonDict:
        if isinstance(value, Opinion):
            value = to_pv(value)
        return {
            "e": json_number(value.e),
            "u": json_number(value.u),
            "a": json_number(value.a),
        }

    def decode(self, data: Mapping) -> BasicProbabilityVector:
        return BasicProbabilityVector(*_fields(data, self.keys, self.name))


class BbaCodec(Codec):
    """Frame file: ``{"atoms": [..], "masses": {"t1,t2": .., "*": ..}}``.

    Mass keys are comma separated atom labels, ``"*"`` is the whole
    frame.
    """

    def encode(self, value: Bba) -> JsonDict:
        frame = value.frame
        return {
            "atoms": list(frame.atoms),
            "masses": {
                frame.format_subset(subset): json_number(mass)
                for subset, mass in value.masses.items()
            },
        }

    def decode(self, data: Mapping) -> Bba:
        if not isinstance(data, Mapping):
            raise FormatError(f"invalid frame document: {data!r}")
        atoms = data.get("atoms")
        masses = data.get("masses")
        if not isinstance(atoms, list) or not all(
            isinstance(item, str) for item in atoms
        ):
            raise FormatError(
                f"invalid 'atoms' member: {atoms!r} (must be a list of "
                f"strings)"
            )
        if not isinstance(masses, Mapping):
            raise FormatError(
                f"invalid 'masses' member: {masses!r} (must be an object)"
            )
        for key, mass in masses.items():
            if isinstance(mass, bool) or not isinstance(mass, (int, float)):
                raise FormatError(f"invalid mass for {key!r}: {mass!r}")
        frame = FrameOfDiscernment(tuple(atoms))
        logger.debug(
            "frame with %d atoms, %d focal sets (theta key %r)",
            len(frame),
            len(masses),
            THETA_KEY,
        )
        return make_bba(frame, masses)

    def load(self, path: PathType) -> Bba:
        """Read a frame file."""
        with open(path, encoding="utf-8") as fd:
            return self.decode(_load_json(fd, path))


_CODECS = {
    ERepresentation.OPINION: OpinionCodec(),
    ERepresentation.BETA: BetaCodec(),
    ERepresentation.PV: PvCodec(),
}


def get_codec(representation: Union[ERepresentation, str]) -> Codec:
    """Return the codec of the specified opinion representation."""
    return _CODECS[ERepresentation(representation)]


def _load_json(fd, path) -> Any:
    try:
        return json.load(fd)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{os.fspath(path)}: invalid JSON ({exc})") from exc


class LoadedEnv(NamedTuple):
    """Evaluation environment with the optional observer labels."""

    bindings: Mapping[str, Opinion]
    observers: Mapping[str, str]


def decode_env(data: Mapping) -> LoadedEnv:
    """Decode an environment document.

    Values are expression texts (typically literals) or objects
    ``{"opinion": "...", "observer": "A"}``; the observer label is
    metadata and does not take part in the evaluation.
    """
    if not isinstance(data, Mapping):
        raise FormatError(f"invalid environment document: {data!r}")
    bindings = {}
    observers = {}
    for name, value in data.items():
        if isinstance(value, Mapping):
            observer = value.get("observer")
            if observer is not None:
                observers[name] = str(observer)
            value = value.get("opinion")
        if not isinstance(value, str):
            raise FormatError(f"invalid value for {name!r}: {value!r}")
        bindings[name] = evaluate(parse(value))
    try:
        env = make_env(bindings)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return LoadedEnv(env, types.MappingProxyType(observers))


def load_env(path: PathType) -> LoadedEnv:
    """Read an environment file (see :func:`decode_env`)."""
    with open(path, encoding="utf-8") as fd:
        return decode_env(_load_json(fd, path))
