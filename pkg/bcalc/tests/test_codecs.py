"""Test the JSON codecs."""

import json
import pathlib

import pytest

from bcalc import codecs
from bcalc.enums import ERepresentation
from bcalc.beta import AugmentedBeta
from bcalc.errors import FormatError, ParseError, AdditivityError
from bcalc.frames import belief
from bcalc.opinion import Opinion, BasicProbabilityVector

DATA_DIR = pathlib.Path(__file__).parent / "data"

W = Opinion(0.7, 0.1, 0.2, 0.5)


class TestOpinionCodec:
    @staticmethod
    def test_encode():
        codec = codecs.OpinionCodec()
        assert codec.name == "opinion"
        assert codec.encode(W) == {"b": 0.7, "d": 0.1, "u": 0.2, "a": 0.5}
        assert codec.encode(Opinion(1, 0, 0, 0.5)) == {
            "b": 1,
            "d": 0,
            "u": 0,
            "a": 0.5,
        }

    @staticmethod
    def test_decode():
        codec = codecs.OpinionCodec()
        data = {"b": 0.7, "d": 0.1, "u": 0.2, "a": 0.5}
        assert codec.decode(data) == W

    @staticmethod
    @pytest.mark.parametrize(
        "data, message",
        [
            pytest.param([0.7, 0.1, 0.2, 0.5], "not an object", id="list"),
            pytest.param({"b": 0.7, "d": 0.1, "u": 0.2}, "missing", id="key"),
            pytest.param(
                {"b": "0.7", "d": 0.1, "u": 0.2, "a": 0.5},
                "not a number",
                id="string",
            ),
            pytest.param(
                {"b": True, "d": 0.1, "u": 0.2, "a": 0.5},
                "not a number",
                id="bool",
            ),
        ],
    )
    def test_decode_errors(data, message):
        with pytest.raises(FormatError, match=message):
            codecs.OpinionCodec().decode(data)

    @staticmethod
    def test_decode_invalid_opinion():
        data = {"b": 0.7, "d": 0.2, "u": 0.2, "a": 0.5}
        with pytest.raises(AdditivityError):
            codecs.OpinionCodec().decode(data)


class TestBetaCodec:
    @staticmethod
    def test_encode_opinion():
        data = codecs.BetaCodec().encode(W)
        assert data == {"r": 7, "s": 1, "a": 0.5, "alpha": 8, "beta": 2}

    @staticmethod
    def test_encode_beta():
        data = codecs.BetaCodec().encode(AugmentedBeta(0, 0, 0.25))
        assert data == {"r": 0, "s": 0, "a": 0.25, "alpha": 0.5, "beta": 1.5}

    @staticmethod
    def test_decode_ignores_shape():
        codec = codecs.BetaCodec()
        data = {"r": 7, "s": 1, "a": 0.5, "alpha": 0, "beta": 0}
        assert codec.decode(data) == AugmentedBeta(7, 1, 0.5)


class TestPvCodec:
    @staticmethod
    def test_encode_opinion():
        assert codecs.PvCodec().encode(W) == {"e": 0.8, "u": 0.2, "a": 0.5}

    @staticmethod
    def test_decode():
        data = {"e": 0.8, "u": 0.2, "a": 0.5}
        pv = codecs.PvCodec().decode(data)
        assert pv == BasicProbabilityVector(0.8, 0.2, 0.5)


@pytest.mark.parametrize(
    "representation, cls",
    [
        (ERepresentation.OPINION, codecs.OpinionCodec),
        ("beta", codecs.BetaCodec),
        ("pv", codecs.PvCodec),
    ],
)
def test_get_codec(representation, cls):
    assert isinstance(codecs.get_codec(representation), cls)


def test_get_codec_unknown():
    with pytest.raises(ValueError):
        codecs.get_codec("bba")


class TestBbaCodec:
    @staticmethod
    def test_load():
        bba = codecs.BbaCodec().load(DATA_DIR / "frame.json")
        assert bba.frame.atoms == ("t1", "t2", "t3")
        x = bba.frame.subset(["t1", "t2"])
        assert bba.mass(x) == 0.6
        assert bba.mass(bba.frame.theta) == 0.4
        assert belief(bba, x) == pytest.approx(0.6)

    @staticmethod
    def test_encode():
        codec = codecs.BbaCodec()
        bba = codec.load(DATA_DIR / "frame.json")
        assert codec.encode(bba) == {
            "atoms": ["t1", "t2", "t3"],
            "masses": {"t1,t2": 0.6, "*": 0.4},
        }

    @staticmethod
    def test_decode_labels():
        data = {"atoms": ["a", "b"], "masses": {"a": 0.5, "b, a": 0.5}}
        bba = codecs.BbaCodec().decode(data)
        assert bba.mass(bba.frame.subset("a")) == 0.5
        assert bba.mass(bba.frame.theta) == 0.5

    @staticmethod
    @pytest.mark.parametrize(
        "data",
        [
            pytest.param([], id="list"),
            pytest.param({"masses": {"*": 1}}, id="no_atoms"),
            pytest.param({"atoms": "t1,t2", "masses": {"*": 1}}, id="atoms"),
            pytest.param({"atoms": ["t1", 2], "masses": {"*": 1}}, id="label"),
            pytest.param({"atoms": ["t1", "t2"]}, id="no_masses"),
            pytest.param(
                {"atoms": ["t1", "t2"], "masses": {"*": "1"}}, id="mass"
            ),
        ],
    )
    def test_decode_errors(data):
        with pytest.raises(FormatError):
            codecs.BbaCodec().decode(data)

    @staticmethod
    def test_invalid_json(tmp_path):
        path = tmp_path / "frame.json"
        path.write_text('{"atoms": ["t1", "t2"], ', encoding="utf-8")
        with pytest.raises(FormatError, match="invalid JSON"):
            codecs.BbaCodec().load(path)


class TestEnv:
    @staticmethod
    def test_load():
        env = codecs.load_env(DATA_DIR / "env.json")
        assert set(env.bindings) == {"x", "y"}
        assert env.bindings["x"] == W
        expected = (0.5, 0.3, 0.2, 0.4)
        assert env.bindings["y"].astuple() == pytest.approx(expected)
        assert dict(env.observers) == {"y": "A"}

    @staticmethod
    def test_read_only():
        env = codecs.decode_env({"x": "(0,0,1,0.5)"})
        with pytest.raises(TypeError):
            env.bindings["y"] = W  # type: ignore[index]

    @staticmethod
    def test_expressions():
        env = codecs.decode_env({"x": "!(0.7,0.1,0.2,0.5)"})
        assert env.bindings["x"] == Opinion(0.1, 0.7, 0.2, 0.5)

    @staticmethod
    @pytest.mark.parametrize(
        "data",
        [
            pytest.param(["x"], id="list"),
            pytest.param({"x": 0.5}, id="number"),
            pytest.param({"x": {"observer": "A"}}, id="no_opinion"),
            pytest.param({"1x": "(0,0,1,0.5)"}, id="identifier"),
        ],
    )
    def test_errors(data):
        with pytest.raises(FormatError):
            codecs.decode_env(data)

    @staticmethod
    def test_invalid_expression():
        with pytest.raises(ParseError):
            codecs.decode_env({"x": "(0,0,1)"})

    @staticmethod
    def test_invalid_json(tmp_path):
        path = tmp_path / "env.json"
        path.write_text(json.dumps({"x": "(0,0,1,0.5)"})[:-1])
        with pytest.raises(FormatError):
            codecs.load_env(path)
