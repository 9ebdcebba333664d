"""Test bcalc.frames."""

import pytest
from bitarray import frozenbitarray

from bcalc.enums import EBbaClass, ECoarsening
from bcalc.errors import (
    FrameError,
    AdditivityError,
    EmptyTargetError,
    PreconditionError,
    ForeignSubsetError,
)
from bcalc.frames import (
    FrameOfDiscernment,
    belief,
    coarsen,
    classify,
    make_bba,
    base_rate,
    disbelief,
    uncertainty,
    smooth_coarsen,
    stable_coarsen,
    prob_expectation,
)
from bcalc.opinion import expectation

FRAME = FrameOfDiscernment(("t1", "t2", "t3"))


class TestFrame:
    @staticmethod
    def test_subsets():
        assert FRAME.subset("t1") == frozenbitarray("100")
        assert FRAME.subset("t1, t3") == frozenbitarray("101")
        assert FRAME.subset(["t2"]) == frozenbitarray("010")
        assert FRAME.subset("*") == FRAME.theta
        assert FRAME.theta == frozenbitarray("111")
        assert not FRAME.empty.any()

    @staticmethod
    def test_labels():
        subset = FRAME.subset("t3,t1")
        assert FRAME.labels(subset) == ("t1", "t3")
        assert FRAME.format_subset(subset) == "t1,t3"
        assert FRAME.format_subset(FRAME.theta) == "*"
        assert FRAME.complement(subset) == FRAME.subset("t2")

    @staticmethod
    def test_enumeration():
        subsets = list(FRAME.subsets())
        assert len(subsets) == 7
        assert len(set(subsets)) == 7

    @staticmethod
    @pytest.mark.parametrize(
        "atoms",
        [
            pytest.param(("t1",), id="too_small"),
            pytest.param(("t1", "t1"), id="duplicate"),
            pytest.param(("t1", "t2,t3"), id="separator"),
            pytest.param(("t1", "*"), id="theta_key"),
            pytest.param(("t1", ""), id="empty_label"),
            pytest.param(tuple(f"t{idx}" for idx in range(65)), id="too_big"),
        ],
    )
    def test_invalid(atoms):
        with pytest.raises(FrameError):
            FrameOfDiscernment(atoms)

    @staticmethod
    def test_foreign_subset():
        with pytest.raises(ForeignSubsetError):
            FRAME.subset("t4")
        with pytest.raises(ForeignSubsetError):
            FRAME.labels(frozenbitarray("10"))


class TestBba:
    @staticmethod
    def test_masses():
        bba = make_bba(FRAME, {"*": 0.4, "t1": 0.5, "t1,t2": 0.1})
        assert list(bba.masses.values()) == [0.5, 0.1, 0.4]
        assert bba.mass(FRAME.subset("t2")) == 0
        assert len(bba.focal_elements()) == 3

    @staticmethod
    def test_additivity():
        with pytest.raises(AdditivityError):
            make_bba(FRAME, {"t1": 0.5, "t2": 0.4})

    @staticmethod
    def test_empty_focal_set():
        with pytest.raises(EmptyTargetError):
            make_bba(FRAME, {FRAME.empty: 0.5, "*": 0.5})

    @staticmethod
    def test_duplicate_key():
        with pytest.raises(FrameError):
            make_bba(FRAME, {"t1,t2": 0.5, "t2,t1": 0.5})

    @staticmethod
    def test_read_only():
        bba = make_bba(FRAME, {"*": 1})
        with pytest.raises(TypeError):
            bba.masses[FRAME.theta] = 0.5  # type: ignore[index]


class TestOpinionFunctions:
    bba = make_bba(FRAME, {"t1": 0.5, "t1,t2": 0.1, "*": 0.4})

    def test_atom(self):
        x = FRAME.subset("t1")
        assert belief(self.bba, x) == pytest.approx(0.5)
        assert disbelief(self.bba, x) == 0
        assert uncertainty(self.bba, x) == pytest.approx(0.5)
        assert base_rate(FRAME, x) == pytest.approx(1 / 3)
        assert prob_expectation(self.bba, x) == pytest.approx(
            0.5 + 0.05 + 0.4 / 3
        )

    def test_pair(self):
        x = FRAME.subset("t1,t2")
        assert belief(self.bba, x) == pytest.approx(0.6)
        assert disbelief(self.bba, x) == 0
        assert uncertainty(self.bba, x) == pytest.approx(0.4)
        assert prob_expectation(self.bba, x) == pytest.approx(
            0.6 + 0.4 * 2 / 3
        )

    def test_complement(self):
        x = FRAME.subset("t3")
        assert belief(self.bba, x) == 0
        assert disbelief(self.bba, x) == pytest.approx(0.6)
        assert uncertainty(self.bba, x) == pytest.approx(0.4)

    def test_empty_target(self):
        with pytest.raises(EmptyTargetError):
            belief(self.bba, FRAME.empty)

    def test_foreign_target(self):
        other = FrameOfDiscernment(("a", "b"))
        with pytest.raises(ForeignSubsetError):
            belief(self.bba, other.subset("a"))


@pytest.mark.parametrize(
    "masses, flags",
    [
        pytest.param(
            {"*": 1},
            EBbaClass.VACUOUS
            | EBbaClass.DIRICHLET
            | EBbaClass.CLUSTER_DIRICHLET,
            id="vacuous",
        ),
        pytest.param(
            {"t1": 0.5, "t2": 0.5},
            EBbaClass.BAYESIAN
            | EBbaClass.DOGMATIC
            | EBbaClass.DIRICHLET
            | EBbaClass.CLUSTER_DIRICHLET,
            id="bayesian",
        ),
        pytest.param(
            {"t1": 0.3, "t2": 0.2, "*": 0.5},
            EBbaClass.DIRICHLET | EBbaClass.CLUSTER_DIRICHLET,
            id="dirichlet",
        ),
        pytest.param(
            {"t1,t2": 0.6, "*": 0.4},
            EBbaClass.CLUSTER_DIRICHLET,
            id="cluster_dirichlet",
        ),
        pytest.param(
            {"t1,t2": 0.5, "t2,t3": 0.5},
            EBbaClass.DOGMATIC | EBbaClass.GENERAL,
            id="general",
        ),
    ],
)
def test_classify(masses, flags):
    assert classify(make_bba(FRAME, masses)) == flags


class TestCoarsening:
    @staticmethod
    def test_smooth():
        bba = make_bba(FRAME, {"t1,t2": 0.6, "*": 0.4})
        w = smooth_coarsen(bba, FRAME.subset("t1"))
        assert w.astuple() == pytest.approx((0.15, 0, 0.85, 1 / 3))
        assert expectation(w) == pytest.approx(
            prob_expectation(bba, FRAME.subset("t1"))
        )

    @staticmethod
    def test_smooth_on_dirichlet():
        bba = make_bba(FRAME, {"t1": 0.3, "t2": 0.2, "*": 0.5})
        w = smooth_coarsen(bba, FRAME.subset("t1"))
        assert w.astuple() == pytest.approx((0.3, 0.2, 0.5, 1 / 3))

    @staticmethod
    @pytest.mark.parametrize(
        "masses, target, expected",
        [
            pytest.param(
                {"t1": 0.5, "t1,t2": 1e-9, "*": 0.5 - 1e-9},
                "t1",
                (0.5, 0, 0.5, 1 / 3),
                id="upper",
            ),
            pytest.param(
                {"t1,t2": 0.5, "t2,t3": 1e-9, "*": 0.5 - 1e-9},
                "t1,t2",
                (0.5, 0, 0.5, 2 / 3),
                id="lower",
            ),
        ],
    )
    def test_branch_continuity(masses, target, expected):
        bba = make_bba(FRAME, masses)
        w = smooth_coarsen(bba, FRAME.subset(target))
        assert w.astuple() == pytest.approx(expected, abs=1e-6)

    @staticmethod
    def test_smooth_degenerate():
        bba = make_bba(FRAME, {"t2,t3": 1})
        w = smooth_coarsen(bba, FRAME.subset("t1"))
        assert w.astuple() == pytest.approx((0, 1, 0, 1 / 3))

    @staticmethod
    def test_stable():
        bba = make_bba(FRAME, {"t1,t2": 0.6, "*": 0.4})
        w = stable_coarsen(bba, FRAME.subset("t1,t2"))
        assert w.astuple() == pytest.approx((0.6, 0, 0.4, 2 / 3))

    @staticmethod
    def test_stable_not_focal():
        bba = make_bba(FRAME, {"t1,t2": 0.6, "*": 0.4})
        with pytest.raises(PreconditionError) as exc_info:
            stable_coarsen(bba, FRAME.subset("t1"))
        assert exc_info.value.failed == ("x is a focal element",)

    @staticmethod
    def test_stable_general_bba():
        bba = make_bba(FRAME, {"t1,t2": 0.5, "t2,t3": 0.5})
        with pytest.raises(PreconditionError) as exc_info:
            stable_coarsen(bba, FRAME.subset("t1,t2"))
        assert "bba is (cluster) Dirichlet" in exc_info.value.failed

    @staticmethod
    @pytest.mark.parametrize("method", list(ECoarsening))
    def test_whole_frame(method):
        bba = make_bba(FRAME, {"t1": 1})
        with pytest.raises(PreconditionError):
            coarsen(bba, FRAME.theta, method)

    @staticmethod
    def test_dispatch():
        bba = make_bba(FRAME, {"t1,t2": 0.6, "*": 0.4})
        x = FRAME.subset("t1,t2")
        assert coarsen(bba, x, "stable") == stable_coarsen(bba, x)
        assert coarsen(bba, x) == smooth_coarsen(bba, x)
