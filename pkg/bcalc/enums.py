"""Enumeration types for the bcalc package."""

import enum


class EBbaClass(enum.Flag):
    """Structural classes of a basic belief assignment.

    Classes overlap (e.g. every Bayesian bba is also dogmatic), so
    :func:`bcalc.frames.classify` returns a combination of flags.
    """

    VACUOUS = enum.auto()
    BAYESIAN = enum.auto()
    DOGMATIC = enum.auto()
    DIRICHLET = enum.auto()
    CLUSTER_DIRICHLET = enum.auto()
    GENERAL = enum.auto()


class EOperator(enum.Enum):
    """Belief calculus operators and their ASCII notation."""

    ADD = "+"
    SUB = "-"
    MULT = "*"
    DIV = "/"
    COMULT = "|"
    CODIV = "%"
    NOT = "!"

    @property
    def precedence(self) -> int:
        """Binding strength (higher binds tighter)."""
        return _PRECEDENCE[self]


_PRECEDENCE = {
    EOperator.ADD: 1,
    EOperator.SUB: 1,
    EOperator.COMULT: 2,
    EOperator.CODIV: 2,
    EOperator.MULT: 3,
    EOperator.DIV: 3,
    EOperator.NOT: 4,
}


class ETokenKind(enum.Enum):
    """Kinds of lexical tokens of the expression language."""

    NUMBER = "number"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","
    PLUS = "+"
    MINUS = "-"
    STAR = "*"
    SLASH = "/"
    BAR = "|"
    PERCENT = "%"
    BANG = "!"
    IDENT = "identifier"
    LET = "let"
    EQUALS = "="
    SEMICOLON = ";"
    END = "end of input"


class ERepresentation(enum.Enum):
    """Interchangeable representations of a binomial opinion."""

    OPINION = "opinion"
    BETA = "beta"
    PV = "pv"


class ECoarsening(enum.Enum):
    """Coarsening methods from a general frame to a binary one."""

    SMOOTH = "smooth"
    STABLE = "stable"


class ECommand(enum.Enum):
    """Commands of the command line interface."""

    EVAL = "eval"
    CONVERT = "convert"
    COARSEN = "coarsen"
    PLOT = "plot"


class EOutputFormat(enum.Enum):
    """Output formats of the command line interface."""

    JSON = "json"
    TEXT = "text"
