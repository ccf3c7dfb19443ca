"""Exception types raised across the package.

Errors split into two families: ``InputError`` for bad data supplied by the
caller, and ``InvariantViolation`` for internal consistency failures that
signal a bug rather than a data condition.  The CLI maps them to exit codes 1
and 2 respectively.
"""


class TcaRankError(Exception):
    pass


class InputError(TcaRankError, ValueError):
    pass


class InvariantViolation(TcaRankError, RuntimeError):
    pass


class EmptyProfile(InputError):
    pass


class InvalidBallot(InputError):
    def __init__(self, row, message="ballot is not a permutation"):
        self.row = row
        super().__init__(f"row {row}: {message}")


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class DimensionMismatch(ParseError):
    pass


class NonPermutationRow(ParseError):
    pass


class DimensionTooLarge(InputError):
    pass


class ZeroDispersion(InputError):
    pass


class IncompleteAxes(InputError):
    pass


class EmptyCluster(InputError):
    pass


class OutOfRange(InputError):
    pass


class InfeasibleAlpha(InputError):
    pass


class MissingAxis(InputError):
    pass


class NoCoherentPrefix(TcaRankError):
    """Cluster 1 of the first axis is incoherent (or empty); no group exists.

    Not an error in the data sense: the peeling loop catches it and routes
    the remaining voters to the noisy group.
    """

    def __init__(self, message, record=None):
        self.record = record
        super().__init__(message)


class OffLattice(InvariantViolation):
    pass


class Inconsistent(InvariantViolation):
    def __init__(self, score, expected, observed):
        self.score = score
        super().__init__(
            f"score {score}: marginals give {expected}, census gives {observed}")
