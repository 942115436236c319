"""Exception hierarchy shared by every module."""


class Dp3Error(Exception):
    pass


class DivisionByZero(Dp3Error, ZeroDivisionError):
    pass


class PoleAtExpansionPoint(Dp3Error):
    pass


class InvalidBasis(Dp3Error):
    pass


class UnsupportedRelation(Dp3Error):
    pass


class MissingBinding(Dp3Error, KeyError):
    pass


class UnsupportedRHS(Dp3Error):
    pass


class EmptySolutionSet(Dp3Error):
    pass


class MissingAnchor(Dp3Error):
    pass


class AlgorithmInvariantViolation(Dp3Error):
    pass


class DeterminantVanished(Dp3Error):
    def __init__(self, n, detail=""):
        super().__init__(f"L1=L2=0 system singular at n={n} {detail}".strip())
        self.n = n


class InvalidIndex(Dp3Error, IndexError):
    pass


class InsufficientTruncation(Dp3Error):
    pass


class OracleInconsistency(Dp3Error):
    pass


class DegenerateModulus(Dp3Error):
    pass


class EvaluationFailure(Dp3Error):
    pass


class PoleProximity(Dp3Error):
    def __init__(self, tau, value=None):
        super().__init__(f"|u| left the admissible band near tau={tau}")
        self.tau = tau
        self.value = value


class StiffnessFailure(Dp3Error):
    def __init__(self, tau, message=""):
        super().__init__(f"step size collapsed near tau={tau}: {message}")
        self.tau = tau


class IncompatibleMap(Dp3Error):
    pass


class SchemaVersionError(Dp3Error):
    pass


class ConfigError(Dp3Error):
    pass
