"""Exception types raised by the engine."""


class BestWorstError(ValueError):
    """Base class for invalid inputs and infeasible requests."""


class NegativeWeight(BestWorstError):
    pass


class TooFewCandidates(BestWorstError):
    pass


class OutOfRange(BestWorstError):
    pass


class ProfileMismatch(BestWorstError):
    """Profile length does not match the rule's candidate count."""


class InvalidTarget(BestWorstError):
    pass


class NotConvergent(BestWorstError):
    pass


class WrongRegime(BestWorstError):
    pass


class InfeasibleConfig(BestWorstError):
    pass


class EpsilonOutOfRange(BestWorstError):
    def __init__(self, epsilon, epsilon_max):
        self.epsilon = epsilon
        self.epsilon_max = epsilon_max
        super().__init__(
            f"epsilon={epsilon} outside the feasible range [0, {epsilon_max}]"
        )


class InternalInconsistency(RuntimeError):
    """The deviation route and the closed-form route disagree.

    This is never a user error; it means the engine itself is wrong.
    """
