"""Exception types shared by the engine and the command line."""


class EndotypeError(Exception):
    """Base class for classification failures."""


class PreconditionError(EndotypeError):
    """Input outside the scope of a classification rule (user-facing)."""


class InvariantViolation(EndotypeError):
    """An internal consistency check failed; indicates a bug."""


class RealityTrap(InvariantViolation):
    """c_lambda was non-real or zero although lambda_B matched."""

    fired = 0  # process-wide count, audited by the test suite

    def __init__(self, *args):
        RealityTrap.fired += 1
        super().__init__(*args)
