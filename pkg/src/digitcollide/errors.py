"""Error types shared across the package.

Plain ValueError covers malformed single arguments (bad base, bad interval).
The classes here exist so callers can distinguish "your parameters are
wrong" from "the computation could not finish within its stated limits".
"""


class DomainError(ValueError):
    """A structurally valid request that violates an operation's contract."""


class BudgetExceeded(DomainError):
    """An enumeration or summation would exceed its configured step budget."""


class ConstructionFailed(DomainError):
    """The digit-elimination construction failed; `step` names the stage.

    Failure is a legal outcome for small exponents: the underlying
    statement only promises success for all sufficiently large K.
    """

    def __init__(self, step: str, message: str):
        super().__init__(f"construction failed at step '{step}': {message}")
        self.step = step
