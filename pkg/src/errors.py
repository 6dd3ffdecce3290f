from typing import Optional


class HypergraphError(Exception):
    pass


class InvalidHypergraphError(HypergraphError, ValueError):
    pass


class ParseError(HypergraphError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceededError(HypergraphError):
    def __init__(self, edges: int, budget: int):
        self.edges = edges
        self.budget = budget
        super().__init__(
            f"instance has {edges} edges, oracle budget is {budget}")


class PreconditionError(HypergraphError, ValueError):
    pass


class GadgetVerificationError(HypergraphError):
    pass


class ConfigurationError(HypergraphError):
    pass


class VerificationFailure(HypergraphError):
    pass
