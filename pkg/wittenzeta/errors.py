class ComputationError(ValueError):
    """Base of every failure raised by a computation (as opposed to bad usage)"""
    pass


class BudgetExceeded(ComputationError):
    pass
