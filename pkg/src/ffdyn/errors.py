class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured size budget."""
