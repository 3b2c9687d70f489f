"""Shared exception types.

Rejected inputs raise ``ValueError`` with a message naming the violated
precondition.  Exceeding an explicit search or size budget raises
``BudgetError`` instead, so callers can tell "the answer is no" apart from
"the search was too big" -- results are never silently truncated.
"""


class BudgetError(RuntimeError):
    """A computation exceeded its configured budget or depth."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.message = message
