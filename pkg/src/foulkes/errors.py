class CapExceededError(ValueError):
    """A brute-force computation would exceed its configured size limit."""

    def __init__(self, what: str, size: int, cap: int, flag: str):
        self.what, self.size, self.cap, self.flag = what, size, cap, flag
        super().__init__(f"{what} has {size} items, above the limit {cap} (raise with {flag})")


class ConsistencyError(AssertionError):
    """Two routes to the same quantity disagreed."""
