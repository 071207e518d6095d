class OrigamiError(ValueError):
    """Raised when a construction or check cannot proceed.

    ``code`` is a short stable identifier such as ``"twist-out-of-range"``
    that callers (and the CLI) can match on.
    """

    def __init__(self, code, detail=""):
        self.code = code
        self.detail = detail
        super().__init__(f"{code}: {detail}" if detail else code)
