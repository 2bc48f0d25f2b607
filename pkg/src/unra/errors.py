"""Exception types shared across the package."""


class UnraError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(UnraError):
    """A corpus or model file violates its documented grammar."""

    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno


class ValidationError(UnraError):
    """In-memory data violates a structural invariant."""


class UnknownTokenError(UnraError):
    """A query or training operation referenced a token the model does not know."""

    def __init__(self, token):
        super().__init__(f"unknown token: {token!r}")
        self.token = token
