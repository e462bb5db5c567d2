"""Exception types shared across the toolkit.

`ConfigError` covers bad user input (CLI exit code 2); `GuardError` covers
numeric guards such as the dense-symbol memory limit (CLI exit code 3).
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(ToolkitError, ValueError):
    """Invalid arguments, shapes, or configuration values."""


class DimensionMismatch(ConfigError):
    def __init__(self, what: str, expected: int, got: int):
        self.what = what
        self.expected = expected
        self.got = got
        super().__init__(f"{what}: expected length {expected}, got {got}")


class GuardError(ToolkitError, RuntimeError):
    """A numeric guard was violated (memory limits, degenerate input)."""


class MemoryGuardError(GuardError):
    def __init__(self, m: int, n: int, N: int, limit: int):
        self.m, self.n, self.N, self.limit = m, n, N, limit
        super().__init__(
            f"dense symbol with m={m}, n={n}, N={N} needs 2^{m * n * (N.bit_length() - 1)} "
            f"samples; limit is 2^{limit}"
        )
