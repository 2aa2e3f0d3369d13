"""Exception types shared across the package."""


class InputError(ValueError):
    """User-supplied data or options are invalid.

    The CLI maps this to exit code 1. Anything else that escapes the
    pipeline is treated as an internal failure and maps to exit code 2.
    """
