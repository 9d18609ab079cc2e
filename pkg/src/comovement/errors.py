"""Exception types shared across the package."""


class InputError(ValueError):
    """Bad input data or configuration (maps to exit code 2 in the CLI)."""


class NumericalError(RuntimeError):
    """A numerical routine failed or violated its accuracy contract (exit code 3)."""
