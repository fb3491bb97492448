"""Error taxonomy shared across modules and mapped to CLI exit codes."""


class InputError(ValueError):
    """Malformed or inconsistent input data (CLI exit code 1)."""


class CapabilityError(RuntimeError):
    """Operation not supported for this model (CLI exit code 2)."""
