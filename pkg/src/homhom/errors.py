"""Error taxonomy shared by the whole package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific class that applies.
"""


class InputError(ValueError):
    """Malformed or out-of-range input (bad vertex ids, bad file syntax)."""


class PreconditionError(InputError):
    """Structured precondition violated (wrong digraph class, bad partition)."""


class CapabilityError(RuntimeError):
    """Instance exceeds a size guard of an exhaustive-search operation."""
