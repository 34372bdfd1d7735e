"""Exception hierarchy shared by the engine and the CLI.

Each class carries the process exit code the CLI maps it to.
"""


class VerlindeError(Exception):
    exit_code = 1


class InputError(VerlindeError, ValueError):
    """Bad Cartan type, weight outside the level set, malformed config, ..."""

    exit_code = 1


class ValidationError(InputError):
    """Involution data violating one of the admissibility checks."""


class UnsupportedError(InputError):
    """A request the engine deliberately does not handle (e.g. built-in I_k outside type A)."""


class NumericConsistencyError(VerlindeError, ArithmeticError):
    """A floating-point oracle disagreed with the exact result beyond tolerance."""

    exit_code = 2


class EvennessViolation(NumericConsistencyError):
    """A fusion coefficient that must be even (to halve onto a mu-term) was odd."""


class ResourceError(VerlindeError, RuntimeError):
    """A resource guard (alcove size, reflection steps) was exceeded."""

    exit_code = 3
