"""Exception types and enumeration-size guards shared across the package."""

from __future__ import annotations


class QchromaError(Exception):
    """Base class for all package-specific errors."""


class InvalidEdgeError(QchromaError, IndexError):
    """An edge index is outside the host graph's edge list."""


class LoopContractionError(QchromaError, ValueError):
    """Attempted to contract a loop; loops may only be deleted."""


class GraphFormatError(QchromaError, ValueError):
    """A graph file or JSON document is malformed."""


class SizeLimitError(QchromaError):
    """An exhaustive enumeration would exceed the configured cap."""


class VariableMismatchError(QchromaError, ValueError):
    """Arithmetic between polynomials tagged with different variables."""


class ExactDivisionError(QchromaError, ArithmeticError):
    """A polynomial division expected to be exact left a remainder.

    Divisions performed here are exact by construction, so this always
    signals an upstream bug rather than bad user input.
    """


class BadPrimeError(QchromaError, ArithmeticError):
    """A denominator vanished modulo the working prime; retry with another."""


class SubstitutionError(QchromaError, ValueError):
    """A substitution is undefined at the requested point (e.g. x = 0)."""


# Default caps keep exhaustive sums at desk scale (~4M elementary terms).
DEFAULT_STATE_CAP_BITS = 22
DEFAULT_SUBSET_CAP_BITS = 22


def require_state_space(n_vertices: int, k: int, cap_bits: int = DEFAULT_STATE_CAP_BITS) -> None:
    """Refuse a k**n_vertices state enumeration beyond the cap."""
    if k > 1 and n_vertices * k.bit_length() > cap_bits + 1 and k ** n_vertices > 2 ** cap_bits:
        raise SizeLimitError(
            f"state space {k}^{n_vertices} exceeds 2^{cap_bits} cap"
        )


def require_subset_space(n_edges: int, cap_bits: int = DEFAULT_SUBSET_CAP_BITS) -> None:
    """Refuse a 2**n_edges subset enumeration beyond the cap."""
    if n_edges > cap_bits:
        raise SizeLimitError(
            f"subset space 2^{n_edges} exceeds 2^{cap_bits} cap"
        )
