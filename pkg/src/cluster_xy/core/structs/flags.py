from enum import Flag as _Flag
from enum import auto


class Flag(_Flag):
    """
    Diagnostics carried as data by every aggregate result and dataset row.

    Combine with ``|``, test with ``in``. ``Flag(0)`` means a clean result.
    """

    GAPLESS_MODE = auto()
    """At least one momentum mode has ``Δ_k <= τ_gapless``; its angle was replaced by 0 and it was skipped or special-cased."""
    UNPAIRED_SIGN_CHANGE = auto()
    """``ε`` at an unpaired momentum (0 or π) changes sign between the two coupling points involved."""
    SECTOR_EXCITED = auto()
    """In sector q = 1 the free-fermion vacuum has even parity, so the closed form describes an excited sector state."""
    DEGENERATE = auto()
    """The oracle found a (near) degenerate sector ground state."""
    UNRESOLVED_PAIRS = auto()
    """Pair-excitation energies could not be separated in the oracle spectrum."""
    TRIVIAL_PROTOCOL = auto()
    """Quench with identical initial and final couplings."""
    CRITICAL_WINDOW = auto()
    """A scan window contains gapless points."""
    EVALUATION_ERROR = auto()
    """Evaluating a scan point raised; the row holds no values."""

    @property
    def label(self) -> str:
        """``|``-joined member names, empty for a clean flag set."""
        return "|".join(str(member.name) for member in type(self) if member in self)

    @classmethod
    def from_label(cls, label: str) -> "Flag":
        result = cls(0)
        for name in filter(None, (part.strip() for part in label.split("|"))):
            result |= cls[name]
        return result


NO_FLAGS = Flag(0)

DEGENERATE_FAMILY = Flag.GAPLESS_MODE | Flag.DEGENERATE | Flag.UNRESOLVED_PAIRS | Flag.EVALUATION_ERROR
"""Flags after which a row cannot be trusted as a physical value."""


class GaplessModeWarning(RuntimeWarning):
    """Raised through ``warnings`` when a scalar kernel is evaluated at a gapless mode."""
