# sweep/quantities/__init__.py

from .dynamical import EchoQuantity, RevivalsQuantity, RevivalTimeQuantity
from .geometric import (
    FidelityStepQuantity,
    OverlapFidelityQuantity,
    OverlapPairQuantity,
    QgtQuantity,
    SusceptibilityQuantity,
)
from .spectral import ClassifyQuantity, GapQuantity, MaxVelocityQuantity

__all__ = [
    "ClassifyQuantity",
    "EchoQuantity",
    "FidelityStepQuantity",
    "GapQuantity",
    "MaxVelocityQuantity",
    "OverlapFidelityQuantity",
    "OverlapPairQuantity",
    "QgtQuantity",
    "RevivalTimeQuantity",
    "RevivalsQuantity",
    "SusceptibilityQuantity",
]
