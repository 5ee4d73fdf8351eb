"""Crystal random walks in Weyl chambers.

Thin Python front end over the C++ core: root systems, letter crystals with their
spectral parameters, exact path counts, kernels, exit probabilities, Monte Carlo
and the verification suites.
"""

from ._core import (
    RNG,
    ConfigError,
    CrystalwalkError,
    DomainError,
    Model,
    NotMinusculeError,
    ResourceLimitError,
    UnsupportedTypeError,
    __version__,
    acceptance,
    roots,
    trajectory_seed,
    verify,
)

__all__ = [
    "RNG",
    "ConfigError",
    "CrystalwalkError",
    "DomainError",
    "Model",
    "NotMinusculeError",
    "ResourceLimitError",
    "UnsupportedTypeError",
    "__version__",
    "acceptance",
    "roots",
    "trajectory_seed",
    "verify",
]
