"""Catalog of admissible initial data, given by radial Fourier profiles.

Every datum is radially symmetric, smooth and exponentially decaying on
the Fourier side, so all weighted norms in the package are finite and
the quadrature truncation logic applies.  The ``mass`` field is the
integral of the physical-space datum, which equals the Fourier profile
at r = 0 (the dimensional Plancherel constant is dropped everywhere, as
in the norms themselves).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, UnknownDatum

__all__ = ["DataSpec", "catalog_lookup", "CATALOG_NAMES"]


@dataclass(frozen=True)
class DataSpec:
    name: str
    g_hat: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    mass: float

    def __call__(self, r):
        return self.g_hat(np.asarray(r, dtype=float))


def _gaussian(alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    def g(r: np.ndarray) -> np.ndarray:
        return np.exp(-alpha * np.asarray(r, dtype=float) ** 2)

    return g


def _zero_mass(r: np.ndarray) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    return r**2 * np.exp(-(r**2))


def _zero(r: np.ndarray) -> np.ndarray:
    return np.zeros_like(np.asarray(r, dtype=float))


_DILATED = re.compile(r"^dilated_gaussian\(([^)]+)\)$")

CATALOG_NAMES = ("gaussian", "zero_mass", "zero", "dilated_gaussian(ALPHA)")


def catalog_lookup(name: str) -> DataSpec:
    """Resolve a datum by name.

    Known names: ``gaussian`` (e^(-r^2), mass 1), ``zero_mass``
    (r^2 e^(-r^2), mass 0), ``zero``, and ``dilated_gaussian(alpha)``
    (e^(-alpha r^2), mass 1, alpha > 0).
    """
    if name == "gaussian":
        return DataSpec("gaussian", _gaussian(1.0), 1.0)
    if name == "zero_mass":
        return DataSpec("zero_mass", _zero_mass, 0.0)
    if name == "zero":
        return DataSpec("zero", _zero, 0.0)
    m = _DILATED.match(name)
    if m:
        try:
            alpha = float(m.group(1))
        except ValueError:
            raise UnknownDatum(f"bad dilation parameter in {name!r}") from None
        if not (alpha > 0.0 and np.isfinite(alpha)):
            raise DomainError(f"dilated_gaussian needs alpha > 0, got {alpha}")
        return DataSpec(f"dilated_gaussian({alpha:g})", _gaussian(alpha), 1.0)
    raise UnknownDatum(f"no datum named {name!r}; known: {', '.join(CATALOG_NAMES)}")
