"""Numerical tolerances shared across the library.

All thresholds live in one frozen dataclass so the CLI can override any of
them by name (--tol NAME=VALUE) and pass a single bundle down the call
stack. `DEFAULT` is the module-wide default used when no bundle is given.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    norm: float = 1e-10    # ket normalization residual
    herm: float = 1e-10    # Hermiticity residual, entrywise
    eig: float = 1e-9      # eigendecomposition reconstruction / monotone slack
    orth: float = 1e-10    # overlap modulus at or below this counts as orthogonal
    gs: float = 1e-8       # Gram-Schmidt linear-dependence threshold
    pos: float = 1e-12     # strict-positivity threshold for Perron entries
    margin: float = 1e-12  # strict-inequality margin for certificate verdicts
    # near the a0^2 + a1^2 = 1 boundary the pair-basis cancellation amplifies
    # roundoff to ~1e-11 per entry, so the form check needs headroom there
    form: float = 1e-9     # entrywise residual allowed in the kappa form check

    def replace(self, **overrides: float) -> "Tolerances":
        """New bundle with the named fields overridden."""
        return dataclasses.replace(self, **overrides)

    @classmethod
    def field_names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in dataclasses.fields(cls))


DEFAULT = Tolerances()
