from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .tca import DEFAULT_ENUM_LIMIT, RestartPolicy


def as_fraction(x):
    """Exact fraction from an int, Fraction, decimal string or float literal."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return Fraction(str(x))


@dataclass(frozen=True)
class PeelConfig:
    """Knobs for the peeling loop; ``engine`` is enumerate, ascent or auto."""

    min_group_frac: Fraction = Fraction(1, 100)
    max_iters: int = 20
    engine: str = "auto"
    restarts: RestartPolicy = field(default_factory=RestartPolicy)
    enum_limit: int = DEFAULT_ENUM_LIMIT

    def __post_init__(self):
        frac = as_fraction(self.min_group_frac)
        if not 0 <= frac < 1:
            raise InputError("min_group_frac must lie in [0, 1)")
        if self.max_iters < 1:
            raise InputError("max_iters must be positive")
        object.__setattr__(self, "min_group_frac", frac)
