"""Unit systems.

All library numerics are written against the constants carried by a
:class:`UnitsConfig`.  The default is natural units (c = hbar = eps0 = 1,
lengths in meters), which keeps bilinear prefactors exactly 1 and is what
every test uses.  SI constants are only threaded in at the CLI boundary.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class UnitsConfig:
    mode: str
    c: float
    hbar: float
    eps0: float

    def __post_init__(self):
        if self.c <= 0 or self.hbar <= 0 or self.eps0 <= 0:
            raise ValueError("physical constants must be strictly positive")


NATURAL = UnitsConfig(mode="natural", c=1.0, hbar=1.0, eps0=1.0)

SI = UnitsConfig(
    mode="si",
    c=299_792_458.0,
    hbar=1.054_571_817e-34,
    eps0=8.854_187_8128e-12,
)


def units_for(mode: str) -> UnitsConfig:
    if mode == "natural":
        return NATURAL
    if mode == "si":
        return SI
    raise ValueError(f"unknown units mode {mode!r} (expected 'natural' or 'si')")
