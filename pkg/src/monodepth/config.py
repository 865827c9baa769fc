"""Resource caps.

Caps can be overridden per call or globally through the ``MONODEPTH_CAPS``
environment variable, e.g. ``MONODEPTH_CAPS="lattice=50000,faces=100000"``.
"""
from __future__ import annotations

import dataclasses
import os

from .errors import PreconditionError

CAPS_ENV = "MONODEPTH_CAPS"


@dataclasses.dataclass(frozen=True)
class Caps:
    monomials: int = 200_000      # candidates in one intermediate generator set
    lattice: int = 100_000        # lcm-lattice size
    faces: int = 1 << 22          # faces of one simplicial complex
    bases: int = 5_000_000        # bases tried during vertex enumeration
    cliques: int = 100_000        # maximal cliques of one graph
    subgraphs: int = 12           # vertex budget for induced-subgraph searches

    @classmethod
    def parse(cls, text: str, base: "Caps | None" = None) -> "Caps":
        """Parse ``key=value`` pairs separated by commas on top of ``base``."""
        base = base or cls()
        fields = {f.name for f in dataclasses.fields(cls)}
        updates = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in fields:
                raise PreconditionError(f"unknown cap setting {item!r}")
            try:
                updates[key] = int(value.replace("_", ""))
            except ValueError:
                raise PreconditionError(f"cap {key} needs an integer, got {value!r}") from None
            if updates[key] < 1:
                raise PreconditionError(f"cap {key} must be positive")
        return dataclasses.replace(base, **updates)

    def as_dict(self) -> dict[str, int]:
        return dataclasses.asdict(self)


def default_caps() -> Caps:
    text = os.environ.get(CAPS_ENV, "")
    return Caps.parse(text) if text else Caps()


def resolve(caps: Caps | None) -> Caps:
    return default_caps() if caps is None else caps
