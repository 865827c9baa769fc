"""JSON result documents with deterministic serialization."""
from __future__ import annotations

import dataclasses
import enum
import json
from fractions import Fraction
from typing import Any

from .clutters import Clutter
from .graphs import Graph
from .ideals import Monomial, MonomialIdeal
from .linalg import FieldSpec


def jsonable(obj: Any) -> Any:
    """Convert library values into plain JSON types."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, Monomial):
        return str(obj)
    if isinstance(obj, MonomialIdeal):
        return [str(m) for m in obj.gens]
    if isinstance(obj, Clutter):
        return [list(e) for e in obj.edge_names()]
    if isinstance(obj, Graph):
        names = obj.context.names
        return [[names[a], names[b]] for a, b in obj.edges]
    if isinstance(obj, FieldSpec):
        return obj.characteristic
    if isinstance(obj, enum.Enum):
        return obj.value
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclasses.dataclass
class ResultDoc:
    command: str
    inputs: dict
    field: int
    outputs: dict
    notes: list[str] = dataclasses.field(default_factory=list)
    timing: float | None = None  # seconds; only filled in on request

    def to_dict(self) -> dict:
        d = {"command": self.command, "inputs": jsonable(self.inputs), "field": self.field,
             "outputs": jsonable(self.outputs), "notes": list(self.notes)}
        if self.timing is not None:
            d["timing"] = round(self.timing, 3)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"
