import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, TextIO

SIGNIFICANT_DIGITS = 17


class OutputKind(str, Enum):
    SCHEDULE = "schedule"
    COST = "cost"
    DISTRIBUTION = "distribution"
    SIMULATION = "simulation"
    COMPARISON = "comparison"


# CSV layout per kind; every payload carries its table under "rows"
CSV_COLUMNS: Dict[OutputKind, List[str]] = {
    OutputKind.SCHEDULE: ["stage", "size", "p", "expected_trials", "cumulative_expected"],
    OutputKind.COST: ["stage", "size", "p", "expected_trials", "cumulative_expected"],
    OutputKind.DISTRIBUTION: ["x", "negbin_pmf", "convolution_pmf"],
    OutputKind.SIMULATION: ["x", "count", "negbin_pmf"],
    OutputKind.COMPARISON: ["method", "stage", "size", "cumulative_expected"],
}


def format_number(value: float) -> str:
    """Render a float with 17 significant digits, which round-trips exactly."""
    if not math.isfinite(value):
        raise ValueError(f"cannot render non-finite number {value}")
    return format(value, f".{SIGNIFICANT_DIGITS}g")


def render_json(value: Any) -> str:
    """Serialize plain data to JSON with every float at 17 significant digits."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, dict):
        items = (f"{json.dumps(str(key))}: {render_json(item)}" for key, item in value.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(render_json(item) for item in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__} to JSON")


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format_number(value)
    return str(value)


@dataclass
class OutputRecord:
    """One command result: a kind tag plus plain key-value payload."""

    kind: OutputKind
    payload: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        return render_json({"kind": self.kind.value, "payload": self.payload})

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        data = json.loads(text)
        return cls(kind=OutputKind(data["kind"]), payload=data["payload"])

    def write_csv(self, stream: TextIO) -> None:
        """Write the payload's row table with a header line."""
        columns = CSV_COLUMNS[self.kind]
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in self.payload.get("rows", []):
            writer.writerow([_csv_cell(row.get(column)) for column in columns])

    def to_csv(self) -> str:
        buffer = io.StringIO()
        self.write_csv(buffer)
        return buffer.getvalue()
