"""
Machine-readable command output: OutputRecord JSON and the invariant table.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import jsonschema

from .arith import smallest_prime_divisor
from .errors import InvalidInputError, ParseError
from .polyfun import psi
from .smarandache import basis_spec, s

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).resolve().parents[2] / "config" / "output_record_schema.json"

RECORD_KEYS = ("command", "input", "result", "provenance")

TABLE_COLUMNS = {
    "s": (lambda n: str(s(n)), "s(n) = min{k : n | k!}"),
    "psi": (lambda n: psi(n).to_decimal(), "prod gcd(n, beta_k!)^(beta_k - beta_{k-1})"),
    "q": (lambda n: str(smallest_prime_divisor(n)), "smallest prime divisor"),
    "t": (lambda n: str(basis_spec(n).t), "number of basic null-polynomials"),
}


@dataclass(frozen=True)
class OutputRecord:
    command: str
    input: str
    result: Union[str, List[str]]
    provenance: str

    def to_dict(self) -> Dict[str, Any]:
        result = list(self.result) if isinstance(self.result, (list, tuple)) else self.result
        return {"command": self.command, "input": self.input, "result": result, "provenance": self.provenance}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "OutputRecord":
        missing = [key for key in RECORD_KEYS if key not in data]
        if missing:
            raise ParseError(f"output record is missing {missing}")
        result = data["result"]
        return cls(
            command=data["command"],
            input=data["input"],
            result=list(result) if isinstance(result, list) else result,
            provenance=data["provenance"],
        )


def _load_schema() -> Dict[str, Any]:
    with open(SCHEMA_PATH, "r") as f:
        return json.load(f)


def validate_records(payload: Any) -> None:
    """Validate decoded JSON against the output record schema"""
    try:
        jsonschema.validate(payload, _load_schema())
    except jsonschema.ValidationError as e:
        raise ParseError(f"output records do not match the schema: {e.message}")


def records_to_json(records: Sequence[OutputRecord]) -> str:
    payload = [r.to_dict() for r in records]
    validate_records(payload)
    return json.dumps(payload, indent=2, ensure_ascii=False)


def records_from_json(text: str) -> List[OutputRecord]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}")
    validate_records(payload)
    return [OutputRecord.from_dict(item) for item in payload]


def parse_range(text: str) -> range:
    """'a..b' (inclusive) -> range(a, b + 1)"""
    try:
        low, high = (int(part) for part in text.split("..", 1))
    except ValueError:
        raise InvalidInputError(f"bad range {text!r}, expected 'a..b'")
    if low < 2 or high < low:
        raise InvalidInputError(f"range {text!r} must satisfy 2 <= a <= b")
    return range(low, high + 1)


def parse_columns(text: str) -> List[str]:
    columns = [c.strip() for c in text.split(",") if c.strip()]
    unknown = [c for c in columns if c not in TABLE_COLUMNS]
    if unknown or not columns:
        raise InvalidInputError(f"unknown table columns {unknown}; choose from {sorted(TABLE_COLUMNS)}")
    return columns


def table_rows(moduli: range, columns: Sequence[str]) -> List[List[str]]:
    return [[str(n)] + [TABLE_COLUMNS[c][0](n) for c in columns] for n in moduli]


def table_csv(moduli: range, columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", *columns])
    writer.writerows(table_rows(moduli, columns))
    return buffer.getvalue()


def table_records(moduli: range, columns: Sequence[str]) -> List[OutputRecord]:
    """One record per modulus, result values in column order"""
    provenance = "; ".join(f"{c}: {TABLE_COLUMNS[c][1]}" for c in columns)
    return [
        OutputRecord(command="table", input=f"n={row[0]} columns={','.join(columns)}",
                     result=row[1:], provenance=provenance)
        for row in table_rows(moduli, columns)
    ]
