"""Machine-readable verification reports (deterministic JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class Record:
    name: str
    claim: str
    passed: bool
    data: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {"name": self.name, "claim": self.claim, "verdict": self.verdict, "data": jsonable(self.data)}


class Report:
    """Command echo, input digests, ordered check records and an overall status."""

    def __init__(self, command: str, args: dict | None = None, inputs: dict | None = None):
        self.command = command
        self.args = dict(args or {})
        self.inputs = dict(inputs or {})
        self.records: list[Record] = []

    def add(self, name: str, claim: str, passed: bool, data: dict | None = None) -> Record:
        rec = Record(name, claim, bool(passed), jsonable(data or {}))
        self.records.append(rec)
        return rec

    def extend(self, records):
        for r in records:
            self.records.append(r)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def failures(self) -> list[Record]:
        return [r for r in self.records if not r.passed]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "args": jsonable(self.args),
            "inputs": self.inputs,
            "records": [r.to_dict() for r in self.records],
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def jsonable(x):
    """Plain JSON values: Fractions become strings, tuples/sets become lists,
    objects with ``to_dict`` are expanded."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=repr)
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    return str(x)
