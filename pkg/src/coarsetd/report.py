"""Machine-readable run reports.

A report is a flat JSON document: operation name, input digests, measured
constants, claimed bounds (each citing its defining formula by name), and a
pass/fail entry per checked invariant. CLI subcommands that write a report
exit nonzero exactly when some check failed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field


def digest(data):
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


@dataclass
class Report:
    operation: str
    inputs: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)
    measured: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    top_level: dict = field(default_factory=dict)

    def add_bound(self, name, formula, value):
        self.bounds[name] = {"formula": formula, "value": value}

    @property
    def ok(self):
        return all(self.checks.values())

    def to_dict(self):
        out = dict(self.top_level)
        out.update(
            {
                "operation": self.operation,
                "inputs": self.inputs,
                "parameters": self.parameters,
                "measured": self.measured,
                "bounds": self.bounds,
                "checks": self.checks,
                "ok": self.ok,
            }
        )
        if self.details:
            out["details"] = self.details
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
