"""Machine-readable check reports shared by the verifiers and the CLI.

A report is a list of per-check records with one of four statuses.
Serialization is deterministic: same inputs and seed give byte-identical
JSON.
"""

import json

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
WINDOW_LIMITED = "window-limited"


class Report:
    schema = 1

    def __init__(self, command="", window="", seed=None):
        self.command = command
        self.window = window
        self.seed = seed
        self.checks = []

    def add(self, check_id, status, witness=None):
        self.checks.append({"id": check_id, "status": status, "witness": witness})
        return self

    def check(self, check_id, ok, witness=None):
        self.add(check_id, PASS if ok else FAIL, witness)
        return ok

    def merge(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(
                {"id": prefix + c["id"], "status": c["status"], "witness": c["witness"]}
            )
        return self

    @property
    def n_fail(self):
        return sum(1 for c in self.checks if c["status"] == FAIL)

    @property
    def n_inconclusive(self):
        return sum(1 for c in self.checks if c["status"] in (INCONCLUSIVE, WINDOW_LIMITED))

    def passed(self):
        return self.n_fail == 0 and self.n_inconclusive == 0

    def exit_code(self):
        if self.n_fail:
            return 1
        if self.n_inconclusive:
            return 3
        return 0

    def to_dict(self):
        return {
            "schema": self.schema,
            "command": self.command,
            "window": self.window,
            "seed": self.seed,
            "checks": self.checks,
            "summary": {
                "total": len(self.checks),
                "fail": self.n_fail,
                "inconclusive": self.n_inconclusive,
            },
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def to_table(self):
        lines = []
        width = max((len(str(c["id"])) for c in self.checks), default=10)
        for c in self.checks:
            w = "" if c["witness"] is None else f"  {c['witness']}"
            lines.append(f"{str(c['id']).ljust(width)}  {c['status']}{w}")
        lines.append(
            f"-- {len(self.checks)} checks, {self.n_fail} fail, {self.n_inconclusive} inconclusive"
        )
        return "\n".join(lines)

    def __repr__(self):
        return f"Report({len(self.checks)} checks, {self.n_fail} fail)"
