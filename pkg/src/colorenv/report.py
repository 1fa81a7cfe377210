"""Deterministic pass/fail reports produced by identity checkers.

A checker walks a finite set of test instances (usually tuples of basis
elements), counts how many it evaluated and how many it had to skip
(e.g. for degree-budget reasons), and records every instance where the
two sides of the identity under test disagree.  Only the first few
violations are kept verbatim; the total count is always exact.

All serialization is deterministic: dictionaries are emitted with sorted
keys and vector values as name-sorted lists of (term, scalar literal).
"""

from __future__ import annotations

from .scalars import format_scalar

MAX_RECORDED_VIOLATIONS = 10


def vector_terms(v) -> tuple[tuple[str, str], ...]:
    """Serialize a GradedVector as ((basis name, scalar literal), ...)."""
    return tuple(
        (v.basis.name(i), format_scalar(c)) for i, c in v.items_sorted()
    )


def term_list(pairs) -> tuple[tuple[str, str], ...]:
    """Serialize an iterable of (label, CycScalar) pairs, sorted by label."""
    return tuple((label, format_scalar(c)) for label, c in sorted(pairs))


class CheckReport:
    """Accumulator for one identity check over a finite instance set."""

    __slots__ = ("name", "params", "tested", "skipped", "violated", "violations")

    def __init__(self, name: str, params: dict | None = None) -> None:
        self.name = name
        self.params = dict(params or {})
        self.tested = 0
        self.skipped = 0
        self.violated = 0
        self.violations: list[dict] = []

    def tick(self) -> None:
        self.tested += 1

    def skip(self, n: int = 1) -> None:
        self.skipped += n

    def violation(self, where, lhs, rhs) -> None:
        """Record one failing instance.

        where: tuple of labels identifying the instance (basis names).
        lhs, rhs: the two sides, as ((label, literal), ...) tuples —
        use vector_terms / term_list to build them.
        """
        self.violated += 1
        if len(self.violations) < MAX_RECORDED_VIOLATIONS:
            self.violations.append(
                {"where": tuple(where), "lhs": tuple(lhs), "rhs": tuple(rhs)}
            )

    @property
    def passed(self) -> bool:
        return self.violated == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "passed": self.passed,
            "tested": self.tested,
            "skipped": self.skipped,
            "violated": self.violated,
            "violations": [
                {
                    "where": list(v["where"]),
                    "lhs": [list(t) for t in v["lhs"]],
                    "rhs": [list(t) for t in v["rhs"]],
                }
                for v in self.violations
            ],
        }

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = [f"{k}={self.params[k]}" for k in sorted(self.params)]
        head = f"check {self.name}"
        if parts:
            head += " (" + ", ".join(parts) + ")"
        lines = [
            f"{head}: {status} "
            f"[tested={self.tested}, skipped={self.skipped}, violated={self.violated}]"
        ]
        for v in self.violations:
            lines.append("  at (" + ", ".join(v["where"]) + "):")
            lines.append("    lhs = " + _side_text(v["lhs"]))
            lines.append("    rhs = " + _side_text(v["rhs"]))
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"CheckReport({self.name!r}, passed={self.passed})"


def _side_text(pairs) -> str:
    if not pairs:
        return "0"
    return " + ".join(f"({lit})*{label}" for label, lit in pairs)
