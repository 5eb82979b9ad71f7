"""Validation reports: failed identities with their basis witnesses."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

from .linalg import Matrix, Vector, format_rational

Witness = Tuple[Tuple[str, int], ...]


def _render_vector(values: Sequence[Any]) -> str:
    return "(" + ", ".join(format_rational(v) for v in values) + ")"


@dataclass(frozen=True)
class Failure:
    """A single identity that failed on a tuple of basis elements.

    Witness indices are 0-based; rendering shows them 1-based.
    """

    tag: str
    witness: Witness
    lhs: Vector
    rhs: Vector
    scope: str = ""

    def witness_text(self) -> str:
        """Render the witness with 1-indexed basis labels."""
        return ", ".join(f"{role}=e{index + 1}" for role, index in self.witness)

    def render(self) -> str:
        """Render the failure as one report line."""
        prefix = f"{self.scope}:" if self.scope else ""
        return (
            f"[{prefix}{self.tag}] {self.witness_text()}: "
            f"lhs={_render_vector(self.lhs)} rhs={_render_vector(self.rhs)}"
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a JSON-compatible dictionary."""
        return {
            "tag": self.tag,
            "scope": self.scope,
            "witness": [[role, index + 1] for role, index in self.witness],
            "lhs": [format_rational(v) for v in self.lhs],
            "rhs": [format_rational(v) for v in self.rhs],
        }


@dataclass
class ValidationReport:
    """Failed identities of one validation run; no failures means valid."""

    subject: str
    failures: List[Failure] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.failures

    def add(
        self,
        tag: str,
        witness: Witness,
        lhs: Sequence[Any],
        rhs: Sequence[Any],
        scope: str = "",
    ) -> None:
        """Record a failure unconditionally."""
        self.failures.append(Failure(tag, witness, tuple(lhs), tuple(rhs), scope))

    def check(
        self,
        tag: str,
        witness: Witness,
        lhs: Sequence[Any],
        rhs: Sequence[Any],
        scope: str = "",
    ) -> bool:
        """Record a failure when the two sides differ.

        Returns:
            True when ``lhs == rhs``
        """
        if tuple(lhs) == tuple(rhs):
            return True
        self.add(tag, witness, lhs, rhs, scope)
        return False

    def check_maps(
        self,
        tag: str,
        witness: Witness,
        lhs: Matrix,
        rhs: Matrix,
        role: str = "v",
        scope: str = "",
    ) -> bool:
        """Record one failure per basis column on which two linear maps differ."""
        ok = True
        for j in range(lhs.cols):
            same = self.check(
                tag, witness + ((role, j),), lhs.column(j), rhs.column(j), scope
            )
            ok = ok and same
        return ok

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)

    def extend(self, other: "ValidationReport", scope: str = "") -> None:
        """Append another report's failures, optionally under a scope label."""
        for failure in other.failures:
            if scope:
                inner = f"{scope}.{failure.scope}" if failure.scope else scope
                failure = Failure(
                    failure.tag, failure.witness, failure.lhs, failure.rhs, inner
                )
            self.failures.append(failure)
        for text in other.notes:
            self.note(text)

    def tags(self) -> List[str]:
        """Sorted distinct axiom tags among the failures."""
        return sorted({failure.tag for failure in self.failures})

    def only(self, *tags: str) -> "ValidationReport":
        """Sub-report restricted to the given tags."""
        subset = ValidationReport(self.subject, notes=list(self.notes))
        subset.failures = [f for f in self.failures if f.tag in tags]
        return subset

    def render_text(self) -> str:
        """Render the report as plain text."""
        if self.is_valid:
            lines = [f"{self.subject}: valid"]
        else:
            lines = [f"{self.subject}: {len(self.failures)} failure(s)"]
            lines.extend(f"  {failure.render()}" for failure in self.failures)
        if self.notes:
            lines.append("notes:")
            lines.extend(f"  - {text}" for text in self.notes)
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a JSON-compatible dictionary."""
        return {
            "subject": self.subject,
            "valid": self.is_valid,
            "tags": self.tags(),
            "failures": [failure.to_dict() for failure in self.failures],
            "notes": list(self.notes),
        }
