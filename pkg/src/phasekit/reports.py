"""Machine-readable check entries and the aggregate verification report."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckEntry:
    """One verified identity: name, worst residual, pass flag.

    ``interior``/``shell`` carry the residual split for checks run on a
    finite window whose boundary shell is allowed to deviate; they are
    None for checks without a meaningful split.
    """

    name: str
    max_residual: float
    passed: bool
    interior: float | None = None
    shell: float | None = None

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "max_residual": self.max_residual,
            "pass": self.passed,
        }
        if self.interior is not None or self.shell is not None:
            d["interior"] = self.interior
            d["shell"] = self.shell
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CheckEntry":
        return cls(
            name=d["name"],
            max_residual=d["max_residual"],
            passed=d["pass"],
            interior=d.get("interior"),
            shell=d.get("shell"),
        )


@dataclass
class VerificationReport:
    """Ordered collection of check entries; overall = all passed."""

    entries: list[CheckEntry] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(e.passed for e in self.entries)

    def extend(self, entries):
        self.entries.extend(entries)

    def worst(self) -> float:
        return max((e.max_residual for e in self.entries), default=0.0)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "entries": [e.to_dict() for e in self.entries],
            "overall": self.overall,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            entries=[CheckEntry.from_dict(e) for e in d["entries"]],
            config=dict(d.get("config", {})),
        )
