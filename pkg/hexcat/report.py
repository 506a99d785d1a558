__all__ = [
    "Check",
    "Section",
    "Report",
]


import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    """Class representing the outcome of a single named check."""

    name: str
    passed: bool
    detail: Optional[str] = None
    counterexample: Optional[str] = None

    def render(self) -> str:
        line = f"{'PASS' if self.passed else 'FAIL'} {self.name}"
        if self.detail or " | " in self.name:
            line += f" | {self.detail or ''}"
        if self.counterexample:
            line += f"\n  counterexample: {self.counterexample}"
        return line


@dataclass
class Section:
    title: str
    checks: List[Check] = field(default_factory=list)
    counts: Dict[str, int] = field(default_factory=dict)

    def check(
        self,
        name: str,
        passed: bool,
        detail: Optional[str] = None,
        counterexample: Optional[str] = None,
    ) -> Check:
        result = Check(name, bool(passed), detail, counterexample)
        self.checks.append(result)
        if not result.passed:
            logger.info("%s: %s failed.", self.title, name)
        return result

    def count(self, name: str, value: int):
        self.counts[name] = value

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def render(self) -> str:
        lines = [f"## {self.title}", ""]
        lines.extend(f"count {name} = {value}" for name, value in self.counts.items())
        lines.extend(check.render() for check in self.checks)
        return "\n".join(lines)


@dataclass
class Report:
    """Ordered sections of checks, rendered as deterministic text."""

    title: str
    sections: List[Section] = field(default_factory=list)

    def section(self, title: str) -> Section:
        logger.info("Report section %r.", title)
        self.sections.append(section := Section(title))
        return section

    @property
    def passed(self) -> bool:
        return all(section.passed for section in self.sections)

    def render(self) -> str:
        parts = [f"# {self.title}"]
        parts.extend(section.render() for section in self.sections)
        parts.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n\n".join(parts) + "\n"

    @classmethod
    def parse(cls, source: str) -> "Report":
        """Read a rendered report back."""
        report = cls("")
        section: Optional[Section] = None
        for line in source.splitlines():
            if line.startswith("## "):
                section = report.section(line[3:])
            elif line.startswith("# "):
                report.title = line[2:]
            elif section is None or not line or line.startswith("result: "):
                continue
            elif line.startswith("count "):
                name, _, value = line[6:].rpartition(" = ")
                section.count(name, int(value))
            elif line.startswith("  counterexample: ") and section.checks:
                last = section.checks.pop()
                section.checks.append(
                    Check(last.name, last.passed, last.detail, line[18:])
                )
            elif line.startswith(("PASS ", "FAIL ")):
                body = line[5:]
                name, separator, detail = body.rpartition(" | ")
                if not separator:
                    name, detail = body, ""
                section.checks.append(Check(name, line.startswith("PASS"), detail or None))
        return report
