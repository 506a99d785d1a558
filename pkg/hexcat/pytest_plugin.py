# type: ignore


from pathlib import Path

from _pytest.assertion.util import assertrepr_compare

from hexcat import Report

try:
    from pytest_insta import Fmt
except ImportError:
    pass
else:

    class FmtReportText(Fmt[Report]):
        extension = ".report.txt"

        def load(self, path: Path) -> Report:
            return Report.parse(path.read_text())

        def dump(self, path: Path, value: Report):
            path.write_text(value.render())


def pytest_assertrepr_compare(config, op, left, right):
    if type(left) != type(right) or op != "==":
        return

    explanation = []

    if isinstance(left, Report):
        titles = [section.title for section in left.sections]
        if titles != [section.title for section in right.sections]:
            explanation += ["", "Differing sections:"]
            explanation += generate_explanation(
                config, titles, [section.title for section in right.sections]
            )
        for first, second in zip(left.sections, right.sections):
            if first != second:
                explanation += ["", f"Differing section {first.title!r}:"]
                explanation += generate_explanation(config, first.checks, second.checks)

    if explanation:
        return [assertrepr_compare(config, op, left, right)[0]] + explanation


def generate_explanation(config, left, right):
    summary, *explanation = config.hook.pytest_assertrepr_compare(
        config=config, op="==", left=left, right=right
    )[0]

    yield f"  assert " + summary
    for line in explanation:
        yield "  " + line
