from hexcat import Check, Report


def build_report() -> Report:
    report = Report("check demo")
    first = report.section("First")
    first.count("objects", 3)
    first.check("laws", True)
    first.check("terminal object", True, detail="2")
    second = report.section("Second")
    second.check("quotients", False, counterexample="(0, 0, id_0)")
    return report


def test_render():
    assert build_report().render() == (
        "# check demo\n"
        "\n"
        "## First\n"
        "\n"
        "count objects = 3\n"
        "PASS laws\n"
        "PASS terminal object | 2\n"
        "\n"
        "## Second\n"
        "\n"
        "FAIL quotients\n"
        "  counterexample: (0, 0, id_0)\n"
        "\n"
        "result: FAIL\n"
    )


def test_parse():
    report = build_report()
    assert Report.parse(report.render()) == report


def test_passed():
    report = build_report()
    assert report.sections[0].passed
    assert not report.sections[1].passed
    assert not report.passed
    assert Report("empty").passed


def test_check():
    assert Check("laws", True).render() == "PASS laws"
    assert Check("laws", False, "3 objects", "x").render() == (
        "FAIL laws | 3 objects\n  counterexample: x"
    )


def test_parse_separator_in_name():
    report = Report("names")
    section = report.section("Relations")
    section.check("(2, 4, a | b)", True, detail="3 objects")
    section.check("(2, 2, c | d)", False)
    parsed = Report.parse(report.render())
    assert parsed == report
    assert parsed.sections[0].checks[0].name == "(2, 4, a | b)"
    assert parsed.sections[0].checks[1].detail is None
