_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call":
        _ACCEPTANCE.extend(value for key, value in report.user_properties if key == "acceptance")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE, key=lambda text: int(text.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)
