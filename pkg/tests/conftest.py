"""Acceptance reporting: one PASS/FAIL line per criterion at the end of the run."""

_results: dict[str, dict] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_ac" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1].split("[")[0]
    entry = _results.setdefault(name, {"ok": True, "notes": []})
    if report.failed:
        entry["ok"] = False
    for key, value in report.user_properties:
        if key == "note" and value not in entry["notes"]:
            entry["notes"].append(value)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_results):
        entry = _results[name]
        number = int(name[len("test_ac"):len("test_ac") + 2])
        label = name[len("test_ac") + 3:].replace("_", " ")
        line = f"AC{number:<3d}{'PASS' if entry['ok'] else 'FAIL'}  {label}"
        if entry["notes"]:
            line += "  [" + "; ".join(entry["notes"]) + "]"
        terminalreporter.write_line(line)
