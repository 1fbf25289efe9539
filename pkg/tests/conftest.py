def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance verdicts, one line per criterion."""
    lines = {}
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            for name, value in getattr(rep, "user_properties", ()):
                if name == "acceptance":
                    lines[value[0]] = value[1]
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
