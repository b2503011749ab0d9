def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import figure_report

    if not figure_report.LINES:
        return
    terminalreporter.section("figure criteria")
    for line in figure_report.LINES:
        terminalreporter.write_line(line)
