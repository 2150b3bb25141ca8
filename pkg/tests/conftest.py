import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion, printed after the run."""
    mod = None
    for name in ("tests.test_acceptance", "test_acceptance"):
        if name in sys.modules:
            mod = sys.modules[name]
            break
    results = getattr(mod, "RESULTS", None) if mod else None
    if not results:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria")
    for n in sorted(results):
        ok, label = results[n]
        terminalreporter.write_line(
            "[acceptance] criterion %2d (%s): %s" % (n, label, "PASS" if ok else "FAIL"))
