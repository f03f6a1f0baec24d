import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Replay the per-criterion acceptance verdicts after the run.

    Passing tests have their stdout captured, so the ACCEPTANCE lines
    would otherwise only be visible under -s; the terminal summary is
    never captured.
    """
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "VERDICT_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
