"""Re-emit acceptance verdicts after capture.

The acceptance tests print their `criterion NN <name> PASS|FAIL` lines while
running, but pytest's capture hides the passing ones.  This summary derives
the same lines from the recorded outcomes, so the verdict block appears at
the end of every run that touched the acceptance module, including tests
that errored before reaching their own print.
"""

import re

_CRITERION = re.compile(r"::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            match = _CRITERION.search(getattr(report, "nodeid", ""))
            if match is None:
                continue
            num = int(match.group(1))
            name = match.group(2).replace("_", "-")
            # passed only counts if no other phase of the test failed
            ok = outcome == "passed" and verdicts.get(num, (name, True))[1]
            verdicts[num] = (name, ok)
    if not verdicts:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(verdicts):
        name, ok = verdicts[num]
        terminalreporter.write_line(
            "criterion %02d %s %s" % (num, name, "PASS" if ok else "FAIL"))
