import pytest

from normint import groups as G


@pytest.fixture(scope="session")
def s3():
    return G.group_from_permutations(["(1 2)", "(1 2 3)"])


@pytest.fixture(scope="session")
def s4():
    return G.group_from_permutations(["(1 2)", "(1 2 3 4)"])


@pytest.fixture(scope="session")
def s5():
    return G.group_from_permutations(["(1 2)", "(1 2 3 4 5)"])


@pytest.fixture(scope="session")
def c2():
    return G.group_from_permutations(["(1 2)"])


@pytest.fixture(scope="session")
def c4():
    return G.group_from_permutations(["(1 2 3 4)"])


@pytest.fixture(scope="session")
def v4():
    return G.group_from_permutations(["(1 2)", "(3 4)"])


@pytest.fixture(scope="session")
def d4():
    return G.group_from_permutations(["(1 2 3 4)", "(1 3)"])


@pytest.fixture(scope="session")
def q8():
    return G.group_from_permutations(["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"])


@pytest.fixture(scope="session")
def a4():
    return G.group_from_permutations(["(1 2 3)", "(2 3 4)"])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    lines = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1].split("[")[0]
            ok = status == "passed"
            lines.setdefault(name, True)
            lines[name] = lines[name] and ok
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(lines):
        verdict = "PASS" if lines[name] else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
