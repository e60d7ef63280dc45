import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="also run the long cases (dimension-12 algebras, p = 6 and 7)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; pass --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


# acceptance bookkeeping: criterion -> list of (label, ok, stretch); ok None = not run
ACCEPTANCE: dict[int, list[tuple[str, bool, bool]]] = {}

TITLES = {
    1: "HS1 golden tables",
    2: "HS0 equals the commutator quotient",
    3: "polynomial layer sweep",
    4: "Sym Poincare polynomials, torsion-free",
    5: "chessboard complex equivalence and omega",
    6: "connectivity bound",
    7: "representation suite",
    8: "resolution stage exactness",
    9: "property suites",
    10: "cyclic comparison HC1 and gamma",
}


@pytest.fixture
def record():
    def _record(criterion, label, ok, stretch=False):
        ACCEPTANCE.setdefault(criterion, []).append((label, None if ok is None else bool(ok), stretch))
        return ok
    return _record


def _word(ok):
    return "not run" if ok is None else "PASS" if ok else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c, title in TITLES.items():
        rows = ACCEPTANCE.get(c, [])
        core = [r for r in rows if not r[2]]
        extra = [r for r in rows if r[2]]
        if not core:
            status = "NOT RUN"
        else:
            status = "PASS" if all(ok for _, ok, _ in core) else "FAIL"
        line = f"criterion {c:2d} {status:7s} {title} ({sum(ok for _, ok, _ in core)}/{len(core)} checks)"
        bad = [label for label, ok, _ in core if not ok]
        if bad:
            line += " failed: " + ", ".join(bad)
        if extra:
            line += "; stretch: " + ", ".join(
                f"{label} {_word(ok)}" for label, ok, _ in extra)
        tr.write_line(line)
