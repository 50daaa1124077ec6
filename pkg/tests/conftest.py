import pytest

# criterion id -> list of (ok, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def pytest_addoption(parser):
    parser.addoption("--deep", action="store_true", default=False,
                     help="also run the long n = 30 root check")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--deep"):
        return
    skip = pytest.mark.skip(reason="needs --deep")
    for item in items:
        if "deep" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def record():
    def _record(criterion: int, ok: bool, detail: str) -> None:
        ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[k]
        ok = all(c[0] for c in checks)
        failed = [d for good, d in checks if not good]
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({len(checks)} checks)"
        if failed:
            line += " | failing: " + "; ".join(failed)
        tr.write_line(line)
