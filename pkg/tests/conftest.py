import pytest

from tessel.params import TilingParams

# parameter pairs exercised across the suite (q=4, p>=5 is unsupported and handled separately)
MATRIX = [(4, 4), (6, 3), (3, 6), (4, 5), (5, 5), (4, 6), (3, 7), (7, 3), (3, 8), (8, 3), (4, 7), (3, 9)]


@pytest.fixture(params=MATRIX, ids=lambda pq: f"p{pq[0]}q{pq[1]}")
def params(request):
    return TilingParams(*request.param)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
