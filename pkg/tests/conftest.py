from fractions import Fraction
from pathlib import Path

import pytest

DATA = Path(__file__).resolve().parents[1] / "src" / "qce" / "data"

# Nordic reference rows (MO, PO, SG), two decimals as in the fixture CSV.
NORDIC_ROWS = {
    "DNK": ("8.39", "7.01", "4.77"),
    "FIN": ("7.69", "6.92", "5.17"),
    "ISL": ("7.79", "7.65", "6.35"),
    "NOR": ("7.50", "6.80", "5.43"),
    "SWE": ("7.78", "7.94", "4.67"),
}
SCANDINAVIAN = ("7.83", "7.26", "5.28")


def exact(values):
    return tuple(Fraction(str(v)) for v in values)


def oracle_fixed(x, b, ranges=(10, 10, 10), weights=(1, 1, 1)):
    """Exact-rational 1 - sum(w|x-b|)/sum(w*range)."""
    x, b, r, w = exact(x), exact(b), exact(ranges), exact(weights)
    num = sum(wi * abs(xi - bi) for wi, xi, bi in zip(w, x, b))
    return 1 - num / sum(wi * ri for wi, ri in zip(w, r))


def oracle_relative(x, b, bounds=((0, 10),) * 3, weights=(1, 1, 1)):
    x, b, w = exact(x), exact(b), exact(weights)
    total = sum(w)
    acc = Fraction(0)
    for xi, bi, wi, (lo, hi) in zip(x, b, w, bounds):
        reach = max(bi - Fraction(str(lo)), Fraction(str(hi)) - bi)
        acc += (wi / total) * abs(xi - bi) / reach
    return 1 - acc


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def nordic_rows():
    return {k: tuple(float(v) for v in vals) for k, vals in NORDIC_ROWS.items()}


# -- acceptance summary -------------------------------------------------------
# Tests marked ``acceptance(n, title)`` get one PASS/FAIL/SKIP line each at the
# end of the session.

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, title): numbered acceptance criterion")


def pytest_runtest_logreport(report):
    mark = _ACCEPTANCE.get(report.nodeid)
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        verdict = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        mark["verdict"] = verdict
        if report.outcome == "failed":
            mark["detail"] = str(report.longrepr.reprcrash.message).splitlines()[0] if hasattr(
                report.longrepr, "reprcrash") else ""
        elif report.outcome == "skipped":
            mark["detail"] = report.longrepr[2] if isinstance(report.longrepr, tuple) else ""


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            _ACCEPTANCE[item.nodeid] = {"n": m.args[0], "title": m.args[1], "verdict": None, "detail": ""}


def pytest_terminal_summary(terminalreporter):
    ran = [m for m in _ACCEPTANCE.values() if m["verdict"]]
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for m in sorted(ran, key=lambda m: m["n"]):
        line = f"criterion {m['n']} {m['verdict']}: {m['title']}"
        if m["detail"]:
            line += f" ({m['detail']})"
        terminalreporter.write_line(line)
