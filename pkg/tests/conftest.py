import numpy as np
import pytest

from kgedas import ingest

_CRITERIA = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "_criterion", None)
    if marker is not None:
        _CRITERIA.append((marker, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report._criterion = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (cid, text), outcome in _CRITERIA:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {cid}: {text}")


@pytest.fixture(scope="session")
def relation_matrix():
    return ingest.load_fixture_matrix("relation_prediction")


@pytest.fixture(scope="session")
def tail_matrix():
    return ingest.load_fixture_matrix("tail_prediction")


@pytest.fixture(scope="session")
def ablation_matrix():
    return ingest.load_fixture_matrix("ablation")


def published(name, dataset="EDAS"):
    """{model: {metric: value}} from a bundled published-results fixture."""
    out = {}
    for r in ingest.load_fixture(name):
        if r.dataset == dataset:
            out.setdefault(r.model, {})[r.metric] = r.value
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
