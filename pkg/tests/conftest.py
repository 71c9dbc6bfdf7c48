from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conceptwiki import IntermediateDoc, Store, apply_import, parse_flat_file, plan_import
from conceptwiki.model import Source

DATA_DIR = Path(__file__).parent / "data"
SAMPLE_DAT = DATA_DIR / "enzyme_sample.dat"

RELEASE = "2026-08"
ENZYME = Source.authority("ENZYME", RELEASE)


@pytest.fixture
def store(tmp_path) -> Store:
    root = tmp_path / "store"
    root.mkdir()
    s = Store(root)
    yield s
    s.close()


@pytest.fixture
def sample_doc() -> IntermediateDoc:
    result = parse_flat_file(SAMPLE_DAT)
    assert not result.errors
    return IntermediateDoc(release=RELEASE, records=result.records)


@pytest.fixture
def imported(store, sample_doc) -> Store:
    apply_import(store, plan_import(store, sample_doc, ENZYME))
    return store


def run_import(store: Store, doc: IntermediateDoc, authority: Source = ENZYME):
    return apply_import(store, plan_import(store, doc, authority))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Print one PASS/FAIL line per acceptance criterion, straight to the terminal."""
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    labels = getattr(getattr(item, "module", None), "ACCEPTANCE_LABELS", None)
    if not labels:
        return
    label = labels.get(getattr(item, "originalname", item.name))
    if label is None:
        return
    reporter = item.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is None:
        return
    status = "PASS" if report.passed else "FAIL"
    reporter.write_line(f"{status} {label} [{report.duration:.2f}s]")
