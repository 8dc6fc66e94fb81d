from pathlib import Path

import pytest

from semagg.taxonomy import Taxonomy, load_taxonomy

DATA = Path(__file__).parent / "data"

_CRITERIA: list = []


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion, then assert it."""

    def record(num: int, ok: bool, detail: str = ""):
        _CRITERIA.append((num, bool(ok), detail))
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, f"criterion {num} failed: {detail}"

    return record


def _load(name: str) -> Taxonomy:
    with open(DATA / name, encoding="utf-8") as fh:
        return load_taxonomy(fh)


@pytest.fixture(scope="session")
def flu_tax() -> Taxonomy:
    return _load("flu.tax")


@pytest.fixture(scope="session")
def health_tax() -> Taxonomy:
    return _load("health.tax")


@pytest.fixture(scope="session")
def sports_tax() -> Taxonomy:
    """The flu/pneumonia branch plus a sports branch hanging off the same root."""
    text = (DATA / "flu.tax").read_text(encoding="utf-8").splitlines()
    text += [
        "E\tact\tentity",
        "E\tactivity\tact",
        "E\tsport\tactivity",
        "E\tcontact_sport\tsport",
        "E\tfootball\tcontact_sport",
        "E\tsoccer\tfootball",
        "T\tsoccer\tsoccer",
        "T\tsport\tsport",
    ]
    return load_taxonomy(text)


@pytest.fixture(scope="session")
def flat_tax() -> Taxonomy:
    """Twenty isolated roots: distinct concepts are fully dissimilar."""
    ids = [f"r{i}" for i in range(20)]
    return Taxonomy.from_edges([], [(f"t{i}", c) for i, c in enumerate(ids)], ids)
