import random

import pytest
from hypothesis import strategies as st

from unknotter.corpus import random_shadow
from unknotter.diagram import Resolution, ResolvedDiagram

_acceptance: list[tuple[str, str]] = []


def shadows(max_crossings: int = 6, vertices: int = 6):
    """Planar shadows of random closed polylines."""
    return st.integers(0, 2**32 - 1).map(lambda seed: random_shadow(random.Random(seed), max_crossings, vertices))


def resolved(max_crossings: int = 6, vertices: int = 6):
    @st.composite
    def build(draw):
        sh = draw(shadows(max_crossings, vertices))
        picks = draw(st.lists(st.booleans(), min_size=sh.crossing_count, max_size=sh.crossing_count))
        over = {lab: sh.positions(lab)[int(b)] for lab, b in zip(sh.labels, picks)}
        return ResolvedDiagram(sh, Resolution(over))

    return build()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.module.__name__.endswith("test_acceptance"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance.append((doc, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for doc, verdict in sorted(_acceptance):
        terminalreporter.write_line(f"{verdict}  {doc}")
