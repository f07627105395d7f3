from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CORPUS_SEED = 20261016
CORPUS_SIZE = 200

_criteria: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def corpus():
    from mirrorskel.generators import random_corpus

    return random_corpus(CORPUS_SIZE, seed=CORPUS_SEED)


@pytest.fixture(scope="session")
def corpus_duals(corpus):
    from mirrorskel.lattice import dual_tropical_graph

    return [dual_tropical_graph(t) for t in corpus]


@pytest.fixture
def criterion():
    """Record the verdict of an acceptance criterion for the summary."""

    def record(number: int, ok: bool, detail: str = "") -> None:
        _criteria[number] = (bool(ok), detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, detail = _criteria[n]
        tr.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else ""))
