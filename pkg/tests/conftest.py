import pytest

from gkflow.generate import generate_instances
from gkflow.poset import Labeling, transitive_closure, validate_instance

EX_COVERS = [("a", "b"), ("b", "d"), ("c", "d"), ("d", "e")]
EX_H = {"a": 1, "b": 3, "c": 5, "d": 4, "e": 2}
EX_CP = [("a", "e"), ("a", "b"), ("a", "d"), ("e", "b"), ("e", "d"), ("b", "d"), ("a", "c")]

ACCEPTANCE_RESULTS: list[tuple[int, str, bool]] = []


def make_example():
    poset = transitive_closure(EX_COVERS, "abcde")
    return validate_instance(poset, Labeling.from_mapping(EX_H), EX_CP)


@pytest.fixture
def example():
    return make_example()


def corpus(max_n=6, per_size=40, seed=2024):
    """Seeded instances of every size 1..max_n, compatibility families rotating."""
    out = []
    for n in range(1, max_n + 1):
        out.extend(generate_instances(n, seed + n, per_size))
    return out


@pytest.fixture(scope="session")
def small_corpus():
    return corpus(max_n=5, per_size=12, seed=7)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, ok in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {name}")
