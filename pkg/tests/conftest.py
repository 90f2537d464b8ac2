import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st
from referencing import Registry, Resource

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def rationals(max_denominator=24):
    return st.builds(
        lambda q, p: Fraction(p, q),
        st.integers(1, max_denominator),
        st.integers(-100, 100),
    )


def unit_rationals(max_denominator=24):
    """Rationals in [0, 1]."""
    return st.integers(1, max_denominator).flatmap(
        lambda q: st.integers(0, q).map(lambda p: Fraction(p, q))
    )


@pytest.fixture(scope="session")
def schemas():
    registry = Registry()
    loaded = {}
    for path in SCHEMA_DIR.glob("*.schema.json"):
        data = json.loads(path.read_text())
        loaded[path.name.removesuffix(".schema.json")] = data
        registry = registry.with_resource(data["$id"], Resource.from_contents(data))
    return loaded, registry


@pytest.fixture
def validate(schemas):
    from jsonschema import Draft202012Validator

    loaded, registry = schemas

    def check(name, instance):
        Draft202012Validator(loaded[name], registry=registry).validate(instance)

    return check


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[ACCEPTANCE_KEY]


def pytest_terminal_summary(terminalreporter, config):
    rows = sorted(config.stash.get(ACCEPTANCE_KEY, []))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, elapsed, limit in rows:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title} ({elapsed:.3f}s, limit {limit}s)")
