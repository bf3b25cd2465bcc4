import json
from pathlib import Path

import pytest

from gkwb.parser import parse_expr
from gkwb.presentations import presentation_A, presentation_An

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"

# criterion number -> (passed, description), filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def A():
    return presentation_A()


@pytest.fixture(scope="session")
def A2():
    return presentation_An(2)


@pytest.fixture(scope="session")
def A3():
    return presentation_An(3)


@pytest.fixture
def P(A):
    """Parse an expression over x, y, z (free, unreduced)."""
    return lambda text: parse_expr(text, A.gens)


@pytest.fixture
def NF(A):
    """Parse and reduce in A."""
    return lambda text: A.nf(parse_expr(text, A.gens))


@pytest.fixture(scope="session")
def validate():
    """validate(obj, "certificate") against docs/schemas/<name>.schema.json."""
    from jsonschema import Draft202012Validator
    from referencing import Registry, Resource

    docs = {f.name: json.loads(f.read_text()) for f in SCHEMAS.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(doc)) for name, doc in docs.items())

    def check(obj, name):
        Draft202012Validator(docs[f"{name}.schema.json"], registry=registry).validate(obj)

    return check


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, desc = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {desc}")
