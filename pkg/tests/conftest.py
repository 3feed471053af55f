from __future__ import annotations

import pytest

from reflective_jacobi.forms import build_form

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, str]] = {}

COMPOSITES = {
    "E4*E41 x thetaE8 / Delta": 195,
    "E41 x E41 x thetaE8 / Delta": 138,
    "E41 x thetaE8 x thetaE8 / Delta": 75,
}


@pytest.fixture(scope="session")
def composites():
    """The three weight-0 composites, built once at truncation 2."""
    return {text: build_form(text, 2) for text in COMPOSITES}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        verdict, title = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {verdict}  {title}")
