import os
from pathlib import Path

import pytest

#: criterion number -> (ok, description, detail), filled by the acceptance tests
ACCEPTANCE = {}


def report(number: int, description: str, ok: bool, detail: str = "") -> bool:
    ACCEPTANCE[number] = (ok, description, detail)
    print(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {description}  [{detail}]")
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, desc, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {desc}  [{detail}]")


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory) -> Path:
    env = os.environ.get("HURWITZ_CACHE")
    return Path(env) if env else tmp_path_factory.mktemp("group-cache")
