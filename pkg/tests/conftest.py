from pathlib import Path

import pytest

from convagent import resolve_pack

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def table1_source() -> str:
    return (FIXTURES / "table1.fscript").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def table3_source() -> str:
    return (FIXTURES / "table3.fscript").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def pack():
    return resolve_pack("academic_regulation")


@pytest.fixture(scope="session")
def misordered_pack():
    return resolve_pack("academic_regulation_misordered")
