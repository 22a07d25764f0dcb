import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sylowtree import sylow
from sylowtree.engine import GroupTable, closure


@pytest.fixture(scope="session")
def group_table_3() -> GroupTable:
    return closure(sylow.s_beta(3))


@pytest.fixture(scope="session")
def group_table_4() -> GroupTable:
    return closure(sylow.s_beta(4))
