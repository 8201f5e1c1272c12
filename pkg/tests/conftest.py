import pytest

from topoqd.groups import builtin_group

ZOO = ["Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8", "A4", "S4", "A5"]
ZOO_NO_A5 = ZOO[:-1]


@pytest.fixture(scope="session")
def zoo():
    return {name: builtin_group(name) for name in ZOO}
