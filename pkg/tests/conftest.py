import os

import pytest

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                           "fixtures", "newforms")


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def all_records(fixture_dir):
    from partcong.lmfdb_client import import_fixture

    records = import_fixture(fixture_dir)
    by_weight = {}
    for rec in records:
        by_weight.setdefault(rec.weight, []).append(rec)
    return by_weight
