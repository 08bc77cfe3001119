import pytest

from nilfilt.catalog import parse_group_spec


@pytest.fixture(scope="session")
def groups():
    """Shared cache of catalog groups used across test modules."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = parse_group_spec(name)
        return cache[name]

    return get
