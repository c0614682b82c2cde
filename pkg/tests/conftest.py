import time

import pytest

from lattice_mgn import cli
from lattice_mgn.pipeline import CACHE_ENV, ValueStore


@pytest.fixture(scope="session")
def fitted_cache(tmp_path_factory):
    """Run ``fit --max-level 5`` once; yields (cache path, seconds taken)."""
    path = tmp_path_factory.mktemp("cache") / "store.json"
    start = time.perf_counter()
    assert cli.main(["fit", "--max-level", "5", "--cache", str(path)]) == 0
    return path, time.perf_counter() - start


@pytest.fixture(scope="session")
def store(fitted_cache):
    loaded = ValueStore.load(fitted_cache[0])
    assert loaded is not None and loaded.max_level == 5
    return loaded


@pytest.fixture
def warm_env(fitted_cache, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(fitted_cache[0]))
    return fitted_cache[0]
