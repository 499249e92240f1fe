from __future__ import annotations

import shutil

import pytest

from lieck.catalog import DATA_DIR, load_catalog


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture()
def data_copy(tmp_path):
    """A throwaway copy of the packaged data files, safe to corrupt."""
    for f in sorted(DATA_DIR.glob("*.cat")):
        shutil.copy(f, tmp_path / f.name)
    return tmp_path
