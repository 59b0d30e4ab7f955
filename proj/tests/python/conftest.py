import os
import pathlib
import shutil

import pytest


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("NETDIFF_CLI") or shutil.which("netdiff")
    if not path:
        pytest.skip("netdiff executable not available")
    return pathlib.Path(path)
