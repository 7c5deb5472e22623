"""Session fixtures shared by the test modules.

The full-length census is expensive (minutes), so it is built exactly
once per session, through the command line entry point, and every test
that needs it reads the resulting databases.
"""

import contextlib
import io
from pathlib import Path
from types import SimpleNamespace

import pytest

from sdac9.classify import read_db
from sdac9.cli import main as cli_main

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def census8(tmp_path_factory):
    """Census of every class up to length 8, built by `sdac9 classify`.

    Returns a namespace with the database directory, the captured
    summary text, and the classes per length as read back from disk.
    """
    db_dir = tmp_path_factory.mktemp("census8")
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = cli_main(["classify", "--n", "8", "--out", str(db_dir)])
    assert rc == 0
    classes = {}
    for n in range(1, 9):
        got_n, cls = read_db(db_dir / f"n{n}.sdac9")
        assert got_n == n
        classes[n] = cls
    return SimpleNamespace(dir=db_dir, summary=buf.getvalue(), classes=classes)


@pytest.fixture(scope="session")
def census5():
    """In-process census up to length 5; cheap enough to build directly."""
    from sdac9.classify import classify_range

    return classify_range(5)


@pytest.fixture(scope="session")
def data_dir():
    return DATA
