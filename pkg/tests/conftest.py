import contextlib
import io

import pytest

from locq import cli


@pytest.fixture
def run_cli():
    """Invoke the CLI in-process, returning (exit_code, stdout_text)."""

    def run(argv):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = cli.main(argv)
        return code, buf.getvalue()

    return run
