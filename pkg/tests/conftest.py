import contextlib
import sys

import pytest


@pytest.fixture
def criterion(capfd):
    """Reporter for the acceptance gate: prints one uncaptured pass/fail line.

    Wrap each contract check in ``with criterion("name"):`` and the verdict
    lands on the real stderr whatever capture mode pytest runs under.
    """

    @contextlib.contextmanager
    def _criterion(name: str):
        ok = False
        try:
            yield
            ok = True
        finally:
            with capfd.disabled():
                print(f"[{'PASS' if ok else 'FAIL'}] {name}", file=sys.stderr, flush=True)

    return _criterion
