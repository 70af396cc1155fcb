import time

import pytest

from bluefive.lemmata import Options, verify_all


@pytest.fixture(scope="session")
def full_run():
    """One certified verification run shared across the suite."""
    t0 = time.perf_counter()
    run = verify_all(Options(emit_certificates=True))
    elapsed = time.perf_counter() - t0
    return run, elapsed
