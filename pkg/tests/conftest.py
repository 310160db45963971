import multiprocessing

import pytest

from fricke7.sweep import hasse_sweep, nakaya_sweep, primes_in

JOBS = min(8, multiprocessing.cpu_count())


@pytest.fixture(scope="session")
def jobs() -> int:
    return JOBS


@pytest.fixture(scope="session")
def reports_1000():
    """Full factor-count reports (all of N1, N2, N3, N6) for 5 <= l < 1000."""
    primes = [p for p in primes_in(5, 999) if p != 7]
    rows = hasse_sweep(primes, jobs=JOBS, with_histogram=False)
    return {row.p: row.report for row in rows}


@pytest.fixture(scope="session")
def nakaya_rows_1000():
    """Nakaya reports for 5 <= p < 1000 (oracle comparison runs for p <= 300)."""
    primes = [p for p in primes_in(5, 999) if p != 7]
    return {row.p: row for row in nakaya_sweep(primes, jobs=JOBS)}
