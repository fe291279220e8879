import itertools
import re

import numpy as np
import pytest

from gcis.text_model import Text


def exhaustive_strings(alphabet=(1, 2, 3), max_len=10):
    """Every string over ``alphabet`` of length 0..max_len, shortest first."""
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def random_byte_strings(count, max_len, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(0, max_len + 1))
        # vary the alphabet so both repetitive and noisy strings show up
        sigma = int(rng.choice([2, 4, 16, 256]))
        yield rng.integers(0, sigma, n, dtype=np.uint8).tobytes()


def text_of(values, alphabet_size=None):
    """Text from a symbol tuple over {1..k}, sentinel appended."""
    syms = list(values) + [0]
    size = alphabet_size or (max(syms) + 1 if len(syms) > 1 else 1)
    return Text.from_symbols(syms, size)


@pytest.fixture
def banana():
    from gcis.text_model import from_bytes

    return from_bytes(b"banana")


_criteria = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = _criteria.get(key, "PASS")
        _criteria[key] = "PASS" if prev == "PASS" and report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        terminalreporter.write_line(f"criterion {key}: {_criteria[key]}")
