import time
from itertools import combinations

import pytest

from posetlab import FieldSpec
from posetlab.audit import run_suite
from posetlab.generators import suite


@pytest.fixture(scope="session")
def field():
    return FieldSpec()


@pytest.fixture(scope="session")
def suite_posets():
    return suite()


@pytest.fixture(scope="session")
def suite_reports(field):
    """One audited pass over the whole suite, shared by the acceptance tests."""
    t0 = time.perf_counter()
    reports = run_suite(field)
    elapsed = time.perf_counter() - t0
    return reports, elapsed


def brute_force_chains(elements, lt):
    """All chains of a poset by subset enumeration; exponential, tiny inputs only."""
    elements = list(elements)
    chains = []
    for k in range(len(elements) + 1):
        for sub in combinations(elements, k):
            if all(lt(a, b) or lt(b, a) for a, b in combinations(sub, 2)):
                chains.append(frozenset(sub))
    return chains


def brute_force_reduced_euler(elements, lt):
    """Alternating chain count, straight from the definition."""
    total = 0
    for chain in brute_force_chains(elements, lt):
        total += (-1) ** ((len(chain) - 1) % 2)
    return total
