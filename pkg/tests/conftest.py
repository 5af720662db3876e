from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from projflat.connection import canonical_connection
from projflat.lie import build_algebra

# Fixed example generation so every run exercises the same instances.
settings.register_profile("det", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("det")

small_fracs = st.fractions(min_value=-6, max_value=6, max_denominator=5)
nonzero_fracs = small_fracs.filter(bool)


@pytest.fixture(scope="session")
def canon():
    """Cached canonical connections keyed by (field, n)."""
    cache = {}

    def get(field, n):
        if (field, n) not in cache:
            cache[(field, n)] = canonical_connection(build_algebra(field, n))
        return cache[(field, n)]

    return get


def frac_list(xs):
    return [Fraction(x) for x in xs]
