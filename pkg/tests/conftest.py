"""Shared structure fixtures.

Construction runs each structure's axiom self-test, so the fixtures are
session-scoped to pay that cost once.
"""

import pytest

from dendralg import (
    free_structure, max_structure, mr_structure, rb_polymat_structure,
    rb_seqmat_structure, shuffle_structure,
)


@pytest.fixture(scope="session")
def shuffle():
    return shuffle_structure()


@pytest.fixture(scope="session")
def maxs():
    return max_structure()


@pytest.fixture(scope="session")
def mr():
    return mr_structure()


@pytest.fixture(scope="session")
def free():
    return free_structure()


@pytest.fixture(scope="session")
def rb_seq():
    return rb_seqmat_structure(theta=1, k=2, N=4)


@pytest.fixture(scope="session")
def rb_poly():
    return rb_polymat_structure(k=2)
