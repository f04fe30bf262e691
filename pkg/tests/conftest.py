import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from refined_absorption.core.generators import complete_graph, cycle_graph, disjoint_union  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def k7():
    return complete_graph(7, 2)


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def two_triangles():
    return disjoint_union([complete_graph(3, 2), complete_graph(3, 2)])
