import os
import sys

import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.topology.symplectic import Lagrangian, SymplecticSpace


@pytest.fixture
def genus_one():
    return SymplecticSpace(1)


@pytest.fixture
def std1(genus_one):
    return genus_one.standard_lagrangian()


@pytest.fixture
def longitude_lagrangian(genus_one):
    return Lagrangian.span(genus_one, [genus_one.longitude(0)])
