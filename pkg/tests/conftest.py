import numpy as np
import pytest

from gupmol import Molecule


@pytest.fixture
def unit_molecule() -> Molecule:
    """de = re = mu = 1 in internal units; gamma = sqrt(2)."""
    return Molecule(name="unit", de=1.0, re=1.0, mu=1.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
