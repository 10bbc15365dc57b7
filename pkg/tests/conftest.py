from __future__ import annotations

import numpy as np
import pytest

from wickforge import make_preset
from wickforge.fock import clear_cache

from oracles import preset_qmat


def phase_phi(n_species: int, angle: float) -> np.ndarray:
    """Antisymmetric phase matrix with the angle on the (1, 2) pair only."""
    phi = np.zeros((n_species, n_species))
    if n_species >= 2:
        phi[0, 1] = angle
        phi[1, 0] = -angle
    return phi


def acceptance_systems(n_species: int):
    """The preset battery used throughout: (system, oracle coefficient matrix)."""
    angle = np.pi / 3
    phi = phase_phi(n_species, angle)
    return [
        (make_preset("boson", n_species), preset_qmat("boson", n_species)),
        (make_preset("fermion", n_species), preset_qmat("fermion", n_species)),
        (make_preset("boltzmann", n_species), preset_qmat("boltzmann", n_species)),
        (make_preset("quon", n_species, q=0.5), preset_qmat("quon", n_species, q=0.5)),
        (make_preset("quon", n_species, q=-0.5), preset_qmat("quon", n_species, q=-0.5)),
        (make_preset("quon", n_species, q=1.0), preset_qmat("quon", n_species, q=1.0)),
        (make_preset("phase", n_species, phi=phi), preset_qmat("phase", n_species, phi=phi)),
    ]


@pytest.fixture
def fresh_cache():
    clear_cache()
    yield
    clear_cache()


@pytest.fixture
def boson2():
    return make_preset("boson", 2)


@pytest.fixture
def fermion2():
    return make_preset("fermion", 2)


@pytest.fixture
def boltzmann2():
    return make_preset("boltzmann", 2)


@pytest.fixture
def quon1_half():
    return make_preset("quon", 1, q=0.5)
