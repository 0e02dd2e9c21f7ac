"""Shared channel fixtures: the three shipped channels plus an asymmetric-prior one."""

import math
from pathlib import Path

import pytest

from binquant import DensityModel, GaussianComponent, Prior, channel_spec

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def single_gaussian(mean, stddev):
    return DensityModel(components=(GaussianComponent(mean=mean, stddev=stddev, weight=1.0),))


@pytest.fixture(scope="session")
def example1_spec():
    """Symmetric channel: same unit noise on inputs at -1 and +1."""
    return channel_spec(Prior(p0=0.5), single_gaussian(-1.0, 1.0), single_gaussian(1.0, 1.0))


@pytest.fixture(scope="session")
def example2_spec():
    """Unequal-variance channel: heavy-tailed noise on the X=0 input."""
    return channel_spec(
        Prior(p0=0.5), single_gaussian(-1.0, math.sqrt(5.0)), single_gaussian(1.0, 1.0)
    )


@pytest.fixture(scope="session")
def fig5_spec():
    """Three-bump mixture vs a broad Gaussian; six-threshold level sets."""
    density0 = DensityModel(
        components=(
            GaussianComponent(mean=0.0, stddev=math.sqrt(0.3), weight=0.3),
            GaussianComponent(mean=-3.0, stddev=math.sqrt(0.2), weight=0.4),
            GaussianComponent(mean=3.0, stddev=math.sqrt(0.1), weight=0.3),
        )
    )
    return channel_spec(Prior(p0=0.5), density0, single_gaussian(-2.0, 3.0))


@pytest.fixture(scope="session")
def asym_spec():
    """Unequal-variance channel with a skewed prior (exercises p0 != p1 paths)."""
    return channel_spec(
        Prior(p0=0.3), single_gaussian(-1.0, math.sqrt(5.0)), single_gaussian(1.0, 1.0)
    )


@pytest.fixture(scope="session")
def flat_spec():
    """Identical conditionals: the channel carries no information."""
    return channel_spec(Prior(p0=0.5), single_gaussian(0.0, 1.0), single_gaussian(0.0, 1.0))
