import numpy as np
import pytest

from core.crooked_ads import STANDARD_ADS_PLANE, AdSCrookedPlane
from core.crooked_minkowski import STANDARD_CROOKED_PLANE
from core.einstein_embedding import STANDARD_CONFIGURATION, crooked_surface
from core.sl2_algebra import E_Y


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def standard_e3_plane():
    return STANDARD_CROOKED_PLANE


@pytest.fixture
def standard_ads_plane():
    return STANDARD_ADS_PLANE


@pytest.fixture
def skew_ads_plane():
    """A plane with a non-identity vertex and a spine off the diagonal."""
    return AdSCrookedPlane(g=np.array([[2.0, 1.0], [1.0, 1.0]]), s=E_Y.copy())


@pytest.fixture
def standard_surface():
    return crooked_surface(STANDARD_CONFIGURATION)
