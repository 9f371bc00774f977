import numpy as np
import pytest

from acbound.entropy_model import ComponentKind, chrominance_table, luminance_table


@pytest.fixture(params=[ComponentKind.LUMINANCE, ComponentKind.CHROMINANCE],
                ids=["lum", "chroma"])
def component(request):
    return request.param


@pytest.fixture
def chroma():
    return chrominance_table()


@pytest.fixture
def lum():
    return luminance_table()


@pytest.fixture
def rng():
    return np.random.default_rng(0xAC)
