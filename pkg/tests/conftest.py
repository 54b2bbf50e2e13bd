import os
import sys

import pytest

TOP = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(TOP, 'python'))

from comet import cometdefs
from comet import geometry as geo
from comet import pcm_cell
from comet import photonics
from comet.engine import TimingParams


@pytest.fixture(autouse=True)
def quiet_debug(monkeypatch):
    """ Debug variables of the environment must not leak into the tests """
    for name in list(os.environ):
        if name.endswith('_DEBUG'):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture
def etc_dir():
    return os.path.join(TOP, 'etc')


@pytest.fixture
def comet4b():
    """ The default 8 Gbit, 4 bit per cell chip """
    return geo.validate_geometry(geo.MemoryGeometry(cometdefs.DEFAULT_BANKS,
                                                    cometdefs.DEFAULT_SUBARRAY_COUNT,
                                                    cometdefs.DEFAULT_SUBARRAY_ROWS,
                                                    cometdefs.DEFAULT_SUBARRAY_COLS,
                                                    cometdefs.DEFAULT_BITS_PER_CELL))


@pytest.fixture
def tiny():
    """ 2 banks of 4 subarrays of 4 x 4 cells """
    return geo.validate_geometry(geo.MemoryGeometry(2, 4, 4, 4, 4))


@pytest.fixture
def table4b():
    return pcm_cell.build_level_table(4)


@pytest.fixture
def optics():
    return photonics.PhotonicsParams()


@pytest.fixture
def timing():
    return TimingParams()
