import os
import tempfile

# settings are read once at import time, so the test environment goes first
os.environ.setdefault("ENABLE_LOGGING", "false")
os.environ.setdefault("LOG_LEVEL", "WARNING")
os.environ.setdefault("CELERY_TASK_ALWAYS_EAGER", "true")
os.environ.setdefault("CELERY_BROKER_URL", "memory://")
os.environ.setdefault("CELERY_RESULT_BACKEND", "cache+memory://")
os.environ.setdefault("REPORTS_DIR", tempfile.mkdtemp(prefix="trs-reports-"))

import pytest  # noqa: E402

from trs.models.code import TwistedCode  # noqa: E402
from trs.schemas.codes import FieldParams  # noqa: E402
from trs.schemas.simulation import RowStat, SimConfig, SimReport, TauMaxRecord  # noqa: E402
from trs.services.finite_field import make_field, multiplicative_subgroup  # noqa: E402


@pytest.fixture(scope="session")
def gf5():
    return make_field(5)


@pytest.fixture(scope="session")
def gf7():
    return make_field(7)


@pytest.fixture(scope="session")
def gf13():
    return make_field(13)


@pytest.fixture(scope="session")
def gf16():
    return make_field(2, 4)


@pytest.fixture(scope="session")
def squares13(gf13):
    return multiplicative_subgroup(gf13, 6)


@pytest.fixture
def small_code(gf7):
    """[4,2] code over GF(7) with g_0 = 1 + 3X^2; columns 2 and 3 are dependent"""
    return TwistedCode(gf7, 4, 2, (1, 2, 3, 4), (1,), (0,), (3,))


@pytest.fixture
def small_params():
    return {
        "field": {"p": 7},
        "n": 4,
        "k": 2,
        "alpha": [1, 2, 3, 4],
        "t": [1],
        "h": [0],
        "eta": [3],
    }


@pytest.fixture
def star_code(gf13, squares13):
    """MDS (*)-twisted [7,3] code on the squares of GF(13) and 0"""
    return TwistedCode(gf13, 7, 3, tuple(squares13) + (0,), (1,), (0,), (2,))


@pytest.fixture
def small_config():
    return SimConfig(
        field=FieldParams(p=13),
        n=12,
        k_list=[4],
        ell_list=[1],
        zeta_list=[1],
        trials=4,
        codes=2,
        seed=7,
    )


@pytest.fixture
def handmade_report():
    """Report with fixed rows, no decoding behind it"""
    cfg = SimConfig(field=FieldParams(p=23), n=22, k_list=[7, 15], zeta_list=[2], trials=50, codes=50)
    rows = [
        RowStat(
            k=7,
            ell=1,
            zeta=2,
            tau_lb=6,
            half_distance=7,
            histogram={6: 1, 7: 49},
            p_max_below=0.047,
            p_max_at=0.15,
            p_min_above=None,
        ),
        RowStat(k=15, ell=1, zeta=2, tau_lb=2, half_distance=3, histogram={2: 10, 3: 40}),
    ]
    tau_max = [TauMaxRecord(code_id=0, k=7, ell=1, zeta=2, tau_max=5, tau_lb=6)]
    return SimReport(config=cfg, rows=rows, tau_max=tau_max)
