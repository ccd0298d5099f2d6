import pytest

from epsident import (
    ExperimentalDistribution,
    ObservationalDistribution,
    StudyCounts,
    from_counts,
)


@pytest.fixture()
def running_exp():
    return ExperimentalDistribution(p_y_do_x=0.7, p_y_do_xp=0.3)


@pytest.fixture()
def running_obs():
    return ObservationalDistribution(p_xy=0.4, p_xyp=0.1, p_xpy=0.2, p_xpyp=0.3)


@pytest.fixture()
def point_exp():
    return ExperimentalDistribution(p_y_do_x=1.0, p_y_do_xp=0.0)


@pytest.fixture()
def point_obs():
    return ObservationalDistribution(p_xy=0.5, p_xyp=0.0, p_xpy=0.0, p_xpyp=0.5)


@pytest.fixture()
def medicine_obs():
    counts = StudyCounts(780, 480, 210, 30, kind="observational")
    return from_counts(counts)


@pytest.fixture()
def discount_exp():
    counts = StudyCounts(900, 600, 750, 750, kind="experimental")
    return from_counts(counts)
