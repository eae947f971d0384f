import pytest

from crossfire.analytic import Scenario
from crossfire.geometry import RoadPosition
from crossfire.params import build_channel_params, table_defaults


@pytest.fixture(scope="session")
def defaults_r05():
    return table_defaults(0.5)


@pytest.fixture(scope="session")
def params_r05(defaults_r05):
    return build_channel_params(defaults_r05)


@pytest.fixture(scope="session")
def rx50():
    return RoadPosition.horizontal(-50.0)


@pytest.fixture
def make_scenario(params_r05, rx50):
    """Scenario factory with the baseline channel and sensible defaults."""

    def factory(
        tx=RoadPosition.horizontal(-30.0),
        rx=rx50,
        params=params_r05,
        lambda_x=0.01,
        lambda_y=0.01,
        r_x=100.0,
        r_y=100.0,
        p_i=0.3,
    ):
        return Scenario(
            tx=tx, rx=rx, params=params,
            lambda_x=lambda_x, lambda_y=lambda_y,
            r_x=r_x, r_y=r_y, p_i=p_i,
        )

    return factory
