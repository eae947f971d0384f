"""Reliability analysis for vehicle-to-vehicle links near an urban intersection.

Closed-form success-probability evaluation under Poisson interference on a
two-road crossing, an Aloha transmit-probability design inverter, and two
independent verification oracles (Monte Carlo simulation and direct
quadrature), exposed through a FastAPI service and a thin CLI.
"""

__version__ = "0.1.0"

from .analytic import Scenario, SuccessBreakdown, success_probability
from .design import DesignPoint, InfeasibleDesignError, optimal_aloha
from .geometry import LinkClass, RoadPosition, classify_link, manhattan, tx_from_manhattan
from .hypergeom import g_circ, g_circ_limit
from .params import ChannelParams, SystemDefaults, build_channel_params, db_to_linear, linear_to_db
from .pathloss import pathloss, pathloss_cross, pathloss_los

__all__ = [
    "__version__",
    "ChannelParams",
    "DesignPoint",
    "InfeasibleDesignError",
    "LinkClass",
    "RoadPosition",
    "Scenario",
    "SuccessBreakdown",
    "SystemDefaults",
    "build_channel_params",
    "classify_link",
    "db_to_linear",
    "g_circ",
    "g_circ_limit",
    "linear_to_db",
    "manhattan",
    "optimal_aloha",
    "pathloss",
    "pathloss_cross",
    "pathloss_los",
    "success_probability",
    "tx_from_manhattan",
]
