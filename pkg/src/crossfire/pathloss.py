"""Deterministic path loss of the two-road intersection channel model.

Same-road links follow a plain power law in Euclidean distance. Cross-road
links follow a Manhattan-distance law (WLOS) near the intersection and a
product-distance law (NLOS) away from it; the model is discontinuous at the
break-point boundary.

Gains diverge at zero separation, so scalar evaluation rejects separations
below a configurable minimum (``min_separation``); the vectorized variants
used by the Monte Carlo sampler clamp instead and report how often.
"""

from __future__ import annotations

import numpy as np

from .geometry import RoadPosition
from .params import ChannelParams

# Below this separation (meters) gains are treated as non-physical.
DEFAULT_MIN_SEPARATION_M = 0.1


def pathloss_los(
    x: float,
    x_rx: float,
    p: ChannelParams,
    min_separation: float = DEFAULT_MIN_SEPARATION_M,
) -> float:
    """Linear gain of a same-road link between offsets ``x`` and ``x_rx``."""
    d = abs(x_rx - x)
    if d < min_separation:
        raise ValueError(
            f"same-road separation {d} m is below the minimum {min_separation} m; "
            "gain would be non-physical"
        )
    return p.a_los * d**-p.alpha


def pathloss_cross(
    y: float,
    x_rx: float,
    p: ChannelParams,
    min_separation: float = DEFAULT_MIN_SEPARATION_M,
) -> float:
    """Linear gain of a cross-road link: vertical offset ``y`` to horizontal ``x_rx``.

    NLOS (product-distance law) when both ends are farther than the break
    point from the intersection, WLOS (Manhattan-distance law) otherwise.
    """
    ay, ar = abs(y), abs(x_rx)
    if min(ay, ar) > p.delta:
        return p.a_nlos * (ay * ar) ** -p.alpha
    d = ay + ar
    if d < min_separation:
        raise ValueError(
            f"cross-road Manhattan separation {d} m is below the minimum "
            f"{min_separation} m; gain would be non-physical"
        )
    return p.a_los * d**-p.alpha


def pathloss(
    tx: RoadPosition,
    rx: RoadPosition,
    p: ChannelParams,
    min_separation: float = DEFAULT_MIN_SEPARATION_M,
) -> float:
    """Linear gain between two road positions, dispatching on the TX road."""
    if not rx.on_horizontal:
        raise ValueError("receiver must be on the horizontal road")
    if tx.on_horizontal:
        return pathloss_los(tx.x, rx.x, p, min_separation)
    return pathloss_cross(tx.y, rx.x, p, min_separation)


def los_gains_clamped(
    distances: np.ndarray,
    p: ChannelParams,
    min_separation: float = DEFAULT_MIN_SEPARATION_M,
) -> tuple[np.ndarray, int]:
    """Vectorized same-road gains with separations clamped at ``min_separation``.

    Returns (gains, number of clamped entries).
    """
    d = np.abs(np.asarray(distances, dtype=float))
    clamped = int(np.count_nonzero(d < min_separation))
    return p.a_los * np.maximum(d, min_separation) ** -p.alpha, clamped


def cross_gains_clamped(
    y_offsets: np.ndarray,
    x_rx: float,
    p: ChannelParams,
    min_separation: float = DEFAULT_MIN_SEPARATION_M,
) -> tuple[np.ndarray, int]:
    """Vectorized cross-road gains with the WLOS separation clamped.

    The NLOS branch needs no clamp: both of its distances exceed the break
    point. Returns (gains, number of clamped entries).
    """
    ay = np.abs(np.asarray(y_offsets, dtype=float))
    ar = abs(x_rx)
    nlos = np.minimum(ay, ar) > p.delta
    gains = np.empty_like(ay)
    gains[nlos] = p.a_nlos * (ay[nlos] * ar) ** -p.alpha
    wlos_d = ay[~nlos] + ar
    clamped = int(np.count_nonzero(wlos_d < min_separation))
    gains[~nlos] = p.a_los * np.maximum(wlos_d, min_separation) ** -p.alpha
    return gains, clamped
