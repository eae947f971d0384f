"""Aloha transmit-probability design and the sweep procedures behind it.

Inverting the closed-form success probability for the transmit probability
gives the largest Aloha probability that still meets a reliability target
at a chosen anchor geometry and interference radius. The sweeps evaluate
that inversion over grids of separations and radii, and the resulting
outage curves over transmitter positions.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, NamedTuple, Sequence

from scipy.optimize import brentq

from .analytic import Scenario, success_probability
from .geometry import RoadPosition, tx_from_manhattan
from .params import SystemDefaults, build_channel_params


class InfeasibleDesignError(ValueError):
    """The reliability target exceeds what the interference-free link supports."""


class CalibrationError(ValueError):
    """No NLOS severity in (0, 1) reproduces the requested target."""


@dataclass(frozen=True)
class DesignPoint:
    """An Aloha probability designed for one anchor geometry and radius.

    ``clamped`` marks designs where the unconstrained inversion exceeded 1
    (or any probability met the target) and the value was capped.
    """

    design_tx: RoadPosition
    rx: RoadPosition
    radius: float
    p_target: float
    p_i_star: float
    clamped: bool = False


class Fig3Row(NamedTuple):
    distance: float
    radius: float
    p_i_star: float | None
    feasible: bool


class Fig4Row(NamedTuple):
    radius: float
    distance: float
    p_i_star: float
    outage: float


def optimal_aloha(
    design_tx: RoadPosition,
    rx: RoadPosition,
    radius: float,
    p_target: float,
    env: Scenario,
) -> DesignPoint:
    """Largest Aloha probability meeting ``p_target`` at the anchor link.

    ``env`` supplies channel constants and traffic intensities; its TX/RX,
    radii, and Aloha probability are overridden. The returned probability,
    substituted back into the closed form at the anchor, reproduces the
    target exactly (when unclamped). Raises InfeasibleDesignError when even
    an interference-free link falls short of the target.
    """
    if not 0.0 < p_target < 1.0:
        raise ValueError(f"target success probability must lie in (0, 1), got {p_target}")
    if radius < env.params.delta:
        raise ValueError(
            f"interference radius {radius} is below the break-point distance "
            f"{env.params.delta}"
        )
    anchor = replace(env, tx=design_tx, rx=rx, r_x=radius, r_y=radius, p_i=1.0)
    b = success_probability(anchor)
    if b.p_noint < p_target:
        raise InfeasibleDesignError(
            f"target {p_target} exceeds the interference-free success probability "
            f"{b.p_noint:.6g} at the design anchor; no transmit probability can meet it"
        )
    # exponents were computed at p_i = 1, so their sum scales linearly in p_i
    denominator = -(b.x_exponent + b.y_exponent)
    numerator = math.log(b.p_noint) - math.log(p_target)
    if denominator == 0.0:
        # no interferers contribute; any probability meets the target
        return DesignPoint(design_tx, rx, radius, p_target, 1.0, clamped=True)
    p_i_star = numerator / denominator
    if p_i_star > 1.0:
        return DesignPoint(design_tx, rx, radius, p_target, 1.0, clamped=True)
    return DesignPoint(design_tx, rx, radius, p_target, p_i_star)


def _map_cells(
    cells: Sequence, work, workers: int | None
) -> list:
    if workers is not None and workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(work, cells))
    return [work(c) for c in cells]


def sweep_fig3(
    env: Scenario,
    distances: Iterable[float],
    r_grid: Iterable[float],
    p_target: float,
    workers: int | None = None,
) -> list[Fig3Row]:
    """Designed Aloha probability over (separation, radius) cells.

    Cells whose target is infeasible are kept in the table, flagged, with no
    probability. Rows come out in grid order (distance-major) regardless of
    how the cells were executed.
    """
    cells = [(d, r) for d in distances for r in r_grid]

    def work(cell: tuple[float, float]) -> Fig3Row:
        d, r = cell
        try:
            point = optimal_aloha(tx_from_manhattan(d, env.rx), env.rx, r, p_target, env)
        except InfeasibleDesignError:
            return Fig3Row(d, r, None, False)
        return Fig3Row(d, r, point.p_i_star, True)

    return _map_cells(cells, work, workers)


def sweep_fig4(
    env: Scenario,
    design_tx: RoadPosition,
    r_values: Sequence[float],
    eval_distances: Sequence[float],
    p_target: float,
    workers: int | None = None,
) -> list[Fig4Row]:
    """Outage over transmitter separations, for designs anchored at ``design_tx``.

    For each radius the Aloha probability is designed at the anchor and then
    held fixed while the transmitter moves; rows report 1 - success. An
    infeasible anchor raises. Row order is radius-major, then distance.
    """
    designs = {
        r: optimal_aloha(design_tx, env.rx, r, p_target, env) for r in r_values
    }
    cells = [(r, d) for r in r_values for d in eval_distances]

    def work(cell: tuple[float, float]) -> Fig4Row:
        r, d = cell
        point = designs[r]
        s = replace(
            env,
            tx=tx_from_manhattan(d, env.rx),
            r_x=r,
            r_y=r,
            p_i=point.p_i_star,
        )
        return Fig4Row(r, d, point.p_i_star, 1.0 - success_probability(s).p_c)

    return _map_cells(cells, work, workers)


def calibrate_nlos_severity(
    defaults: SystemDefaults,
    target_p_noint: float,
    distance: float,
) -> float:
    """NLOS severity r in (0, 1) whose interference-free success probability
    at Manhattan separation ``distance`` equals ``target_p_noint``.

    The probability is strictly increasing in r, so the root is unique when
    it exists. Raises CalibrationError (reporting the closest achievable
    value) when no r in the valid range reaches the target.
    """
    if not 0.0 < target_p_noint < 1.0:
        raise ValueError(f"target must lie in (0, 1), got {target_p_noint}")
    rx = RoadPosition.horizontal(defaults.rx_offset_m)
    tx = tx_from_manhattan(distance, rx)

    def pn(r: float) -> float:
        d = replace(defaults, nlos_severity_r=r)
        params = build_channel_params(d)
        s = Scenario(
            tx=tx,
            rx=rx,
            params=params,
            lambda_x=0.0,
            lambda_y=0.0,
            r_x=params.delta,
            r_y=params.delta,
            p_i=0.0,
        )
        return success_probability(s).p_noint

    lo = 1e-12
    # stay below the severity where the NLOS coefficient would reach its
    # WLOS boundary value and construction starts rejecting
    hi = _max_valid_severity(defaults) * (1.0 - 1e-9)
    f_lo, f_hi = pn(lo) - target_p_noint, pn(hi) - target_p_noint
    if f_lo * f_hi > 0.0:
        closest = pn(hi) if abs(f_hi) < abs(f_lo) else pn(lo)
        raise CalibrationError(
            f"no NLOS severity in ({lo:g}, {hi:g}) reaches an interference-free "
            f"success probability of {target_p_noint}; closest achievable is {closest:.6g}"
        )
    return float(brentq(lambda r: pn(r) - target_p_noint, lo, hi, xtol=1e-15, rtol=1e-15))


def _max_valid_severity(defaults: SystemDefaults) -> float:
    # severity at which a_nlos equals a_los*(delta/2)^alpha; the dB gap is
    # alpha*(10*log10(2) - 3), which puts the bound just below 1
    return min(1.0, 10.0 ** (-defaults.alpha * (10.0 * math.log10(2.0) - 3.0) / 10.0))
