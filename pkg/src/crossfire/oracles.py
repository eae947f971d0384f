"""Independent verification of the closed forms.

Two routes that share nothing with the kernel-based evaluation beyond the
channel model itself:

  * a Monte Carlo SINR simulation drawing Poisson interferer sets and
    exponential fading on both roads, and
  * direct adaptive quadrature of the interference-functional integrands.

The Monte Carlo sampler uses counter-based random streams keyed by
(seed, block index), so estimates are bit-identical however the fixed-size
trial blocks are executed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

import numpy as np
from scipy.integrate import quad

from .analytic import Scenario, success_probability
from .design import optimal_aloha
from .geometry import RoadPosition, tx_from_manhattan
from .params import SystemDefaults, build_channel_params
from .pathloss import (
    DEFAULT_MIN_SEPARATION_M,
    cross_gains_clamped,
    los_gains_clamped,
    pathloss,
    pathloss_cross,
    pathloss_los,
)

_BLOCK_SIZE = 8192
# distinct per-scenario seeds in validation runs (splitmix increment)
_SEED_STRIDE = 0x9E3779B97F4A7C15
_SEED_MASK = (1 << 64) - 1


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True)
class PppSample:
    """Offsets of one Poisson draw on a road segment [-bound, bound]."""

    points: np.ndarray


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate of the success probability.

    ``epsilon_hits`` counts interferers whose separation from the receiver
    was clamped at the minimum-separation guard; it should be a negligible
    fraction of all sampled interferers.
    """

    mean: float
    std_error: float
    trials: int
    seed: int
    epsilon_hits: int


def sample_ppp(intensity: float, bound: float, rng: np.random.Generator) -> PppSample:
    """One homogeneous Poisson draw on [-bound, bound] at the given intensity.

    The count is Poisson(2 * intensity * bound) and offsets are i.i.d.
    uniform on the segment.
    """
    if intensity < 0.0:
        raise ValueError(f"intensity must be nonnegative, got {intensity}")
    if not bound > 0.0:
        raise ValueError(f"bound must be positive, got {bound}")
    n = int(rng.poisson(2.0 * intensity * bound))
    return PppSample(points=rng.uniform(-bound, bound, n))


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & _SEED_MASK, block]))


def mc_success(
    s: Scenario,
    trials: int,
    seed: int,
    min_separation: float = DEFAULT_MIN_SEPARATION_M,
) -> McEstimate:
    """Estimate the success probability by simulating the SINR directly.

    Each trial draws thinned Poisson interferer sets on both roads, unit-mean
    exponential fading for the useful link and every interferer, and records
    whether the SINR clears the threshold. Deterministic given (scenario,
    trials, seed).
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    p = s.params
    link_gain = pathloss(s.tx, s.rx, p, min_separation)
    mean_count_x = 2.0 * s.p_i * s.lambda_x * s.r_x
    mean_count_y = 2.0 * s.p_i * s.lambda_y * s.r_y

    successes = 0
    epsilon_hits = 0
    done = 0
    block = 0
    while done < trials:
        n = min(_BLOCK_SIZE, trials - done)
        rng = _block_rng(seed, block)
        # fixed draw order per block: counts, link fading, then per-road
        # positions and fading; changing it changes the streams
        counts_x = rng.poisson(mean_count_x, n)
        counts_y = rng.poisson(mean_count_y, n)
        fade_link = rng.standard_exponential(n)
        pos_x = rng.uniform(-s.r_x, s.r_x, int(counts_x.sum()))
        fade_x = rng.standard_exponential(pos_x.size)
        pos_y = rng.uniform(-s.r_y, s.r_y, int(counts_y.sum()))
        fade_y = rng.standard_exponential(pos_y.size)

        gains_x, hits_x = los_gains_clamped(pos_x - s.rx.x, p, min_separation)
        gains_y, hits_y = cross_gains_clamped(pos_y, s.rx.x, p, min_separation)
        interference = np.bincount(
            np.repeat(np.arange(n), counts_x), weights=fade_x * gains_x, minlength=n
        )
        interference += np.bincount(
            np.repeat(np.arange(n), counts_y), weights=fade_y * gains_y, minlength=n
        )
        # success when SINR >= beta, written multiplicatively so a zero
        # denominator (no noise, no interferers) needs no special case
        successes += int(
            np.count_nonzero(fade_link * link_gain >= p.beta * (interference + p.gamma0))
        )
        epsilon_hits += hits_x + hits_y
        done += n
        block += 1

    mean = successes / trials
    return McEstimate(
        mean=mean,
        std_error=math.sqrt(mean * (1.0 - mean) / trials),
        trials=trials,
        seed=seed,
        epsilon_hits=epsilon_hits,
    )


def _adaptive_exponent(integrand, lower, upper, interior_points) -> float:
    pts = sorted(p for p in interior_points if lower < p < upper)
    result = quad(
        integrand,
        lower,
        upper,
        points=pts or None,
        epsabs=1e-12,
        epsrel=1e-13,
        limit=400,
        full_output=True,
    )
    value, abserr = result[0], result[1]
    # allow a roundoff floor relative to the integral's own magnitude
    if len(result) > 3 and abserr > max(1e-12, 5e-14 * abs(value)):
        raise QuadratureError(
            f"quadrature did not converge: achieved tolerance {abserr:.3g} "
            f"on exponent {value:.6g}"
        )
    return value


def quad_x_exponent(s: Scenario) -> float:
    """Horizontal-road interference exponent, integrated directly."""
    if s.p_i == 0.0 or s.lambda_x == 0.0:
        return 0.0
    p = s.params
    beta_prime = p.beta / pathloss(s.tx, s.rx, p)
    weight = s.p_i * s.lambda_x

    def integrand(x: float) -> float:
        d = abs(s.rx.x - x)
        if d < 1e-30:
            return weight  # limit at the receiver position
        return weight / (1.0 + 1.0 / (beta_prime * pathloss_los(x, s.rx.x, p, 0.0)))

    return _adaptive_exponent(integrand, -s.r_x, s.r_x, [s.rx.x])


def quad_y_exponent(s: Scenario) -> float:
    """Vertical-road interference exponent, integrated directly."""
    if s.p_i == 0.0 or s.lambda_y == 0.0:
        return 0.0
    p = s.params
    beta_prime = p.beta / pathloss(s.tx, s.rx, p)
    weight = s.p_i * s.lambda_y

    def integrand(y: float) -> float:
        if abs(y) + abs(s.rx.x) < 1e-30:
            return weight
        return weight / (1.0 + 1.0 / (beta_prime * pathloss_cross(y, s.rx.x, p, 0.0)))

    return _adaptive_exponent(
        integrand, -s.r_y, s.r_y, [-p.delta, 0.0, p.delta]
    )


def quad_px(s: Scenario) -> float:
    """Horizontal-road interference factor via adaptive quadrature."""
    return math.exp(-quad_x_exponent(s))


def quad_py(s: Scenario) -> float:
    """Vertical-road interference factor via adaptive quadrature."""
    return math.exp(-quad_y_exponent(s))


class McCheckRow(NamedTuple):
    label: str
    tx: RoadPosition
    radius: float
    p_i: float
    trials: int
    seed: int
    mc_mean: float
    std_error: float
    analytic_p_c: float
    abs_diff: float
    three_sigma: float
    passed: bool


def default_validation_grid(defaults: SystemDefaults) -> list[tuple[str, Scenario]]:
    """The standard 30-scenario Monte Carlo validation grid.

    Mixes same-road, near-intersection, and far cross-road transmitter
    placements with two receiver offsets, two interference radii, and three
    Aloha probabilities (two fixed, one designed for the reliability target).
    """
    params = build_channel_params(defaults)
    lam = defaults.lambda_per_m
    geometries: list[tuple[str, float, RoadPosition]] = []
    for rx_offset in (-5.0, -50.0):
        geometries.append((f"rx{rx_offset:g}_los", rx_offset, RoadPosition.horizontal(rx_offset + 20.0)))
        geometries.append((f"rx{rx_offset:g}_near", rx_offset, RoadPosition.vertical(10.0)))
    # a far cross-road TX is NLOS only for the far receiver
    geometries.append(("rx-50_far", -50.0, RoadPosition.vertical(70.0)))

    scenarios: list[tuple[str, Scenario]] = []
    for label, rx_offset, tx in geometries:
        rx = RoadPosition.horizontal(rx_offset)
        for radius in (100.0, 1000.0):
            base = Scenario(
                tx=tx, rx=rx, params=params, lambda_x=lam, lambda_y=lam,
                r_x=radius, r_y=radius, p_i=1.0,
            )
            for p_i_label, p_i in (("fixed0.05", 0.05), ("fixed0.15", 0.15), ("designed", None)):
                if p_i is None:
                    p_i = optimal_aloha(tx, rx, radius, defaults.p_target, base).p_i_star
                scenarios.append(
                    (f"{label}_R{radius:g}_{p_i_label}", replace(base, p_i=p_i))
                )
    return scenarios


def run_mc_validation(
    defaults: SystemDefaults,
    trials: int,
    seed: int,
    min_separation: float = DEFAULT_MIN_SEPARATION_M,
    scenarios: Sequence[tuple[str, Scenario]] | None = None,
) -> list[McCheckRow]:
    """Compare Monte Carlo estimates against the closed form per scenario.

    Each scenario gets its own derived seed so streams never overlap. A row
    passes when the estimate lies within three standard errors of the
    closed-form value.
    """
    if trials < 1000:
        raise ValueError(f"validation needs at least 1000 trials, got {trials}")
    if scenarios is None:
        scenarios = default_validation_grid(defaults)
    rows = []
    for index, (label, s) in enumerate(scenarios):
        scenario_seed = (seed + index * _SEED_STRIDE) & _SEED_MASK
        est = mc_success(s, trials, scenario_seed, min_separation)
        p_c = success_probability(s).p_c
        diff = abs(est.mean - p_c)
        three_sigma = 3.0 * est.std_error
        rows.append(
            McCheckRow(
                label=label,
                tx=s.tx,
                radius=s.r_x,
                p_i=s.p_i,
                trials=trials,
                seed=scenario_seed,
                mc_mean=est.mean,
                std_error=est.std_error,
                analytic_p_c=p_c,
                abs_diff=diff,
                three_sigma=three_sigma,
                passed=diff <= three_sigma,
            )
        )
    return rows
