"""Closed-form packet success probability under Poisson interference.

The success probability factors into a noise-limited term and two
interference terms, one per road. Each interference term is an exponential
of a geometry factor built from the kernel ``g_circ``; the factors are exact
evaluations of the corresponding probability-generating-functional
integrals under Rayleigh fading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import RoadPosition
from .hypergeom import g_circ
from .params import ChannelParams
from .pathloss import pathloss

# Exponents below this produce subnormal noise; the probability is reported
# as exactly zero and the raw exponent kept for diagnostics.
_EXP_UNDERFLOW = -700.0


def _exp_probability(exponent: float) -> float:
    return math.exp(exponent) if exponent > _EXP_UNDERFLOW else 0.0


@dataclass(frozen=True)
class Scenario:
    """Everything needed to evaluate one TX/RX link under interference.

    Attributes:
        tx, rx: road positions; the receiver must be on the horizontal road.
        params: channel constants.
        lambda_x, lambda_y: vehicle intensities per meter on the horizontal
            and vertical roads.
        r_x, r_y: interference region half-widths, meters; both must be at
            least the break-point distance.
        p_i: Aloha transmit probability of potential interferers, in [0, 1].
    """

    tx: RoadPosition
    rx: RoadPosition
    params: ChannelParams
    lambda_x: float
    lambda_y: float
    r_x: float
    r_y: float
    p_i: float

    def __post_init__(self) -> None:
        if not self.rx.on_horizontal:
            raise ValueError("receiver must be on the horizontal road")
        if self.tx == self.rx:
            raise ValueError("transmitter and receiver coincide")
        if min(self.r_x, self.r_y) < self.params.delta:
            raise ValueError(
                f"interference bounds ({self.r_x}, {self.r_y}) must not fall below "
                f"the break-point distance {self.params.delta}"
            )
        if self.lambda_x < 0.0 or self.lambda_y < 0.0:
            raise ValueError("traffic intensities must be nonnegative")
        if not 0.0 <= self.p_i <= 1.0:
            raise ValueError(f"Aloha probability must lie in [0, 1], got {self.p_i}")


@dataclass(frozen=True)
class SuccessBreakdown:
    """Success probability and its factors for one scenario.

    ``p_c = p_noint * p_x * p_y`` exactly (as floats). ``zeta`` is the
    characteristic length normalizing distances inside the kernel, ``kappa``
    the NLOS scaling constant, and ``link_gain`` the deterministic gain of
    the useful link. ``x_exponent``/``y_exponent`` are the raw (negative)
    exponents of ``p_x``/``p_y``, kept even when the probabilities underflow.
    """

    p_noint: float
    p_x: float
    p_y: float
    p_c: float
    zeta: float
    kappa: float
    link_gain: float
    x_exponent: float
    y_exponent: float


def _link_scale(s: Scenario) -> tuple[float, float, float, float]:
    """(link_gain, beta_prime, zeta, kappa) for a scenario.

    beta_prime rescales the SINR threshold by the realized link gain, which
    itself depends on which road the TX occupies; zeta and kappa follow.
    """
    p = s.params
    gain = pathloss(s.tx, s.rx, p)
    beta_prime = p.beta / gain
    zeta = (p.a_los * beta_prime) ** (1.0 / p.alpha)
    kappa = (p.a_los / p.a_nlos) ** (1.0 / p.alpha) * abs(s.rx.x)
    return gain, beta_prime, zeta, kappa


def p_noint(s: Scenario) -> float:
    """Success probability with no interferers: exp(-beta * gamma0 / link gain)."""
    _, beta_prime, _, _ = _link_scale(s)
    return _exp_probability(-beta_prime * s.params.gamma0)


def x_factor(s: Scenario) -> float:
    """Geometry factor of the horizontal-road interference term.

    With n = |rx.x| and the distances normalized by zeta, the factor is
    g((r_x+n)/zeta) + g((r_x-n)/zeta) when the receiver lies inside the
    interference region, and g((r_x+n)/zeta) - g((n-r_x)/zeta) otherwise.
    """
    _, _, zeta, _ = _link_scale(s)
    return _x_factor(s, zeta)


def _x_factor(s: Scenario, zeta: float) -> float:
    alpha = s.params.alpha
    n = abs(s.rx.x)
    outer = g_circ(alpha, (s.r_x + n) / zeta)
    if n <= s.r_x:
        return outer + g_circ(alpha, (s.r_x - n) / zeta)
    return outer - g_circ(alpha, (n - s.r_x) / zeta)


def y_factor(s: Scenario) -> float:
    """Geometry factor of the vertical-road interference term.

    A receiver within the break-point distance of the intersection sees the
    whole vertical road through the Manhattan-distance law; a receiver
    farther out sees the Manhattan law up to the break point and the
    product-distance law beyond it, the latter rescaled by kappa.
    """
    _, _, zeta, kappa = _link_scale(s)
    return _y_factor(s, zeta, kappa)


def _y_factor(s: Scenario, zeta: float, kappa: float) -> float:
    p = s.params
    n = abs(s.rx.x)
    if n <= p.delta:
        return g_circ(p.alpha, (s.r_y + n) / zeta) - g_circ(p.alpha, n / zeta)
    # n > delta implies n > 0, hence kappa > 0 here
    near = g_circ(p.alpha, (p.delta + n) / zeta) - g_circ(p.alpha, n / zeta)
    far = (
        g_circ(p.alpha, kappa * s.r_y / zeta) - g_circ(p.alpha, kappa * p.delta / zeta)
    ) / kappa
    return near + far


def success_probability(s: Scenario) -> SuccessBreakdown:
    """Evaluate the closed-form success probability and all its factors."""
    gain, beta_prime, zeta, kappa = _link_scale(s)
    x_exp = -s.p_i * s.lambda_x * zeta * _x_factor(s, zeta)
    y_exp = -2.0 * s.p_i * s.lambda_y * zeta * _y_factor(s, zeta, kappa)
    pn = _exp_probability(-beta_prime * s.params.gamma0)
    px = _exp_probability(x_exp)
    py = _exp_probability(y_exp)
    return SuccessBreakdown(
        p_noint=pn,
        p_x=px,
        p_y=py,
        p_c=pn * px * py,
        zeta=zeta,
        kappa=kappa,
        link_gain=gain,
        x_exponent=x_exp,
        y_exponent=y_exp,
    )
