"""Channel and system constants, with dB handling at the configuration boundary.

All downstream computation is in linear scale; decibel values appear only
here, when constants are built from a configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

# Reference constant of the path loss coefficient formulas (dB). Taken
# verbatim from the measurement-backed parameterization; not re-derived
# from free space.
PL_REF_DB = -37.86


def db_to_linear(v: float) -> float:
    """Convert a dB (or dBm) value to linear scale: 10^(v/10)."""
    if not math.isfinite(v):
        raise ValueError(f"dB value must be finite, got {v!r}")
    return 10.0 ** (v / 10.0)


def linear_to_db(v: float) -> float:
    """Convert a positive linear value to dB: 10*log10(v)."""
    if not (math.isfinite(v) and v > 0.0):
        raise ValueError(f"linear value must be finite and positive, got {v!r}")
    return 10.0 * math.log10(v)


@dataclass(frozen=True)
class ChannelParams:
    """Linear-scale channel constants of the two-road propagation model.

    Attributes:
        alpha: path loss exponent, > 1.
        a_los: path loss coefficient of the same-road (LOS) and
            near-intersection (WLOS) laws, linear gain * m^alpha.
        a_nlos: path loss coefficient of the cross-road product-distance
            (NLOS) law, linear gain * m^(2*alpha).
        delta: break-point distance separating WLOS from NLOS, meters.
        beta: SINR detection threshold, linear.
        gamma0: noise-to-transmit-power ratio, linear.
    """

    alpha: float
    a_los: float
    a_nlos: float
    delta: float
    beta: float
    gamma0: float

    def __post_init__(self) -> None:
        if not self.alpha > 1.0:
            raise ValueError(f"path loss exponent must satisfy alpha > 1, got {self.alpha}")
        for name in ("a_los", "a_nlos", "delta", "beta"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be finite and positive, got {v}")
        if not (math.isfinite(self.gamma0) and self.gamma0 >= 0.0):
            raise ValueError(f"gamma0 must be finite and nonnegative, got {self.gamma0}")
        wlos_boundary = self.a_los * (self.delta / 2.0) ** self.alpha
        if not self.a_nlos < wlos_boundary:
            raise ValueError(
                "NLOS coefficient must be below the WLOS boundary value: "
                f"a_nlos < a_los*(delta/2)^alpha violated "
                f"({self.a_nlos:.6g} >= {wlos_boundary:.6g})"
            )


@dataclass(frozen=True)
class SystemDefaults:
    """Full system configuration in the units it is usually quoted in.

    ``nlos_severity_r`` scales the NLOS coefficient relative to its WLOS
    boundary value and must lie strictly in (0, 1); it has no default.
    """

    p0_dbm: float
    n0_dbm: float
    beta_db: float
    f0_ghz: float
    d0_m: float
    delta_m: float
    alpha: float
    nlos_severity_r: float
    p_target: float
    rx_offset_m: float
    d_max_m: float
    lambda_per_m: float
    r_max_m: float

    def __post_init__(self) -> None:
        if not 0.0 < self.nlos_severity_r < 1.0:
            raise ValueError(
                f"nlos_severity_r must lie strictly in (0, 1), got {self.nlos_severity_r}"
            )
        if not self.alpha > 1.0:
            raise ValueError(f"alpha must exceed 1, got {self.alpha}")
        if not 0.0 < self.p_target < 1.0:
            raise ValueError(f"p_target must lie in (0, 1), got {self.p_target}")
        for name in ("f0_ghz", "d0_m", "delta_m", "d_max_m"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.lambda_per_m < 0.0:
            raise ValueError(f"lambda_per_m must be nonnegative, got {self.lambda_per_m}")
        if self.r_max_m < self.delta_m:
            raise ValueError(
                f"r_max_m must be at least the break-point distance {self.delta_m}, "
                f"got {self.r_max_m}"
            )


def table_defaults(nlos_severity_r: float, **overrides: float) -> SystemDefaults:
    """Baseline evaluation parameters: 20 dBm TX power, -99 dBm noise floor,
    8 dB SINR threshold, 5.9 GHz carrier, alpha = 1.68, 15 m break point,
    RX 50 m left of the intersection, 0.01 vehicles/m, 1 km max radius.
    """
    base = SystemDefaults(
        p0_dbm=20.0,
        n0_dbm=-99.0,
        beta_db=8.0,
        f0_ghz=5.9,
        d0_m=10.0,
        delta_m=15.0,
        alpha=1.68,
        nlos_severity_r=nlos_severity_r,
        p_target=0.9,
        rx_offset_m=-50.0,
        d_max_m=120.0,
        lambda_per_m=0.01,
        r_max_m=1000.0,
    )
    return replace(base, **overrides) if overrides else base


def build_channel_params(defaults: SystemDefaults) -> ChannelParams:
    """Derive the linear-scale channel constants from a configuration.

    The LOS/WLOS coefficient is ``PL_REF_DB + 10*alpha`` dB and the NLOS
    coefficient is ``PL_REF_DB + 7*alpha + 10*log10(r * delta^alpha)`` dB,
    with r = ``nlos_severity_r``. Raises ValueError when the resulting
    coefficients violate the NLOS-more-severe-than-WLOS inequality.
    """
    d = defaults
    a_los_db = PL_REF_DB + 10.0 * d.alpha
    a_nlos_db = PL_REF_DB + 7.0 * d.alpha + 10.0 * math.log10(
        d.nlos_severity_r * d.delta_m**d.alpha
    )
    return ChannelParams(
        alpha=d.alpha,
        a_los=db_to_linear(a_los_db),
        a_nlos=db_to_linear(a_nlos_db),
        delta=d.delta_m,
        beta=db_to_linear(d.beta_db),
        gamma0=db_to_linear(d.n0_dbm - d.p0_dbm),
    )
