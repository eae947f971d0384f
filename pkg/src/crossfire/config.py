"""The JSON configuration document.

One document with sections {system, propagation, geometry, traffic, sweep}.
Every field defaults to the baseline evaluation parameters except the NLOS
severity, which must be given explicitly. Unknown fields anywhere are
rejected.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from .analytic import Scenario
from .geometry import RoadPosition
from .params import ChannelParams, SystemDefaults, build_channel_params


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SystemSection(_Section):
    p0_dbm: float = 20.0
    n0_dbm: float = -99.0
    beta_db: float = 8.0
    p_target: float = Field(default=0.9, gt=0.0, lt=1.0)


class PropagationSection(_Section):
    f0_ghz: float = Field(default=5.9, gt=0.0)
    d0_m: float = Field(default=10.0, gt=0.0)
    delta_m: float = Field(default=15.0, gt=0.0)
    alpha: float = Field(default=1.68, gt=1.0)
    nlos_severity_r: float = Field(gt=0.0, lt=1.0)


class GeometrySection(_Section):
    rx_offset_m: float = -50.0
    d_max_m: float = Field(default=120.0, gt=0.0)


class TrafficSection(_Section):
    lambda_per_m: float = Field(default=0.01, ge=0.0)
    r_max_m: float = Field(default=1000.0, gt=0.0)
    # single-evaluation extras: Aloha probability of interferers and the
    # interference radius to use (defaults to r_max_m)
    p_i: float | None = Field(default=None, ge=0.0, le=1.0)
    radius_m: float | None = Field(default=None, gt=0.0)


class SweepSection(_Section):
    distances_m: list[float] = Field(
        default_factory=lambda: [20.0, 40.0, 60.0, 80.0, 100.0, 120.0]
    )
    r_values: list[float] = Field(default_factory=lambda: [100.0, 500.0, 1000.0])
    r_grid_points: int = Field(default=50, ge=2)
    eval_step_m: float = Field(default=1.0, gt=0.0)


class PositionSpec(_Section):
    road: Literal["horizontal", "vertical"]
    offset: float

    def to_position(self) -> RoadPosition:
        if self.road == "horizontal":
            return RoadPosition.horizontal(self.offset)
        return RoadPosition.vertical(self.offset)


class ConfigDoc(_Section):
    """Top-level configuration document."""

    system: SystemSection = Field(default_factory=SystemSection)
    propagation: PropagationSection
    geometry: GeometrySection = Field(default_factory=GeometrySection)
    traffic: TrafficSection = Field(default_factory=TrafficSection)
    sweep: SweepSection = Field(default_factory=SweepSection)

    def to_defaults(self) -> SystemDefaults:
        return SystemDefaults(
            p0_dbm=self.system.p0_dbm,
            n0_dbm=self.system.n0_dbm,
            beta_db=self.system.beta_db,
            f0_ghz=self.propagation.f0_ghz,
            d0_m=self.propagation.d0_m,
            delta_m=self.propagation.delta_m,
            alpha=self.propagation.alpha,
            nlos_severity_r=self.propagation.nlos_severity_r,
            p_target=self.system.p_target,
            rx_offset_m=self.geometry.rx_offset_m,
            d_max_m=self.geometry.d_max_m,
            lambda_per_m=self.traffic.lambda_per_m,
            r_max_m=self.traffic.r_max_m,
        )

    def channel_params(self) -> ChannelParams:
        return build_channel_params(self.to_defaults())

    def rx_position(self) -> RoadPosition:
        return RoadPosition.horizontal(self.geometry.rx_offset_m)

    def template_scenario(self, params: ChannelParams | None = None) -> Scenario:
        """A scenario carrying this document's channel and traffic context.

        TX sits at a placeholder position; callers override geometry, radii,
        and the Aloha probability as needed.
        """
        params = params or self.channel_params()
        rx = self.rx_position()
        radius = self.traffic.radius_m if self.traffic.radius_m is not None else self.traffic.r_max_m
        return Scenario(
            tx=RoadPosition.vertical(max(self.propagation.delta_m, 1.0)),
            rx=rx,
            params=params,
            lambda_x=self.traffic.lambda_per_m,
            lambda_y=self.traffic.lambda_per_m,
            r_x=radius,
            r_y=radius,
            p_i=self.traffic.p_i if self.traffic.p_i is not None else 0.0,
        )
