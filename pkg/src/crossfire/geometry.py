"""Road-constrained positions and link classification on a two-road crossing.

The horizontal and vertical roads meet at the origin. Every position lies
on one of the two roads, so one coordinate is exactly zero; the receiver is
always on the horizontal road.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class LinkClass(enum.Enum):
    LOS = "LOS"
    WLOS = "WLOS"
    NLOS = "NLOS"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RoadPosition:
    """A point on one of the two roads (x*y = 0 exactly)."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"coordinates must be finite, got ({self.x}, {self.y})")
        if self.x != 0.0 and self.y != 0.0:
            raise ValueError(
                f"position ({self.x}, {self.y}) is off-road: one coordinate must be exactly 0"
            )

    @classmethod
    def horizontal(cls, x: float) -> "RoadPosition":
        return cls(x, 0.0)

    @classmethod
    def vertical(cls, y: float) -> "RoadPosition":
        return cls(0.0, y)

    @property
    def on_horizontal(self) -> bool:
        return self.y == 0.0


def manhattan(a: RoadPosition, b: RoadPosition) -> float:
    """l1 distance between two road positions, meters."""
    return abs(a.x - b.x) + abs(a.y - b.y)


def tx_from_manhattan(
    d: float, rx: RoadPosition, d_max: float | None = None
) -> RoadPosition:
    """Place a transmitter at Manhattan distance ``d`` from ``rx``.

    The transmitter moves from the receiver toward the intersection and
    continues onto the vertical road: for d <= |rx.x| it sits on the
    horizontal road at rx.x + d, beyond that on the vertical road at
    d - |rx.x|. Requires the receiver on the horizontal road at rx.x < 0.
    """
    if not rx.on_horizontal or not rx.x < 0.0:
        raise ValueError(
            f"receiver must be on the horizontal road with negative offset, got ({rx.x}, {rx.y})"
        )
    if not d > 0.0:
        raise ValueError(f"Manhattan distance must be positive, got {d}")
    if d_max is not None and d > d_max:
        raise ValueError(f"Manhattan distance {d} exceeds the allowed maximum {d_max}")
    reach = abs(rx.x)
    if d <= reach:
        return RoadPosition.horizontal(rx.x + d)
    return RoadPosition.vertical(d - reach)


def classify_link(tx: RoadPosition, rx: RoadPosition, delta: float) -> LinkClass:
    """Classify the tx->rx link as LOS, WLOS, or NLOS.

    Same-road links are LOS. Cross-road links are WLOS when either end is
    within the break-point distance ``delta`` of the intersection, NLOS
    otherwise; the boundary min(|tx.y|, |rx.x|) = delta counts as WLOS.
    """
    if not rx.on_horizontal:
        raise ValueError("receiver must be on the horizontal road")
    if tx == rx:
        raise ValueError("transmitter and receiver coincide")
    if not delta > 0.0:
        raise ValueError(f"break-point distance must be positive, got {delta}")
    if tx.on_horizontal:
        return LinkClass.LOS
    if min(abs(tx.y), abs(rx.x)) <= delta:
        return LinkClass.WLOS
    return LinkClass.NLOS
