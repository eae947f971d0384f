"""Canonical CSV rendering and the run manifest.

CSV output is byte-deterministic given (config, seed, version): floats are
rendered with their shortest round-trip representation (locale-independent,
'.' decimal separator) unless a column pins a format, rows keep grid order,
and lines end with a single newline.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from typing import Any, Callable, Sequence


def config_digest(document: dict) -> str:
    """SHA-256 over the canonical JSON form of the configuration document."""
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility envelope emitted alongside every CSV."""

    config_digest: str
    tool_version: str
    seed: int | None
    min_separation_m: float
    nlos_severity_r: float
    generated_at: str

    def to_dict(self) -> dict:
        return asdict(self)


def build_manifest(
    document: dict,
    tool_version: str,
    nlos_severity_r: float,
    seed: int | None = None,
    min_separation_m: float = 0.1,
) -> RunManifest:
    return RunManifest(
        config_digest=config_digest(document),
        tool_version=tool_version,
        seed=seed,
        min_separation_m=min_separation_m,
        nlos_severity_r=nlos_severity_r,
        generated_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def format_value(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(float(v))  # shortest round-trip; also normalizes numpy scalars
    return str(v)


def sig6(v: Any) -> str:
    """Six significant digits, for outage-style columns."""
    if v is None:
        return ""
    return format(v, ".6g")


def render_csv(
    header: Sequence[str],
    rows: Sequence[Sequence[Any]],
    formatters: Sequence[Callable[[Any], str] | None] | None = None,
) -> str:
    """Render a table to CSV text with a header row and '\\n' line endings."""
    if formatters is None:
        formatters = [None] * len(header)
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError(
                f"row has {len(row)} cells but the header names {len(header)} columns"
            )
        cells = [
            (fmt or format_value)(value) for value, fmt in zip(row, formatters)
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
