"""FastAPI service exposing evaluation, design sweeps, and MC validation.

Domain validation failures map to HTTP 400, infeasible designs to 409;
request-shape errors surface as FastAPI's usual 422.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__
from ..analytic import success_probability
from ..design import InfeasibleDesignError, sweep_fig3, sweep_fig4
from ..geometry import classify_link, manhattan, tx_from_manhattan
from ..oracles import run_mc_validation
from ..pathloss import DEFAULT_MIN_SEPARATION_M
from ..tables import build_manifest, render_csv, sig6
from .models import (
    EvalRequest,
    EvalResponse,
    Fig3Response,
    Fig3RowModel,
    Fig4Response,
    Fig4RowModel,
    ManifestModel,
    McCheckRowModel,
    McValidateRequest,
    McValidateResponse,
    PositionSpec,
    SweepRequest,
    VersionResponse,
)

EVAL_HEADER = ["p_noint", "p_x", "p_y", "p_c", "link_class", "zeta", "kappa"]
FIG3_HEADER = ["distance", "R", "p_i_star", "feasible"]
FIG4_HEADER = ["panel", "R", "distance", "p_i_star", "outage"]
MC_HEADER = [
    "scenario", "tx_road", "tx_offset", "radius", "p_i", "trials", "seed",
    "mc_mean", "std_error", "analytic_p_c", "abs_diff", "three_sigma", "pass",
]


def _manifest(config_dump: dict, r: float, seed: int | None = None) -> ManifestModel:
    m = build_manifest(
        config_dump,
        tool_version=__version__,
        nlos_severity_r=r,
        seed=seed,
        min_separation_m=DEFAULT_MIN_SEPARATION_M,
    )
    return ManifestModel(**m.to_dict())


def _position_spec(pos) -> PositionSpec:
    if pos.on_horizontal:
        return PositionSpec(road="horizontal", offset=pos.x)
    return PositionSpec(road="vertical", offset=pos.y)


def _fig4_eval_distances(doc) -> list[float]:
    step = doc.sweep.eval_step_m
    d_max = doc.geometry.d_max_m
    distances = {round(k * step, 9) for k in range(1, int(d_max / step) + 1)}
    distances.update(d for d in doc.sweep.distances_m if 0.0 < d <= d_max)
    jump = abs(doc.geometry.rx_offset_m) + doc.propagation.delta_m
    for probe in (jump - 0.01, jump + 0.01):
        if 0.0 < probe <= d_max:
            distances.add(probe)
    return sorted(distances)


def create_app() -> FastAPI:
    app = FastAPI(title="crossfire", version=__version__)

    @app.get("/version", response_model=VersionResponse)
    def version() -> VersionResponse:
        return VersionResponse(name="crossfire", version=__version__)

    @app.post("/eval", response_model=EvalResponse)
    def eval_link(req: EvalRequest) -> EvalResponse:
        doc = req.config
        try:
            defaults = doc.to_defaults()
            params = doc.channel_params()
            rx = req.rx.to_position() if req.rx is not None else doc.rx_position()
            if req.tx is not None:
                tx = req.tx.to_position()
            else:
                tx = tx_from_manhattan(req.tx_manhattan, rx, defaults.d_max_m)
            if doc.traffic.p_i is None:
                raise ValueError(
                    "traffic.p_i is required for a single evaluation; set it in the config"
                )
            template = doc.template_scenario(params)
            scenario = replace(template, tx=tx, rx=rx)
            b = success_probability(scenario)
            link = classify_link(tx, rx, params.delta)
        except InfeasibleDesignError as e:
            raise HTTPException(status_code=409, detail=str(e))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
        csv = render_csv(
            EVAL_HEADER,
            [[b.p_noint, b.p_x, b.p_y, b.p_c, str(link), b.zeta, b.kappa]],
        )
        return EvalResponse(
            tx=_position_spec(tx),
            rx=_position_spec(rx),
            manhattan=manhattan(tx, rx),
            link_class=str(link),
            p_noint=b.p_noint,
            p_x=b.p_x,
            p_y=b.p_y,
            p_c=b.p_c,
            zeta=b.zeta,
            kappa=b.kappa,
            csv=csv,
            manifest=_manifest(doc.model_dump(), defaults.nlos_severity_r),
        )

    @app.post("/fig3", response_model=Fig3Response)
    def fig3(req: SweepRequest) -> Fig3Response:
        doc = req.config
        try:
            defaults = doc.to_defaults()
            env = doc.template_scenario()
            r_grid = np.linspace(
                defaults.delta_m, defaults.r_max_m, doc.sweep.r_grid_points
            ).tolist()
            rows = sweep_fig3(
                env, doc.sweep.distances_m, r_grid, defaults.p_target, req.workers
            )
        except InfeasibleDesignError as e:
            raise HTTPException(status_code=409, detail=str(e))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
        csv = render_csv(FIG3_HEADER, rows)
        return Fig3Response(
            rows=[Fig3RowModel(**r._asdict()) for r in rows],
            csv=csv,
            manifest=_manifest(doc.model_dump(), defaults.nlos_severity_r),
        )

    @app.post("/fig4", response_model=Fig4Response)
    def fig4(req: SweepRequest) -> Fig4Response:
        doc = req.config
        try:
            defaults = doc.to_defaults()
            env = doc.template_scenario()
            eval_distances = _fig4_eval_distances(doc)
            rows = []
            for panel in doc.sweep.distances_m:
                design_tx = tx_from_manhattan(panel, env.rx, defaults.d_max_m)
                panel_rows = sweep_fig4(
                    env, design_tx, doc.sweep.r_values, eval_distances,
                    defaults.p_target, req.workers,
                )
                rows.extend(
                    Fig4RowModel(
                        panel=panel, radius=r.radius, distance=r.distance,
                        p_i_star=r.p_i_star, outage=r.outage,
                    )
                    for r in panel_rows
                )
        except InfeasibleDesignError as e:
            raise HTTPException(status_code=409, detail=str(e))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
        csv = render_csv(
            FIG4_HEADER,
            [[r.panel, r.radius, r.distance, r.p_i_star, r.outage] for r in rows],
            formatters=[None, None, None, None, sig6],
        )
        return Fig4Response(
            rows=rows,
            csv=csv,
            manifest=_manifest(doc.model_dump(), defaults.nlos_severity_r),
        )

    @app.post("/mc-validate", response_model=McValidateResponse)
    def mc_validate(req: McValidateRequest) -> McValidateResponse:
        doc = req.config
        try:
            defaults = doc.to_defaults()
            rows = run_mc_validation(defaults, req.trials, req.seed)
        except InfeasibleDesignError as e:
            raise HTTPException(status_code=409, detail=str(e))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
        models = [
            McCheckRowModel(
                scenario=r.label,
                tx_road="horizontal" if r.tx.on_horizontal else "vertical",
                tx_offset=r.tx.x if r.tx.on_horizontal else r.tx.y,
                radius=r.radius,
                p_i=r.p_i,
                trials=r.trials,
                seed=r.seed,
                mc_mean=r.mc_mean,
                std_error=r.std_error,
                analytic_p_c=r.analytic_p_c,
                abs_diff=r.abs_diff,
                three_sigma=r.three_sigma,
                passed=r.passed,
            )
            for r in rows
        ]
        n_pass = sum(r.passed for r in rows)
        required = max(0, len(rows) - 2)
        csv = render_csv(
            MC_HEADER,
            [
                [
                    m.scenario, m.tx_road, m.tx_offset, m.radius, m.p_i, m.trials,
                    m.seed, m.mc_mean, m.std_error, m.analytic_p_c, m.abs_diff,
                    m.three_sigma, m.passed,
                ]
                for m in models
            ],
        )
        return McValidateResponse(
            rows=models,
            n_pass=n_pass,
            n_total=len(rows),
            required_passes=required,
            passed=n_pass >= required,
            csv=csv,
            manifest=_manifest(
                doc.model_dump(), defaults.nlos_severity_r, seed=req.seed
            ),
        )

    return app


app = create_app()
