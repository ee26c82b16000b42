"""Stateless JSON-over-HTTP service around one immutable model.

Routes (all under /api): model, predict, sweep, grid, montecarlo, compare,
verify-paper. Malformed bodies return 400 with field-level messages;
out-of-domain inputs without the explicit flag return 422.
"""
import numpy as np
from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import ENGINE_VERSION, core_net, paper_model, scenario
from .core_net import ScenarioInput
from .errors import (
    EngineError,
    InvalidRequestError,
    InvalidValueError,
    ShapeError,
    UnknownVariableError,
)


class PredictBody(BaseModel):
    model_config = {"extra": "forbid"}
    values: list[float] = Field(min_length=6, max_length=6)
    allow_out_of_domain: bool = False


class SweepBody(BaseModel):
    model_config = {"extra": "forbid"}
    variable: str
    start: float = 0.0
    end: float = 1.0
    steps: int = 11
    base: list[float] = Field(min_length=6, max_length=6)
    allow_out_of_domain: bool = False


class GridBody(BaseModel):
    model_config = {"extra": "forbid"}
    var_a: str
    var_b: str
    steps_a: int = 5
    steps_b: int = 5
    base: list[float] = Field(min_length=6, max_length=6)
    allow_out_of_domain: bool = False


class DistributionBody(BaseModel):
    model_config = {"extra": "forbid"}
    kind: str
    params: list[float]


class MonteCarloBody(BaseModel):
    model_config = {"extra": "forbid"}
    distributions: dict[str, DistributionBody] = {}
    samples: int = 10000
    seed: int = 0


class VariantBody(BaseModel):
    model_config = {"extra": "forbid"}
    label: str
    deltas: dict[str, float]


class CompareBody(BaseModel):
    model_config = {"extra": "forbid"}
    baseline: list[float] = Field(min_length=6, max_length=6)
    variants: list[VariantBody] = []


class VerifyBody(BaseModel):
    model_config = {"extra": "forbid"}
    values: list[float] = Field(min_length=6, max_length=6)
    tolerance: float = 1e-6
    allow_out_of_domain: bool = False


def _make_input(values, allow_out_of_domain):
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise HTTPException(400, "input values must be finite")
    if not allow_out_of_domain and (np.any(values < 0.0) or np.any(values > 1.0)):
        raise HTTPException(
            422,
            "input values outside [0, 1]; set allow_out_of_domain to evaluate anyway",
        )
    return ScenarioInput(values, allow_out_of_domain=allow_out_of_domain)


def create_app(spec):
    app = FastAPI(title="acceptance-engine", version=ENGINE_VERSION)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        errors = [
            {"field": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": errors})

    @app.exception_handler(EngineError)
    async def on_engine_error(request: Request, exc: EngineError):
        status = 400
        if isinstance(exc, (UnknownVariableError, InvalidRequestError,
                            ShapeError, InvalidValueError)):
            status = 400
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    @app.get("/api/model")
    def get_model():
        return {
            "engine_version": ENGINE_VERSION,
            "input_names": list(spec.input_names),
            "hidden_size": spec.hidden_size,
            "output_activation": spec.output_activation,
            "variables": [
                {"name": m.name, "polarity": m.polarity, "measurement": m.measurement}
                for m in paper_model.all_variable_meta()
            ],
        }

    @app.post("/api/predict")
    def predict(body: PredictBody):
        inp = _make_input(body.values, body.allow_out_of_domain)
        result = core_net.forward(spec, inp)
        return {
            "engine_version": ENGINE_VERSION,
            "acceptance": result.acceptance,
            "hidden_pre": result.hidden_pre.tolist(),
            "hidden_post": result.hidden_post.tolist(),
            "gradient": result.input_gradient.tolist(),
        }

    @app.post("/api/sweep")
    def do_sweep(body: SweepBody):
        base = _make_input(body.base, body.allow_out_of_domain)
        req = scenario.SweepRequest(
            variable=body.variable, start=body.start, end=body.end,
            steps=body.steps, base=base,
        )
        points = scenario.sweep(spec, req)
        return {
            "engine_version": ENGINE_VERSION,
            "variable": body.variable,
            "points": [[x, y] for x, y in points],
        }

    @app.post("/api/grid")
    def do_grid(body: GridBody):
        base = _make_input(body.base, body.allow_out_of_domain)
        values_a, values_b, matrix = scenario.grid_sweep(
            spec, body.var_a, body.var_b, body.steps_a, body.steps_b, base
        )
        return {
            "engine_version": ENGINE_VERSION,
            "var_a": body.var_a,
            "var_b": body.var_b,
            "values_a": values_a,
            "values_b": values_b,
            "matrix": matrix,
        }

    @app.post("/api/montecarlo")
    def do_montecarlo(body: MonteCarloBody):
        unknown = set(body.distributions) - set(spec.input_names)
        if unknown:
            raise HTTPException(400, f"unknown variables in distributions: {sorted(unknown)}")
        dists = tuple(
            scenario.Distribution(d.kind, tuple(d.params))
            if (d := body.distributions.get(name)) is not None
            else scenario.Distribution("uniform", (0.0, 1.0))
            for name in spec.input_names
        )
        req = scenario.MonteCarloRequest(
            distributions=dists, samples=body.samples, seed=body.seed
        )
        summary = scenario.monte_carlo(spec, req)
        return {
            "engine_version": ENGINE_VERSION,
            "mean": summary.mean,
            "std": summary.std,
            "min": summary.min,
            "max": summary.max,
            "quantiles": {str(q): v for q, v in summary.quantiles.items()},
            "samples": summary.samples,
        }

    @app.post("/api/compare")
    def do_compare(body: CompareBody):
        base = _make_input(body.baseline, False)
        comparison = scenario.compare(
            spec, base, [(v.label, v.deltas) for v in body.variants]
        )
        return {
            "engine_version": ENGINE_VERSION,
            "baseline": {
                "values": comparison.baseline_input.values.tolist(),
                "acceptance": comparison.baseline_acceptance,
            },
            "variants": [
                {
                    "label": v.label,
                    "values": v.input.values.tolist(),
                    "acceptance": v.acceptance,
                    "delta": v.delta,
                    "clamped": v.clamped,
                }
                for v in comparison.variants
            ],
        }

    @app.post("/api/verify-paper")
    def verify_paper(body: VerifyBody):
        if not body.tolerance > 0:
            raise HTTPException(400, "tolerance must be positive")
        inp = _make_input(body.values, body.allow_out_of_domain)
        report = paper_model.verify_claimed_output(inp, body.tolerance)
        return {
            "engine_version": ENGINE_VERSION,
            "computed_output": report.computed_output,
            "claimed_output": report.claimed_output,
            "absolute_deviation": report.absolute_deviation,
            "matches": report.matches,
            "note": report.note,
        }

    return app
