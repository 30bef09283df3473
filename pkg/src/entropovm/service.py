"""HTTP facade over the scenario engine.

POST /run executes a scenario in-process and returns the full report; the
request and response bodies are the pydantic models below. The CLI talks to
this service when given --url, and runs the same engine directly otherwise.
"""

from __future__ import annotations

from typing import Any

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .scenarios import ScenarioConfig, run_scenario, scenario_names


class RunRequest(BaseModel):
    scenario: str
    dim: int | None = None
    trials: int | None = None
    seed: int = 0
    tolerance: float = 1e-8
    B: float | None = None
    t: float | None = None
    nbar_grid: str | None = None

    def to_config(self) -> ScenarioConfig:
        return ScenarioConfig(
            dim=self.dim,
            trials=self.trials,
            seed=self.seed,
            tolerance=self.tolerance,
            b_field=self.B,
            t_param=self.t,
            nbar_grid=self.nbar_grid,
        )


class RecordModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    index: int
    label: str
    inputs: dict[str, Any]
    lhs: float
    rhs: float
    deficit: float
    passed: bool = Field(alias="pass")


class AggregateModel(BaseModel):
    min_deficit: float
    max_violation: float
    count: int
    passed: int
    failed: int


class ReportModel(BaseModel):
    scenario: str
    config: dict[str, Any]
    records: list[RecordModel]
    aggregate: AggregateModel
    timing_ms: float


class ScenarioList(BaseModel):
    scenarios: list[str]


class Health(BaseModel):
    status: str
    version: str


app = FastAPI(title="entropovm", version=__version__)


@app.get("/health", response_model=Health)
def health() -> Health:
    return Health(status="ok", version=__version__)


@app.get("/scenarios", response_model=ScenarioList)
def list_scenarios() -> ScenarioList:
    return ScenarioList(scenarios=scenario_names())


@app.post("/run", response_model=ReportModel)
def run(request: RunRequest) -> ReportModel:
    try:
        report = run_scenario(request.scenario, request.to_config())
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return ReportModel.model_validate(report.to_dict())
