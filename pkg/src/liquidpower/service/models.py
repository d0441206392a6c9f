"""Request and response schemas for the measurement service.

The instance payload mirrors the instance file format: agent-major
profile rows, optional f / epsilon / preferences / neighborhoods, and
1-based agent indices in neighborhoods. Response payloads also use
1-based agent indices so they read the same as the files.
"""

from __future__ import annotations

from pydantic import BaseModel

from ..instances import Instance, parse_instance


class InstancePayload(BaseModel):
    n: int
    profiles: list[list[float]]
    f: list[float] | None = None
    epsilon: float | None = None
    preferences: list[list[float]] | None = None
    neighborhoods: list[list[int]] | None = None

    def to_instance(self) -> Instance:
        return parse_instance(self.model_dump(exclude_none=True))


class PowerRequest(BaseModel):
    instance: InstancePayload
    measure: str = "v"  # v | classic | standard | ms
    mode: str = "exact"  # exact | epsilon | series (measure v only)
    epsilon: float | None = None
    tol: float | None = None
    k_max: int | None = None


class PowerResponse(BaseModel):
    n: int
    measure: str
    mode: str | None = None
    power: list[float]
    loss: float
    epsilon: float | None = None
    k_used: int | None = None
    converged: bool | None = None
    residual: float | None = None
    sum_power: float
    sum_f: float
    conservation_gap: float


class DynamicsRequest(BaseModel):
    instance: InstancePayload
    max_iters: int = 100
    tol: float = 1e-6
    seed: int = 0


class DynamicsStep(BaseModel):
    iteration: int
    agent: int  # 1-based
    new_profile: list[float]
    regret: float


class DynamicsResponse(BaseModel):
    status: str
    rounds: int
    steps: list[DynamicsStep]
    final_profiles: list[list[float]]  # agent-major rows
    regrets: list[float]
    max_regret: float
    is_epsilon_nash: bool


class VerifyRequest(BaseModel):
    instance: InstancePayload
    tol: float = 1e-6


class VerifyResponse(BaseModel):
    regrets: list[float]
    utilities: list[float]
    best_values: list[float]
    max_regret: float
    tol: float
    is_epsilon_nash: bool


class BestResponseRequest(BaseModel):
    instance: InstancePayload
    agent: int  # 1-based


class VertexValue(BaseModel):
    target: int  # 1-based
    value: float


class BestResponseResponse(BaseModel):
    agent: int  # 1-based
    argmax: list[int]  # 1-based
    value: float
    vertex_values: list[VertexValue]


class CheckRequest(BaseModel):
    suite: str
    n: int | None = None
    trials: int | None = None
    seed: int | None = None
    threads: int = 1
    tol: float | None = None


class CheckFailurePayload(BaseModel):
    trial: int
    detail: str
    instance: dict


class CheckResponse(BaseModel):
    suite: str
    passed: bool
    trials: int
    seed: int
    notes: dict[str, float]
    failures: list[CheckFailurePayload]


class ParticlesRequest(BaseModel):
    instance: InstancePayload
    epsilon: float | None = None  # falls back to the instance epsilon
    dt: float = 0.01
    t_max: float = 2000.0
    seed: int = 0


class ParticlesResponse(BaseModel):
    rates: list[float]
    std_error: list[float]
    steps: int
    seed: int
    reference: list[float]  # penalized measure on the same instance
    max_z: float


class GridRequest(BaseModel):
    instance: InstancePayload
    agent: int  # 1-based
    epsilon: float | None = None
    step: float = 0.05


class GridResponse(BaseModel):
    agent: int
    profile: list[float]
    value: float
    vertex_value: float
    vertex_argmax: list[int]  # 1-based


class EnumerateRequest(BaseModel):
    instance: InstancePayload
    limit: int | None = None  # cap on outcomes echoed back


class PureOutcome(BaseModel):
    targets: list[int]  # 1-based target per agent
    probability: float


class EnumerateResponse(BaseModel):
    count: int
    probability_sum: float
    outcomes: list[PureOutcome]
    mixed_power: list[float]


class ErrorResponse(BaseModel):
    error: str
    message: str
