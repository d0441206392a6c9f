"""Service operations, shared by the HTTP app and the in-process CLI."""

from __future__ import annotations

import numpy as np

from ..checks import run_suite
from ..errors import EpsilonOutOfRange, ValidationError
from ..game import best_response, br_dynamics, verify_equilibrium
from ..instances import Instance
from ..measures import (
    classic_power,
    mixed_strategy_power,
    pad_with_loss,
    power_eps,
    power_exact,
    power_series,
    standard_iteration,
)
from ..oracles import enumerate_pure_support, grid_best_response, particle_estimate
from . import models

SERIES_TOL = 1e-10
SERIES_K_MAX = 10000
STANDARD_TOL = 1e-9
STANDARD_K_MAX = 1000


def _require_epsilon(req_epsilon: float | None, inst: Instance) -> float:
    epsilon = req_epsilon if req_epsilon is not None else inst.epsilon
    if epsilon is None:
        raise EpsilonOutOfRange(
            "epsilon is required: pass it explicitly or set it in the instance"
        )
    return epsilon


def _require_game(inst: Instance) -> float:
    if inst.preferences is None:
        raise ValidationError("instance is missing 'preferences', required for the game")
    if inst.epsilon is None:
        raise ValidationError("instance is missing 'epsilon', required for the game")
    return inst.epsilon


def _agent_index(agent: int, n: int) -> int:
    if not 1 <= agent <= n:
        raise ValidationError(f"agent index {agent} outside 1..{n}")
    return agent - 1


def handle_power(req: models.PowerRequest) -> models.PowerResponse:
    inst = req.instance.to_instance()
    matrix, f = inst.matrix, inst.f
    n = matrix.n
    if req.measure == "v":
        if req.mode == "exact":
            res = power_exact(matrix, f)
        elif req.mode == "epsilon":
            res = power_eps(matrix, f, _require_epsilon(req.epsilon, inst))
        elif req.mode == "series":
            res = power_series(matrix, f,
                               tol=req.tol if req.tol is not None else SERIES_TOL,
                               k_max=req.k_max if req.k_max is not None else SERIES_K_MAX)
        else:
            raise ValidationError(f"unknown mode {req.mode!r}; expected exact, epsilon, or series")
        power, method = res.power, res.method
        sum_f = f.total
        return models.PowerResponse(
            n=n, measure="v", mode=method.kind, power=power.v.tolist(),
            loss=power.loss, epsilon=method.epsilon, k_used=method.k_used,
            converged=method.converged, residual=res.residual,
            sum_power=power.total, sum_f=sum_f,
            conservation_gap=abs(power.total - sum_f),
        )
    # the comparison measures are defined with unit inherent weights
    if req.measure == "classic":
        vec = classic_power(matrix)
        k_used = converged = None
    elif req.measure == "standard":
        vec, converged, k_used = standard_iteration(
            matrix,
            k_max=req.k_max if req.k_max is not None else STANDARD_K_MAX,
            tol=req.tol if req.tol is not None else STANDARD_TOL)
    elif req.measure == "ms":
        vec = mixed_strategy_power(matrix)
        k_used = converged = None
    else:
        raise ValidationError(
            f"unknown measure {req.measure!r}; expected v, classic, standard, or ms")
    power = pad_with_loss(vec, float(n))
    return models.PowerResponse(
        n=n, measure=req.measure, mode=None, power=power.v.tolist(),
        loss=power.loss, k_used=k_used, converged=converged,
        sum_power=power.total, sum_f=float(n),
        conservation_gap=abs(power.total - float(n)),
    )


def handle_dynamics(req: models.DynamicsRequest) -> models.DynamicsResponse:
    inst = req.instance.to_instance()
    epsilon = _require_game(inst)
    traj = br_dynamics(inst.matrix, inst.preferences, epsilon, inst.space,
                       max_iters=req.max_iters, tol=req.tol, seed=req.seed)
    return models.DynamicsResponse(
        status=traj.status,
        rounds=traj.rounds,
        steps=[models.DynamicsStep(
            iteration=s.iteration, agent=s.agent + 1,
            new_profile=s.new_profile.tolist(), regret=s.regret,
        ) for s in traj.steps],
        final_profiles=traj.final.entries.T.tolist(),
        regrets=traj.report.regrets.tolist(),
        max_regret=traj.report.max_regret,
        is_epsilon_nash=traj.report.is_epsilon_nash(req.tol),
    )


def handle_verify(req: models.VerifyRequest) -> models.VerifyResponse:
    inst = req.instance.to_instance()
    epsilon = _require_game(inst)
    report = verify_equilibrium(inst.matrix, inst.preferences, epsilon,
                                inst.space, tol=req.tol)
    return models.VerifyResponse(
        regrets=report.regrets.tolist(),
        utilities=report.utilities.tolist(),
        best_values=report.best_values.tolist(),
        max_regret=report.max_regret,
        tol=req.tol,
        is_epsilon_nash=report.is_epsilon_nash(req.tol),
    )


def handle_best_response(req: models.BestResponseRequest) -> models.BestResponseResponse:
    inst = req.instance.to_instance()
    epsilon = _require_game(inst)
    i = _agent_index(req.agent, inst.n)
    response = best_response(i, inst.matrix, inst.preferences.row(i),
                             epsilon, inst.space)
    return models.BestResponseResponse(
        agent=req.agent,
        argmax=[j + 1 for j in response.argmax_vertices],
        value=response.value,
        vertex_values=[models.VertexValue(target=j + 1, value=v)
                       for j, v in sorted(response.vertex_values.items())],
    )


def handle_check(req: models.CheckRequest) -> models.CheckResponse:
    report = run_suite(req.suite, n=req.n, trials=req.trials,
                       seed=req.seed, threads=req.threads, tol=req.tol)
    return models.CheckResponse(
        suite=report.suite,
        passed=report.passed,
        trials=report.trials,
        seed=report.seed,
        notes=report.notes,
        failures=[models.CheckFailurePayload(
            trial=f.trial, detail=f.detail, instance=f.instance,
        ) for f in report.failures],
    )


def handle_particles(req: models.ParticlesRequest) -> models.ParticlesResponse:
    inst = req.instance.to_instance()
    epsilon = _require_epsilon(req.epsilon, inst)
    est = particle_estimate(inst.matrix, inst.f.f, epsilon,
                            dt=req.dt, t_max=req.t_max, seed=req.seed)
    reference = power_eps(inst.matrix, inst.f, epsilon).power.v
    safe_se = np.where(est.std_error > 0, est.std_error, np.inf)
    max_z = float(np.abs((est.rates - reference) / safe_se).max())
    return models.ParticlesResponse(
        rates=est.rates.tolist(),
        std_error=est.std_error.tolist(),
        steps=est.steps,
        seed=est.seed,
        reference=reference.tolist(),
        max_z=max_z,
    )


def handle_grid(req: models.GridRequest) -> models.GridResponse:
    inst = req.instance.to_instance()
    epsilon = _require_epsilon(req.epsilon, inst)
    if inst.preferences is None:
        raise ValidationError("instance is missing 'preferences', required for the grid oracle")
    i = _agent_index(req.agent, inst.n)
    w_i = inst.preferences.row(i)
    profile, value = grid_best_response(i, inst.matrix, w_i, epsilon, step=req.step)
    vertex = best_response(i, inst.matrix, w_i, epsilon, inst.space)
    return models.GridResponse(
        agent=req.agent,
        profile=profile.tolist(),
        value=value,
        vertex_value=vertex.value,
        vertex_argmax=[j + 1 for j in vertex.argmax_vertices],
    )


def handle_enumerate(req: models.EnumerateRequest) -> models.EnumerateResponse:
    inst = req.instance.to_instance()
    outcomes = enumerate_pure_support(inst.matrix)
    total_p = float(sum(p for _, p in outcomes))
    mixed = mixed_strategy_power(inst.matrix)
    limit = req.limit if req.limit is not None else len(outcomes)
    echoed = [models.PureOutcome(
        targets=[int(np.argmax(A[:, j])) + 1 for j in range(inst.n)],
        probability=p,
    ) for A, p in outcomes[:limit]]
    return models.EnumerateResponse(
        count=len(outcomes),
        probability_sum=total_p,
        outcomes=echoed,
        mixed_power=mixed.tolist(),
    )
