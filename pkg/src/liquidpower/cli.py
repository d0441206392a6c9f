"""Command-line client for the measurement engine.

Every command builds the same request model the HTTP service accepts and
either calls the handler in-process (default) or posts it to a running
service (--server URL). Output is one JSON document per run, or a small
table with --format plain. Exit codes: 0 ok, 2 validation failure,
3 numerical failure, 4 check-suite violation.

Instance files are JSON, agent-major (row i is the profile of agent i),
with 1-based agent indices; see the instances module for the schema.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

from .errors import LiquidPowerError, NumericalError, ValidationError
from .instances import load_instance
from .service import handlers, models

HTTP_TIMEOUT = 600.0


def _instance_payload(path: str) -> models.InstancePayload:
    inst = load_instance(path)  # validate early so bad files fail as exit 2
    doc = {
        "n": inst.n,
        "profiles": inst.matrix.entries.T.tolist(),
        "f": inst.f.f.tolist(),
    }
    if inst.epsilon is not None:
        doc["epsilon"] = inst.epsilon
    if inst.preferences is not None:
        doc["preferences"] = inst.preferences.w.tolist()
    if inst.space is not None:
        doc["neighborhoods"] = [sorted(t + 1 for t in s)
                                for s in inst.space.neighborhoods]
    return models.InstancePayload(**doc)


def _dispatch(ctx: click.Context, path: str, request, handler) -> dict:
    """Run locally or POST to --server; both return the response dict."""
    server = ctx.obj.get("server")
    if not server:
        return handler(request).model_dump(mode="json")
    url = server.rstrip("/") + path
    try:
        resp = httpx.post(url, json=request.model_dump(mode="json"),
                          timeout=HTTP_TIMEOUT)
    except httpx.HTTPError as exc:
        raise ValidationError(f"cannot reach server {url}: {exc}") from None
    if resp.status_code == 400:
        raise ValidationError(_server_message(resp))
    if resp.status_code == 422:
        raise NumericalError(_server_message(resp))
    if resp.status_code != 200:
        raise LiquidPowerError(f"server returned {resp.status_code}: {resp.text[:500]}")
    return resp.json()


def _server_message(resp: httpx.Response) -> str:
    try:
        body = resp.json()
        return f"{body.get('error', 'error')}: {body.get('message', resp.text)}"
    except ValueError:
        return resp.text


def _emit(ctx: click.Context, doc: dict, plain_lines) -> None:
    if ctx.obj.get("fmt") == "plain":
        for line in plain_lines(doc):
            click.echo(line)
    else:
        click.echo(json.dumps(doc, indent=2))


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Send requests to a running service instead of computing in-process.")
@click.option("--format", "fmt", type=click.Choice(["json", "plain"]), default="json",
              show_default=True, help="Output format.")
@click.pass_context
def cli(ctx, server, fmt):
    """Voting-power measures and delegation games for liquid democracy."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server
    ctx.obj["fmt"] = fmt


def _power_plain(doc: dict):
    yield f"measure={doc['measure']}" + (f" mode={doc['mode']}" if doc.get("mode") else "")
    for i, value in enumerate(doc["power"][:-1]):
        yield f"agent {i + 1}: {value:.12g}"
    yield f"loss: {doc['loss']:.12g}"
    for key in ("epsilon", "k_used", "converged", "residual"):
        if doc.get(key) is not None:
            yield f"{key}: {doc[key]}"
    yield f"sum power: {doc['sum_power']:.12g}  sum f: {doc['sum_f']:.12g}  gap: {doc['conservation_gap']:.3g}"


@cli.command("power")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--exact", "mode", flag_value="exact", default=True,
              help="Exact measure via the restricted solve (default).")
@click.option("--epsilon", type=float, default=None, metavar="E",
              help="Penalized measure with this epsilon.")
@click.option("--series", "series_mode", is_flag=True,
              help="Exact measure via the truncated series.")
@click.option("--tol", type=float, default=None, help="Iteration tolerance (series/standard).")
@click.option("--kmax", "k_max", type=int, default=None, help="Iteration cap (series/standard).")
@click.option("--measure", type=click.Choice(["v", "classic", "standard", "ms"]),
              default="v", show_default=True,
              help="Which measure family; classic/standard/ms use unit weights.")
@click.pass_context
def cmd_power(ctx, instance, mode, epsilon, series_mode, tol, k_max, measure):
    """Compute a voting-power vector for INSTANCE."""
    if series_mode and epsilon is not None:
        raise click.UsageError("--series and --epsilon are mutually exclusive")
    if series_mode:
        mode = "series"
    elif epsilon is not None:
        mode = "epsilon"
    request = models.PowerRequest(
        instance=_instance_payload(instance), measure=measure, mode=mode,
        epsilon=epsilon, tol=tol, k_max=k_max,
    )
    doc = _dispatch(ctx, "/power", request, handlers.handle_power)
    _emit(ctx, doc, _power_plain)


@cli.group("game")
def cmd_game():
    """Delegation-game commands; the instance must carry preferences and epsilon."""


@cmd_game.command("dynamics")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-iters", type=int, default=100, show_default=True)
@click.option("--tol", type=float, default=1e-6, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def game_dynamics(ctx, instance, max_iters, tol, seed):
    """Run sequential best-response dynamics."""
    request = models.DynamicsRequest(instance=_instance_payload(instance),
                                     max_iters=max_iters, tol=tol, seed=seed)
    doc = _dispatch(ctx, "/game/dynamics", request, handlers.handle_dynamics)

    def plain(d):
        yield f"status: {d['status']} after {d['rounds']} rounds, {len(d['steps'])} switches"
        yield f"max regret: {d['max_regret']:.3g}  nash(tol): {d['is_epsilon_nash']}"
        for i, row in enumerate(d["final_profiles"]):
            yield f"agent {i + 1}: " + " ".join(f"{x:.6g}" for x in row)

    _emit(ctx, doc, plain)


@cmd_game.command("verify")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--tol", type=float, default=1e-6, show_default=True)
@click.pass_context
def game_verify(ctx, instance, tol):
    """Report per-agent regrets against vertex best responses."""
    request = models.VerifyRequest(instance=_instance_payload(instance), tol=tol)
    doc = _dispatch(ctx, "/game/verify", request, handlers.handle_verify)

    def plain(d):
        for i, (r, u, b) in enumerate(zip(d["regrets"], d["utilities"], d["best_values"])):
            yield f"agent {i + 1}: utility {u:.6g}  best {b:.6g}  regret {r:.3g}"
        yield f"max regret: {d['max_regret']:.3g}  nash({d['tol']:g}): {d['is_epsilon_nash']}"

    _emit(ctx, doc, plain)


@cmd_game.command("best-response")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--agent", type=int, required=True, metavar="I",
              help="1-based agent index.")
@click.pass_context
def game_best_response(ctx, instance, agent):
    """Enumerate one agent's vertex utilities and the argmax set."""
    request = models.BestResponseRequest(instance=_instance_payload(instance),
                                         agent=agent)
    doc = _dispatch(ctx, "/game/best-response", request, handlers.handle_best_response)

    def plain(d):
        yield f"agent {d['agent']}: best value {d['value']:.6g}, argmax {d['argmax']}"
        for entry in d["vertex_values"]:
            yield f"  target {entry['target']}: {entry['value']:.6g}"

    _emit(ctx, doc, plain)


@cli.command("check")
@click.argument("suite")
@click.option("--n", type=int, default=None, help="Max agent count per trial.")
@click.option("--trials", type=int, default=None, help="Number of random trials.")
@click.option("--seed", type=int, default=None, help="Suite seed (default fixed per suite).")
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--tol", type=float, default=None, help="Override the suite tolerance.")
@click.option("--failures-out", type=click.Path(dir_okay=False), default=None,
              help="Where to write failing instances (default <suite>-failures.json).")
@click.pass_context
def cmd_check(ctx, suite, n, trials, seed, threads, tol, failures_out):
    """Run one randomized invariant suite; exit 4 on any violation."""
    request = models.CheckRequest(suite=suite, n=n, trials=trials,
                                  seed=seed, threads=threads, tol=tol)
    doc = _dispatch(ctx, "/check", request, handlers.handle_check)

    def plain(d):
        state = "PASS" if d["passed"] else "FAIL"
        yield f"{state} {d['suite']}: {d['trials']} trials, seed {d['seed']}, {len(d['failures'])} failures"
        for key, value in sorted(d["notes"].items()):
            yield f"  {key}: {value:.3g}"
        for failure in d["failures"][:10]:
            yield f"  trial {failure['trial']}: {failure['detail']}"

    _emit(ctx, doc, plain)
    if not doc["passed"]:
        out = Path(failures_out or f"{suite}-failures.json")
        out.write_text(json.dumps(doc["failures"], indent=2) + "\n", encoding="utf-8")
        click.echo(f"replayable failing instances written to {out}", err=True)
        sys.exit(4)


@cli.group("oracle")
def cmd_oracle():
    """Brute-force and stochastic reference computations."""


@cmd_oracle.command("particles")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--epsilon", type=float, default=None,
              help="Penalty (falls back to the instance value).")
@click.option("--dt", type=float, default=0.01, show_default=True)
@click.option("--tmax", "t_max", type=float, default=2000.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def oracle_particles(ctx, instance, epsilon, dt, t_max, seed):
    """Estimate consumption rates by simulating the particle process."""
    request = models.ParticlesRequest(instance=_instance_payload(instance),
                                      epsilon=epsilon, dt=dt, t_max=t_max, seed=seed)
    doc = _dispatch(ctx, "/oracle/particles", request, handlers.handle_particles)

    def plain(d):
        labels = [f"agent {i + 1}" for i in range(len(d["rates"]) - 1)] + ["sink"]
        for label, rate, se, ref in zip(labels, d["rates"], d["std_error"], d["reference"]):
            yield f"{label}: rate {rate:.4f} +- {se:.4f}  (solve: {ref:.4f})"
        yield f"steps: {d['steps']}  seed: {d['seed']}  max |z|: {d['max_z']:.2f}"

    _emit(ctx, doc, plain)


@cmd_oracle.command("grid")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--agent", type=int, required=True, metavar="I", help="1-based agent index.")
@click.option("--epsilon", type=float, default=None)
@click.option("--step", type=float, default=0.05, show_default=True)
@click.pass_context
def oracle_grid(ctx, instance, agent, epsilon, step):
    """Brute-force one agent's best response over a simplex grid."""
    request = models.GridRequest(instance=_instance_payload(instance),
                                 agent=agent, epsilon=epsilon, step=step)
    doc = _dispatch(ctx, "/oracle/grid", request, handlers.handle_grid)

    def plain(d):
        yield f"agent {d['agent']}: grid value {d['value']:.6g} at " + \
            " ".join(f"{x:.3g}" for x in d["profile"])
        yield f"vertex method: value {d['vertex_value']:.6g}, argmax {d['vertex_argmax']}"

    _emit(ctx, doc, plain)


@cmd_oracle.command("enumerate")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--limit", type=int, default=None,
              help="Echo at most this many outcomes (all are still computed).")
@click.pass_context
def oracle_enumerate(ctx, instance, limit):
    """List every pure delegation outcome with its probability."""
    request = models.EnumerateRequest(instance=_instance_payload(instance), limit=limit)
    doc = _dispatch(ctx, "/oracle/enumerate", request, handlers.handle_enumerate)

    def plain(d):
        yield f"{d['count']} outcomes, probability sum {d['probability_sum']:.12g}"
        for outcome in d["outcomes"]:
            yield f"  p={outcome['probability']:.6g} targets {outcome['targets']}"
        yield "mixed-strategy power: " + " ".join(f"{x:.6g}" for x in d["mixed_power"])

    _emit(ctx, doc, plain)


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def cmd_serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False, obj={})
    except click.exceptions.Abort:
        sys.exit(130)
    except click.ClickException as exc:
        exc.show()
        sys.exit(2)
    except LiquidPowerError as exc:
        click.echo(f"error[{type(exc).__name__}]: {exc}", err=True)
        sys.exit(exc.exit_code)


if __name__ == "__main__":
    main()
