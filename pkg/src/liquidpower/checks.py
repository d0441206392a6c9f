"""Randomized invariant suites: runnable evidence for the theory claims.

Each suite draws seeded random instances, tests one guaranteed property
of the measures or the game, and reports every violation together with a
replayable instance document. Suites are deterministic given their seed;
trials use independent per-trial substreams, so results do not depend on
the number of worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .delegation import ZERO_TOL, matrix_from_columns
from .errors import UnknownSuite
from .game import best_response, br_dynamics, utility, verify_equilibrium
from .instances import instance_doc
from .measures import (
    classic_power,
    delegation_reduction,
    delta_delegation_constant,
    pad_with_loss,
    power_eps,
    power_exact,
)
from .oracles import grid_best_response
from .types import (
    DelegationMatrix,
    PreferenceProfile,
    WeightSource,
)

DEFAULT_SEED = 20240817


@dataclass
class CheckFailure:
    trial: int
    detail: str
    instance: dict


@dataclass
class CheckReport:
    suite: str
    trials: int
    seed: int
    failures: list[CheckFailure] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures


# ---------------------------------------------------------------------------
# instance generators


def random_matrix(rng: np.random.Generator, n: int, kind: str | None = None) -> DelegationMatrix:
    """One random column-stochastic matrix of the requested flavor.

    Kinds: dense (full dirichlet columns), sparse (small supports),
    candidates (several agents keep everything), cyclic (embeds a closed
    delegation loop), acyclic (delegation only to lower indices, so no
    weight is ever trapped), bclass (0/1 diagonal), pure (0/1 columns).
    """
    kinds = ("dense", "sparse", "candidates", "cyclic", "acyclic", "bclass", "pure")
    if kind is None:
        kind = kinds[rng.integers(len(kinds))]
    if n == 1:
        return DelegationMatrix(np.ones((1, 1)))
    cols = np.zeros((n, n))
    if kind == "dense":
        cols = rng.dirichlet(np.ones(n), size=n).T
    elif kind in ("sparse", "candidates"):
        for j in range(n):
            if kind == "candidates" and rng.random() < 0.5:
                cols[j, j] = 1.0
                continue
            size = int(rng.integers(1, min(3, n) + 1))
            targets = rng.choice(n, size=size, replace=False)
            cols[targets, j] = rng.dirichlet(np.ones(size))
    elif kind == "cyclic":
        loop_size = int(rng.integers(2, n + 1))
        loop = rng.permutation(n)[:loop_size]
        for pos, j in enumerate(loop):
            cols[loop[(pos + 1) % loop_size], j] = 1.0
        rest = [j for j in range(n) if j not in set(loop.tolist())]
        for j in rest:
            if rng.random() < 0.4:
                cols[j, j] = 1.0
            else:
                size = int(rng.integers(1, min(3, n) + 1))
                targets = rng.choice(n, size=size, replace=False)
                cols[targets, j] = rng.dirichlet(np.ones(size))
    elif kind == "acyclic":
        cols[0, 0] = 1.0
        for j in range(1, n):
            choices = list(range(j))
            if rng.random() < 0.5:
                choices.append(j)  # partial self-retention
            size = int(rng.integers(1, min(3, len(choices)) + 1))
            targets = rng.choice(choices, size=size, replace=False)
            cols[targets, j] = rng.dirichlet(np.ones(size))
    elif kind == "bclass":
        for j in range(n):
            if rng.random() < 0.5:
                cols[j, j] = 1.0
            else:
                others = [t for t in range(n) if t != j]
                size = int(rng.integers(1, min(3, len(others)) + 1))
                targets = rng.choice(others, size=size, replace=False)
                cols[targets, j] = rng.dirichlet(np.ones(size))
    elif kind == "pure":
        for j in range(n):
            cols[int(rng.integers(n)), j] = 1.0
    else:
        raise UnknownSuite(f"unknown matrix kind {kind!r}")
    return matrix_from_columns(cols)


def random_weights(rng: np.random.Generator, n: int) -> WeightSource:
    f = rng.uniform(0.0, 2.0, n)
    f[rng.random(n) < 0.15] = 0.0  # some agents carry no inherent weight
    return WeightSource(np.append(f, 0.0))


def random_shallow_matrix(rng: np.random.Generator, n: int, pattern: str) -> DelegationMatrix:
    """Delegation structures whose penalized measure converges with a small constant.

    Every agent keeps at least half its vote, sits on an exact closed
    cycle, or fully delegates at most two hops toward such an agent.
    Escape rates then stay bounded away from zero and the O(epsilon)
    deviation constant stays below roughly ten for any draw. Arbitrary
    matrices admit no uniform constant (a five-step delegation chain
    already deviates by 15 epsilon, and nested near-cycles push the
    constant arbitrarily high), so demonstrating convergence at a fixed
    tolerance needs this family; exact cycles keep the dissipative cases
    represented.
    """
    if n == 1:
        return DelegationMatrix(np.ones((1, 1)))
    cols = np.zeros((n, n))
    if pattern == "rotation":
        order = rng.permutation(n)
        for pos, j in enumerate(order):
            cols[order[(pos + 1) % n], j] = 1.0
    elif pattern == "cycle_feeders":
        loop_size = int(rng.integers(2, n + 1))
        loop = rng.permutation(n)[:loop_size]
        for pos, j in enumerate(loop):
            cols[loop[(pos + 1) % loop_size], j] = 1.0
        keepers = []
        for j in (x for x in range(n) if x not in set(loop.tolist())):
            if rng.random() < 0.4 or not keepers:
                cols[j, j] = 1.0
                keepers.append(j)
            else:
                pool = list(loop) + keepers
                cols[int(pool[rng.integers(len(pool))]), j] = 1.0
    elif pattern == "keeper_stars":
        n_keep = int(rng.integers(1, max(2, n - 1)))
        keepers = rng.permutation(n)[:n_keep]
        keep_set = set(keepers.tolist())
        for j in keepers:
            cols[j, j] = 1.0
        for j in (x for x in range(n) if x not in keep_set):
            size = int(rng.integers(1, min(3, n_keep) + 1))
            targets = rng.choice(keepers, size=size, replace=False)
            share = rng.dirichlet(np.ones(size))
            cols[targets, j] = 0.25 / size + (1.0 - 0.25) * share
    elif pattern == "diag_dense":
        for j in range(n):
            keep = 0.5 + 0.5 * rng.random()
            cols[:, j] = (1.0 - keep) * rng.dirichlet(np.ones(n))
            cols[j, j] += keep
    elif pattern == "shallow_acyclic":
        # balanced fan-in keeps the per-root deviation coefficient small
        n_roots = 1 if n <= 3 else 2
        order = rng.permutation(n)
        roots = order[:n_roots]
        mids = order[n_roots:n_roots + max(1, (n - n_roots) // 2)]
        leaves = order[n_roots + len(mids):]
        for j in roots:
            cols[j, j] = 1.0
        for pos, j in enumerate(mids):
            cols[int(roots[pos % len(roots)]), j] = 1.0
        pool = np.concatenate([roots, mids])
        for pos, j in enumerate(leaves):
            cols[int(pool[pos % len(pool)]), j] = 1.0
    else:
        raise UnknownSuite(f"unknown shallow pattern {pattern!r}")
    return matrix_from_columns(cols)


def random_reduction_instance(rng: np.random.Generator, n: int):
    """Matrix plus (k, D) satisfying the replication preconditions.

    Needs n >= 3. Every proxy keeps a guaranteed share toward a
    self-retaining anchor, which keeps k out of all cycles and bounds the
    back-flow denominator well away from zero.
    """
    if n < 3:
        raise ValueError("reduction instances need at least 3 agents")
    perm = rng.permutation(n)
    k = int(perm[0])
    d_size = int(rng.integers(1, min(3, n - 2) + 1))
    proxies = [int(j) for j in perm[1:1 + d_size]]
    anchor = int(perm[1 + d_size])
    rest = [int(j) for j in perm[2 + d_size:]]

    cols = np.zeros((n, n))
    # k spreads everything across the proxies, each share bounded away from 0
    shares = 0.8 * rng.dirichlet(np.ones(d_size)) + 0.2 / d_size
    cols[proxies, k] = shares
    # proxies: no self-retention, a firm share to the anchor, optional
    # back-flow to k, remainder anywhere else
    for i in proxies:
        to_anchor = 0.2 + 0.3 * rng.random()
        to_k = rng.random() * 0.4 if rng.random() < 0.6 else 0.0
        col = np.zeros(n)
        col[anchor] = to_anchor
        col[k] = to_k
        remainder = 1.0 - to_anchor - to_k
        pool = [t for t in range(n) if t != i]
        size = int(rng.integers(1, min(3, len(pool)) + 1))
        targets = rng.choice(pool, size=size, replace=False)
        col[targets] += remainder * rng.dirichlet(np.ones(size))
        cols[:, i] = col
    # anchor keeps a solid share of its own vote
    keep = 0.3 + 0.5 * rng.random()
    cols[anchor, anchor] = keep
    pool = [t for t in range(n) if t != anchor]
    size = int(rng.integers(1, min(2, len(pool)) + 1))
    targets = rng.choice(pool, size=size, replace=False)
    cols[targets, anchor] += (1.0 - keep) * rng.dirichlet(np.ones(size))
    # remaining agents are unconstrained
    for j in rest:
        size = int(rng.integers(1, min(3, n) + 1))
        targets = rng.choice(n, size=size, replace=False)
        cols[targets, j] = rng.dirichlet(np.ones(size))
    return matrix_from_columns(cols), k, frozenset(proxies)


def random_preferences(rng: np.random.Generator, n: int) -> PreferenceProfile:
    return PreferenceProfile(rng.uniform(-1.0, 2.0, (n, n + 1)))


def dominant_diagonal_preferences(rng: np.random.Generator, n: int) -> PreferenceProfile:
    w = rng.uniform(0.0, 1.0, (n, n + 1))
    w[np.arange(n), np.arange(n)] += 10.0
    return PreferenceProfile(w)


# ---------------------------------------------------------------------------
# suite definitions


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def _run(suite: str, trials: int, seed: int, threads: int, trial_fn) -> CheckReport:
    """Run trial_fn over independent substreams and collect failures.

    trial_fn(rng, trial) returns (failures, stats) where stats values are
    aggregated by max into the report notes.
    """
    report = CheckReport(suite=suite, trials=trials, seed=seed)

    def one(t: int):
        return trial_fn(_trial_rng(seed, t), t)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(t) for t in range(trials)]
    for failures, stats in results:
        report.failures.extend(failures)
        for key, value in stats.items():
            report.notes[key] = max(report.notes.get(key, 0.0), value)
    return report


def suite_conservation(n: int = 12, trials: int = 300, seed: int = DEFAULT_SEED,
                       threads: int = 1, tol: float | None = None) -> CheckReport:
    """Total power equals total inherent weight, penalized or exact."""
    tol = 1e-9 if tol is None else tol

    def trial(rng, t):
        n_t = int(rng.integers(1, n + 1))
        matrix = random_matrix(rng, n_t)
        f = random_weights(rng, n_t)
        failures, worst = [], 0.0
        results = [("exact", power_exact(matrix, f))]
        results += [(f"epsilon={e}", power_eps(matrix, f, e)) for e in (0.5, 0.1, 0.01)]
        for label, res in results:
            gap = abs(res.power.total - f.total)
            worst = max(worst, gap)
            if gap > tol:
                failures.append(CheckFailure(
                    t, f"{label}: total power off by {gap:.3g}",
                    instance_doc(matrix, f=f, trial=t, path=label),
                ))
        return failures, {"max_conservation_gap": worst}

    return _run("conservation", trials, seed, threads, trial)


def suite_consistency(n: int = 12, trials: int = 300, seed: int = DEFAULT_SEED,
                      threads: int = 1, tol: float | None = None) -> CheckReport:
    """Zero self-retention forces zero power; retained share floors it."""
    tol = 1e-9 if tol is None else tol

    def trial(rng, t):
        n_t = int(rng.integers(1, n + 1))
        matrix = random_matrix(rng, n_t)
        f = random_weights(rng, n_t)
        eps = (0.5, 0.1, 0.01)[t % 3]
        v = power_eps(matrix, f, eps).power.v
        diag = np.diagonal(matrix.entries)
        failures = []
        if v.min() < -1e-12:
            failures.append(CheckFailure(
                t, f"negative power {v.min():.3g} under nonnegative f",
                instance_doc(matrix, f=f, epsilon=eps, trial=t)))
        floor = (1.0 - eps) * diag * f.f[:n_t]
        gap = float((floor - v[:n_t]).max())
        if gap > tol:
            failures.append(CheckFailure(
                t, f"power below retained-share floor by {gap:.3g}",
                instance_doc(matrix, f=f, epsilon=eps, trial=t)))
        zero_mask = diag <= ZERO_TOL
        stray = float(np.abs(v[:n_t][zero_mask]).max()) if zero_mask.any() else 0.0
        if stray > 1e-12:
            failures.append(CheckFailure(
                t, f"agent without self-retention got power {stray:.3g}",
                instance_doc(matrix, f=f, epsilon=eps, trial=t)))
        return failures, {"max_floor_gap": max(gap, 0.0), "max_stray_power": stray}

    return _run("consistency", trials, seed, threads, trial)


def suite_generalization(n: int = 10, trials: int = 200, seed: int = DEFAULT_SEED,
                         threads: int = 1, tol: float | None = None) -> CheckReport:
    """On 0/1-diagonal matrices the exact measure matches the classic one."""
    tol = 1e-9 if tol is None else tol

    def trial(rng, t):
        n_t = int(rng.integers(1, n + 1))
        matrix = random_matrix(rng, n_t, kind="bclass" if t % 3 else "pure")
        exact = power_exact(matrix).power.v
        padded = pad_with_loss(classic_power(matrix), float(n_t)).v
        gap = float(np.abs(exact - padded).max())
        failures = []
        if gap > tol:
            failures.append(CheckFailure(
                t, f"exact and classic measures differ by {gap:.3g}",
                instance_doc(matrix, trial=t)))
        return failures, {"max_generalization_gap": gap}

    return _run("generalization", trials, seed, threads, trial)


def suite_delegation(n: int = 8, trials: int = 200, seed: int = DEFAULT_SEED,
                     threads: int = 1, tol: float | None = None) -> CheckReport:
    """Replicating a proxy's profile leaves the exact measure unchanged."""
    tol = 1e-8 if tol is None else tol

    def trial(rng, t):
        n_t = int(rng.integers(3, n + 1))
        matrix, k, proxies = random_reduction_instance(rng, n_t)
        f = random_weights(rng, n_t)
        reduced, _ = delegation_reduction(matrix, k, proxies)
        gap = float(np.abs(power_exact(matrix, f).power.v
                           - power_exact(reduced, f).power.v).max())
        failures = []
        if gap > tol:
            failures.append(CheckFailure(
                t, f"reduction moved the exact measure by {gap:.3g}",
                instance_doc(matrix, f=f, trial=t,
                             k=k + 1, proxies=sorted(j + 1 for j in proxies))))
        return failures, {"max_reduction_gap": gap}

    return _run("delegation", trials, seed, threads, trial)


def suite_delta_delegation(n: int = 8, trials: int = 200, seed: int = DEFAULT_SEED,
                           threads: int = 1, tol: float | None = None) -> CheckReport:
    """Under penalty, reduction moves the measure by at most C * epsilon."""
    slack = 0.0 if tol is None else tol

    def trial(rng, t):
        n_t = int(rng.integers(3, n + 1))
        matrix, k, proxies = random_reduction_instance(rng, n_t)
        f = random_weights(rng, n_t)
        reduced, _ = delegation_reduction(matrix, k, proxies)
        constant = delta_delegation_constant(matrix, f, k, proxies)
        failures, worst = [], 0.0
        for eps in (1e-2, 1e-3):
            dev = float(np.abs(power_eps(matrix, f, eps).power.v
                               - power_eps(reduced, f, eps).power.v).max())
            bound = constant * eps
            worst = max(worst, dev / bound if bound > 0 else 0.0)
            if dev > bound + slack:
                failures.append(CheckFailure(
                    t, f"epsilon={eps}: deviation {dev:.3g} exceeds bound {bound:.3g}",
                    instance_doc(matrix, f=f, epsilon=eps, trial=t,
                                 k=k + 1, proxies=sorted(j + 1 for j in proxies))))
        return failures, {"max_bound_fraction": worst}

    return _run("delta-delegation", trials, seed, threads, trial)


LIMIT_LADDER = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5)


def suite_limit(n: int = 5, trials: int = 100, seed: int = DEFAULT_SEED,
                threads: int = 1, tol: float | None = None) -> CheckReport:
    """The penalized measure walks down to the exact one as epsilon drops.

    The deviation must strictly shrink along the epsilon ladder until it
    reaches solver noise and end below 1e-4. Fully cyclic instances
    dissipate everything at every penalty, so their deviation sits at
    the noise floor for the whole ladder; the floor is set above the
    cancellation error of the dissipated-weight entry, whose scale grows
    like 1/epsilon.
    """
    final_tol = 1e-4 if tol is None else tol
    noise_floor = 1e-8
    patterns = ("diag_dense", "keeper_stars", "cycle_feeders", "rotation",
                "shallow_acyclic")

    def trial(rng, t):
        n_t = int(rng.integers(1, n + 1))
        matrix = random_shallow_matrix(rng, n_t, patterns[t % len(patterns)])
        exact = power_exact(matrix).power.v
        devs = [float(np.abs(power_eps(matrix, None, e).power.v - exact).max())
                for e in LIMIT_LADDER]
        failures = []
        for a, b in zip(devs, devs[1:]):
            if not (b < a or (a <= noise_floor and b <= noise_floor)):
                failures.append(CheckFailure(
                    t, f"deviations not strictly decreasing: {devs}",
                    instance_doc(matrix, trial=t)))
                break
        if devs[-1] >= final_tol:
            failures.append(CheckFailure(
                t, f"final deviation {devs[-1]:.3g} not below {final_tol}",
                instance_doc(matrix, trial=t)))
        return failures, {"max_final_deviation": devs[-1]}

    return _run("limit", trials, seed, threads, trial)


def suite_game_vertex(n: int = 4, trials: int = 100, seed: int = DEFAULT_SEED,
                      threads: int = 1, tol: float | None = None) -> CheckReport:
    """Game-side guarantees: vertex optimality, convex ties, regrets.

    Every trial compares the vertex best response against the simplex
    grid oracle and checks regret nonnegativity; every third trial checks
    tie convexity and preference-shift invariance; every fifth runs the
    dominant-diagonal dynamics to convergence.
    """
    grid_slack = 1e-6 if tol is None else tol

    def trial(rng, t):
        n_t = int(rng.integers(1, n + 1))
        matrix = random_matrix(rng, n_t)
        prefs = random_preferences(rng, n_t)
        eps = (0.1, 0.3)[t % 2]
        agent = int(rng.integers(n_t))
        failures = []

        report = verify_equilibrium(matrix, prefs, eps)
        if report.regrets.min() < -1e-12:
            failures.append(CheckFailure(
                t, f"negative regret {report.regrets.min():.3g}",
                instance_doc(matrix, epsilon=eps, preferences=prefs, trial=t)))

        vertex = best_response(agent, matrix, prefs.row(agent), eps)
        _, grid_value = grid_best_response(agent, matrix, prefs.row(agent), eps, step=0.05)
        if vertex.value < grid_value - grid_slack:
            failures.append(CheckFailure(
                t, f"grid oracle beat the vertex response by {grid_value - vertex.value:.3g}",
                instance_doc(matrix, epsilon=eps, preferences=prefs, trial=t, agent=agent + 1)))
        if grid_value > vertex.value + 1e-9:
            failures.append(CheckFailure(
                t, "grid value above vertex optimum beyond solver noise",
                instance_doc(matrix, epsilon=eps, preferences=prefs, trial=t, agent=agent + 1)))

        if t % 3 == 0:
            # constant preferences tie every vertex; any mixture must match
            w_flat = np.full(n_t + 1, float(rng.uniform(-1, 1)))
            tie = best_response(agent, matrix, w_flat, eps)
            if len(tie.argmax_vertices) != n_t:
                failures.append(CheckFailure(
                    t, "constant preferences did not tie all vertices",
                    instance_doc(matrix, epsilon=eps, trial=t, agent=agent + 1)))
            cols = matrix.entries.copy()
            for _ in range(10):
                mix = rng.dirichlet(np.ones(len(tie.argmax_vertices)))
                profile = np.zeros(n_t)
                profile[list(tie.argmax_vertices)] = mix
                cols[:, agent] = profile
                got = utility(DelegationMatrix(cols), agent, w_flat, eps)
                if abs(got - tie.value) > 1e-8:
                    failures.append(CheckFailure(
                        t, f"tied mixture off the optimum by {abs(got - tie.value):.3g}",
                        instance_doc(matrix, epsilon=eps, trial=t, agent=agent + 1)))
                    break
            shift = float(rng.uniform(-2, 2))
            shifted = best_response(agent, matrix, prefs.row(agent) + shift, eps)
            base = best_response(agent, matrix, prefs.row(agent), eps)
            if shifted.argmax_vertices != base.argmax_vertices \
                    or abs(shifted.value - base.value - shift) > 1e-10:
                failures.append(CheckFailure(
                    t, "utility shift changed the best-response set",
                    instance_doc(matrix, epsilon=eps, preferences=prefs, trial=t, agent=agent + 1)))

        if t % 3 == 1 and n_t >= 3:
            # twin proxies routing everything to one target tie exactly,
            # and any mixture between them sits on the same value
            pool = [x for x in range(n_t) if x != agent]
            j, k = int(pool[0]), int(pool[1])
            m = int(rng.choice([x for x in range(n_t) if x not in (j, k)]))
            cols = matrix.entries.copy()
            cols[:, j] = 0.0
            cols[:, k] = 0.0
            cols[m, j] = 1.0
            cols[m, k] = 1.0
            twin = DelegationMatrix(cols)
            tb = best_response(agent, twin, prefs.row(agent), eps)
            pair_gap = abs(tb.vertex_values[j] - tb.vertex_values[k])
            if pair_gap > 1e-10:
                failures.append(CheckFailure(
                    t, f"twin proxies differ by {pair_gap:.3g}",
                    instance_doc(twin, epsilon=eps, preferences=prefs, trial=t, agent=agent + 1)))
            mix_cols = cols.copy()
            for alpha in (0.25, 0.5, 0.75):
                profile = np.zeros(n_t)
                profile[j] = alpha
                profile[k] = 1.0 - alpha
                mix_cols[:, agent] = profile
                got = utility(DelegationMatrix(mix_cols), agent, prefs.row(agent), eps)
                if abs(got - tb.vertex_values[j]) > 1e-8:
                    failures.append(CheckFailure(
                        t, f"twin mixture off the tied value by {abs(got - tb.vertex_values[j]):.3g}",
                        instance_doc(twin, epsilon=eps, preferences=prefs, trial=t, agent=agent + 1)))
                    break
            if {j, k} <= set(tb.argmax_vertices):
                half = np.zeros(n_t)
                half[j] = 0.5
                half[k] = 0.5
                mix_cols[:, agent] = half
                got = utility(DelegationMatrix(mix_cols), agent, prefs.row(agent), eps)
                if abs(got - tb.value) > 1e-8:
                    failures.append(CheckFailure(
                        t, f"optimal tie mixture off the optimum by {abs(got - tb.value):.3g}",
                        instance_doc(twin, epsilon=eps, preferences=prefs, trial=t, agent=agent + 1)))

        if t % 5 == 0:
            dom = dominant_diagonal_preferences(rng, n_t)
            traj = br_dynamics(matrix, dom, eps, max_iters=10, tol=1e-6,
                               seed=int(rng.integers(2**31)))
            if traj.status != "Converged" or traj.rounds > 2 \
                    or traj.report.max_regret > 1e-6:
                failures.append(CheckFailure(
                    t, f"dominant-diagonal dynamics: {traj.status} in {traj.rounds} rounds, "
                       f"max regret {traj.report.max_regret:.3g}",
                    instance_doc(matrix, epsilon=eps, preferences=dom, trial=t)))

        return failures, {"max_regret_seen": max(report.max_regret, 0.0)}

    return _run("game-vertex", trials, seed, threads, trial)


SUITES = {
    "conservation": suite_conservation,
    "consistency": suite_consistency,
    "generalization": suite_generalization,
    "delegation": suite_delegation,
    "delta-delegation": suite_delta_delegation,
    "limit": suite_limit,
    "game-vertex": suite_game_vertex,
}


def run_suite(name: str, n: int | None = None, trials: int | None = None,
              seed: int | None = None, threads: int = 1,
              tol: float | None = None) -> CheckReport:
    """Run one named suite; unset arguments fall back to suite defaults."""
    if name not in SUITES:
        known = ", ".join(sorted(SUITES))
        raise UnknownSuite(f"unknown check suite {name!r}; known suites: {known}")
    fn = SUITES[name]
    kwargs = {"threads": threads, "tol": tol}
    if n is not None:
        kwargs["n"] = n
    if trials is not None:
        kwargs["trials"] = trials
    if seed is not None:
        kwargs["seed"] = seed
    return fn(**kwargs)
