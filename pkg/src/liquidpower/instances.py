"""Instance file format: JSON documents describing a delegation problem.

Files are agent-major because humans author one profile per agent: row i
of "profiles" is the profile of agent i, and the engine transposes rows
into the column-stochastic matrix. Agent indices inside files (the
"neighborhoods" lists) are 1-based; the library converts to 0-based on
load and back on save. Unknown keys are ignored so that replay documents
can carry extra context.

Keys: n (int), profiles (n x n rows), f (optional, length n or n+1),
epsilon (optional), preferences (optional, n rows of length n+1),
neighborhoods (optional, n lists of 1-based agent indices).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .delegation import assemble_matrix, validate_profile
from .errors import DimensionMismatch, EmptyProfile, EpsilonOutOfRange, ValidationError
from .types import (
    DelegationMatrix,
    PreferenceProfile,
    StrategySpace,
    WeightSource,
    as_weight_source,
)


@dataclass(frozen=True)
class Instance:
    """A parsed instance: matrix plus the optional game/measure context."""

    matrix: DelegationMatrix
    f: WeightSource
    epsilon: float | None = None
    preferences: PreferenceProfile | None = None
    space: StrategySpace | None = None

    @property
    def n(self) -> int:
        return self.matrix.n


def parse_instance(doc: dict) -> Instance:
    """Validate a raw document and build the typed instance."""
    if not isinstance(doc, dict):
        raise ValidationError("instance document must be a JSON object")
    if "n" not in doc:
        raise ValidationError("instance is missing the agent count 'n'")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise EmptyProfile(f"agent count must be a positive integer, got {n!r}")
    rows = doc.get("profiles")
    if rows is None:
        raise ValidationError("instance is missing 'profiles'")
    rows = np.asarray(rows, dtype=float)
    if rows.shape != (n, n):
        raise DimensionMismatch(
            f"profiles must be an {n} x {n} array of rows, got shape {rows.shape}"
        )
    profiles = [validate_profile(rows[i], owner=i) for i in range(n)]
    matrix = assemble_matrix(profiles)

    f = doc.get("f")
    try:
        source = as_weight_source(f, n)
    except ValueError as exc:
        raise DimensionMismatch(str(exc)) from None

    epsilon = doc.get("epsilon")
    if epsilon is not None:
        epsilon = float(epsilon)
        if not 0.0 < epsilon < 1.0:
            raise EpsilonOutOfRange(
                f"epsilon must lie strictly in (0, 1), got {epsilon}"
            )

    preferences = doc.get("preferences")
    if preferences is not None:
        w = np.asarray(preferences, dtype=float)
        if w.shape != (n, n + 1):
            raise DimensionMismatch(
                f"preferences must be {n} rows of length {n + 1}, got shape {w.shape}"
            )
        preferences = PreferenceProfile(w)

    neighborhoods = doc.get("neighborhoods")
    space = None
    if neighborhoods is not None:
        if len(neighborhoods) != n:
            raise DimensionMismatch(
                f"neighborhoods must list one target set per agent, got {len(neighborhoods)}"
            )
        sets = []
        for i, targets in enumerate(neighborhoods):
            converted = set()
            for t in targets:
                if not isinstance(t, int) or not 1 <= t <= n:
                    raise DimensionMismatch(
                        f"neighborhood of agent {i + 1} has invalid index {t!r} (valid: 1..{n})"
                    )
                converted.add(t - 1)
            sets.append(frozenset(converted))
        space = StrategySpace(tuple(sets))

    return Instance(matrix=matrix, f=source, epsilon=epsilon,
                    preferences=preferences, space=space)


def load_instance(path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read instance file {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"instance file {path} is not valid JSON: {exc}") from None
    return parse_instance(doc)


def instance_doc(matrix: DelegationMatrix, f: WeightSource | None = None,
                 epsilon: float | None = None,
                 preferences: PreferenceProfile | None = None,
                 space: StrategySpace | None = None, **extra) -> dict:
    """Serialize engine objects back into the file schema.

    Extra keyword pairs are attached verbatim; parsers ignore them, so
    failing check trials can embed their context and stay replayable.
    """
    doc: dict = {
        "n": matrix.n,
        "profiles": matrix.entries.T.tolist(),
    }
    if f is not None:
        doc["f"] = f.f.tolist()
    if epsilon is not None:
        doc["epsilon"] = float(epsilon)
    if preferences is not None:
        doc["preferences"] = preferences.w.tolist()
    if space is not None:
        doc["neighborhoods"] = [sorted(t + 1 for t in s) for s in space.neighborhoods]
    doc.update(extra)
    return doc


def save_instance(path, instance: Instance) -> None:
    doc = instance_doc(
        instance.matrix,
        f=instance.f,
        epsilon=instance.epsilon,
        preferences=instance.preferences,
        space=instance.space,
    )
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
